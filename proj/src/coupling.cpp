#include "bellkit/coupling.hpp"

#include <numeric>

#include "bellkit/simplex.hpp"

namespace bellkit {

HVModel::HVModel(std::vector<HVState> states) : states_(std::move(states)) {
  if (states_.empty()) throw ValidationError("hidden-variable model needs at least one state");
  Rational sum(0);
  for (const auto& s : states_) {
    if (s.weight < Rational(0)) throw ValidationError("negative hidden-variable weight");
    for (int r : {s.a[0], s.a[1], s.b[0], s.b[1]}) {
      if (r != 1 && r != -1) throw ValidationError("responses must be +1 or -1");
    }
    sum += s.weight;
  }
  if (sum != Rational(1)) {
    throw ValidationError("hidden-variable weights must sum to exactly 1 (got " + sum.str() + ")");
  }
}

int HVModel::response_a(int setting, std::size_t lambda) const {
  if (setting != 1 && setting != 2) throw ValidationError("setting must be 1 or 2");
  return states_.at(lambda).a[setting - 1];
}

int HVModel::response_b(int setting, std::size_t lambda) const {
  if (setting != 1 && setting != 2) throw ValidationError("setting must be 1 or 2");
  return states_.at(lambda).b[setting - 1];
}

std::optional<std::uint64_t> HVModel::weight_common_denominator() const {
  std::uint64_t l = 1;
  for (const auto& s : states_) {
    std::uint64_t d = static_cast<std::uint64_t>(s.weight.den());
    std::uint64_t g = std::gcd(l, d);
    if (l / g > UINT64_MAX / d) return std::nullopt;
    l = l / g * d;
  }
  return l;
}

int CouplingJP::index_of(int a1, int b1, int a2, int b2) {
  for (int v : {a1, b1, a2, b2}) {
    if (v != 1 && v != -1) throw ValidationError("outcomes must be +1 or -1");
  }
  auto bit = [](int v) { return v == 1 ? 0 : 1; };
  return (bit(a1) << 3) | (bit(b1) << 2) | (bit(a2) << 1) | bit(b2);
}

std::array<int, 4> CouplingJP::outcomes_of(int index) {
  auto val = [&](int bitpos) { return ((index >> bitpos) & 1) ? -1 : 1; };
  return {val(3), val(2), val(1), val(0)};
}

CouplingJP CouplingJP::from_probs(std::array<Scalar, 16> p) {
  CouplingJP c;
  c.p_ = std::move(p);
  bool exact = c.is_exact();
  if (exact) {
    Scalar sum = Scalar::exact(0);
    for (const auto& e : c.p_) {
      if (e.rat() < Rational(0)) throw ValidationError("negative coupling probability");
      sum += e;
    }
    if (sum.rat() != Rational(1)) {
      throw ValidationError("coupling probabilities must sum to exactly 1");
    }
  } else {
    double sum = 0.0;
    for (auto& e : c.p_) {
      double v = e.value();
      if (v < 0.0) {
        if (v < -1e-9) throw ValidationError("negative coupling probability");
        e = Scalar(0.0);
      }
      sum += e.value();
    }
    if (sum < 1.0 - 1e-9 || sum > 1.0 + 1e-9) {
      throw ValidationError("coupling probabilities must sum to 1");
    }
  }
  return c;
}

bool CouplingJP::is_exact() const {
  for (const auto& e : p_) {
    if (!e.is_exact()) return false;
  }
  return true;
}

CouplingJP build_coupling(const HVModel& model) {
  std::array<Rational, 16> acc{};
  for (const auto& s : model.states()) {
    int idx = CouplingJP::index_of(s.a[0], s.b[0], s.a[1], s.b[1]);
    acc[idx] += s.weight;
  }
  std::array<Scalar, 16> p;
  for (int i = 0; i < 16; ++i) p[i] = Scalar(acc[i]);
  return CouplingJP::from_probs(p);
}

namespace {

// Entries of omega that a context (x,y) reads: a_x and b_y.
inline std::pair<int, int> context_outcomes(const std::array<int, 4>& omega, const Context& c) {
  int a = c.a == 1 ? omega[0] : omega[2];
  int b = c.b == 1 ? omega[1] : omega[3];
  return {a, b};
}

}  // namespace

Behavior behavior_of(const CouplingJP& coupling) {
  std::array<OutcomeDist, 4> table;
  for (const Context& c : kContexts) {
    std::array<Scalar, 4> p{Scalar::exact(0), Scalar::exact(0), Scalar::exact(0),
                            Scalar::exact(0)};
    for (int i = 0; i < 16; ++i) {
      auto [a, b] = context_outcomes(CouplingJP::outcomes_of(i), c);
      p[OutcomeDist::index_of(a, b)] += coupling.probs()[i];
    }
    table[context_index(c)] = OutcomeDist::from_probs(p[0], p[1], p[2], p[3]);
  }
  return Behavior(table);
}

Scalar four_product_expectation(const CouplingJP& coupling) {
  Scalar sum = Scalar::exact(0);
  for (int i = 0; i < 16; ++i) {
    auto o = CouplingJP::outcomes_of(i);
    int sign = o[0] * o[1] * o[2] * o[3];
    sum += Scalar::exact(sign) * coupling.probs()[i];
  }
  return sum;
}

namespace {

// Constraint system of the feasibility problem: 1 normalization row plus 16
// marginal rows (4 per context, jointly redundant; the rank filter trims).
template <class T>
FineResult fine_check_impl(const Behavior& behavior,
                           T (*lift)(const Scalar&),
                           Scalar (*lower)(const T&)) {
  std::vector<std::vector<T>> a;
  std::vector<T> b;
  a.emplace_back(16, lift(Scalar::exact(1)));
  b.push_back(lift(Scalar::exact(1)));
  for (const Context& c : kContexts) {
    for (int oa : {1, -1}) {
      for (int ob : {1, -1}) {
        std::vector<T> row(16, lift(Scalar::exact(0)));
        for (int i = 0; i < 16; ++i) {
          auto [xa, xb] = context_outcomes(CouplingJP::outcomes_of(i), c);
          if (xa == oa && xb == ob) row[i] = lift(Scalar::exact(1));
        }
        a.push_back(std::move(row));
        b.push_back(lift(behavior.at(c).p(oa, ob)));
      }
    }
  }

  auto sol = solve_equality_feasibility<T>(std::move(a), std::move(b));
  FineResult result;
  if (sol.feasible) {
    std::array<Scalar, 16> p;
    for (int i = 0; i < 16; ++i) p[i] = lower(sol.x[i]);
    result.feasible = true;
    result.witness = CouplingJP::from_probs(p);
    return result;
  }
  result.reason = sol.inconsistent ? "inconsistent marginals" : "no joint distribution";
  ChshReport report = chsh(behavior);
  if (report.max_abs > Scalar::exact(2)) result.violated_variant = report.argmax;
  return result;
}

Rational lift_rational(const Scalar& s) { return s.rat(); }
double lift_double(const Scalar& s) { return s.value(); }
Scalar lower_rational(const Rational& r) { return Scalar(r); }
Scalar lower_double(const double& v) { return Scalar(v); }

}  // namespace

FineResult fine_check(const Behavior& behavior) {
  Scalar delta = no_signaling_delta(behavior);
  bool exact = behavior.is_exact();
  bool inconsistent = exact ? delta != Scalar::exact(0) : delta.value() > 1e-9;
  if (inconsistent) {
    // Fine's equivalence needs consistent marginals; don't run the LP dance.
    FineResult result;
    result.reason = "inconsistent marginals";
    return result;
  }
  if (exact) return fine_check_impl<Rational>(behavior, lift_rational, lower_rational);
  return fine_check_impl<double>(behavior, lift_double, lower_double);
}

HVModel lf_counterexample() {
  // ipow over {1,-1}: x^k is 1 for x=1, (-1)^k for x=-1.
  auto ipow = [](int x, int k) { return (x == 1 || k % 2 == 0) ? 1 : -1; };
  std::vector<HVState> states;
  for (int lambda = 1; lambda <= 6; ++lambda) {
    HVState s;
    s.weight = Rational(1, 6);
    for (int idx : {1, 2}) {
      int x = setting_alias(idx);
      s.a[idx - 1] = ipow(x, lambda);
      s.b[idx - 1] = ipow(x, lambda + 1);
    }
    states.push_back(s);
  }
  return HVModel(std::move(states));
}

}  // namespace bellkit
