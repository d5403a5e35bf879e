#include "bellkit/behavior.hpp"

#include <cmath>

namespace bellkit {

OutcomeDist OutcomeDist::from_probs(Scalar pp, Scalar pm, Scalar mp, Scalar mm) {
  OutcomeDist d;
  d.p_ = {pp, pm, mp, mm};
  bool exact = true;
  for (auto& e : d.p_) exact = exact && e.is_exact();
  if (exact) {
    Scalar sum = Scalar::exact(0);
    for (const auto& e : d.p_) {
      if (e.rat() < Rational(0)) throw ValidationError("negative probability");
      sum += e;
    }
    if (sum.rat() != Rational(1)) {
      throw ValidationError("probabilities must sum to exactly 1 (got " + sum.repr() + ")");
    }
    return d;
  }
  double sum = 0.0;
  for (auto& e : d.p_) {
    double v = e.value();
    if (!std::isfinite(v)) throw ValidationError("non-finite probability");
    if (v < 0.0) {
      // cos-derived entries can land a rounding unit below zero
      if (v < -1e-15) throw ValidationError("negative probability");
      e = Scalar(0.0);
      v = 0.0;
    }
    sum += e.value();
  }
  if (std::fabs(sum - 1.0) > kFloatTol) {
    throw ValidationError("probabilities must sum to 1 within 1e-12");
  }
  return d;
}

bool OutcomeDist::is_exact() const {
  for (const auto& e : p_) {
    if (!e.is_exact()) return false;
  }
  return true;
}

Scalar expectation(const OutcomeDist& dist) {
  const auto& p = dist.probs();
  return p[0] + p[3] - p[1] - p[2];
}

std::pair<Scalar, Scalar> marginals(const OutcomeDist& dist) {
  const auto& p = dist.probs();
  return {p[0] + p[1], p[0] + p[2]};
}

bool Behavior::is_exact() const {
  for (const auto& d : table_) {
    if (!d.is_exact()) return false;
  }
  return true;
}

std::array<Scalar, 4> Behavior::expectations() const {
  std::array<Scalar, 4> e;
  for (int i = 0; i < 4; ++i) e[i] = expectation(table_[i]);
  return e;
}

std::string ChshReport::variant_name(int k) {
  static const char* base[4] = {
      "-E11+E12+E21+E22", "E11-E12+E21+E22", "E11+E12-E21+E22", "E11+E12+E21-E22"};
  std::string name = base[k / 2];
  return (k % 2 == 0) ? name : "-(" + name + ")";
}

ChshReport chsh(const Behavior& behavior) {
  auto e = behavior.expectations();
  Scalar total = e[0] + e[1] + e[2] + e[3];
  ChshReport r;
  r.max_abs = Scalar::exact(0);
  for (int m = 0; m < 4; ++m) {
    Scalar t = total - (e[m] + e[m]);
    r.variants[2 * m] = t;
    r.variants[2 * m + 1] = -t;
    if (abs(t) > r.max_abs) {
      r.max_abs = abs(t);
      r.argmax = t >= Scalar::exact(0) ? 2 * m : 2 * m + 1;
    }
  }
  return r;
}

Scalar no_signaling_delta(const Behavior& behavior) {
  // Alice's marginal must not move with Bob's setting, and vice versa.
  auto pa = [&](int x, int y) { return marginals(behavior.at({x, y})).first; };
  auto pb = [&](int x, int y) { return marginals(behavior.at({x, y})).second; };
  Scalar delta = Scalar::exact(0);
  for (int s = 1; s <= 2; ++s) {
    Scalar da = abs(pa(s, 1) - pa(s, 2));
    Scalar db = abs(pb(1, s) - pb(2, s));
    if (da > delta) delta = da;
    if (db > delta) delta = db;
  }
  return delta;
}

}  // namespace bellkit
