#pragma once

// Test-only oracles. Each one recomputes a quantity the library also
// produces, but by an independent route (direct enumeration, brute-force
// search, quadrature), so the two can check each other.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "bellkit/behavior.hpp"
#include "bellkit/contextual.hpp"
#include "bellkit/coupling.hpp"
#include "bellkit/rng.hpp"

namespace oracle {

// ---------------------------------------------------------------------------
// Dice-model enumeration: responses x^lambda and y^(lambda+1) over the six
// faces, written out directly (no HVModel, no coupling).

inline int lf_response_a(int x, int lambda) {
  return (x == 1 || lambda % 2 == 0) ? 1 : -1;  // x^lambda for x in {1,-1}
}

inline int lf_response_b(int y, int lambda) {
  return (y == 1 || (lambda + 1) % 2 == 0) ? 1 : -1;  // y^(lambda+1)
}

inline bellkit::Rational lf_pair_expectation(int x, int y) {
  int sum = 0;
  for (int lambda = 1; lambda <= 6; ++lambda) {
    sum += lf_response_a(x, lambda) * lf_response_b(y, lambda);
  }
  return bellkit::Rational(sum, 6);
}

inline bellkit::Rational lf_joint(int x, int y, int a, int b) {
  int count = 0;
  for (int lambda = 1; lambda <= 6; ++lambda) {
    if (lf_response_a(x, lambda) == a && lf_response_b(y, lambda) == b) ++count;
  }
  return bellkit::Rational(count, 6);
}

// The dice-model behavior assembled purely from the enumeration above.
inline bellkit::Behavior lf_behavior() {
  using namespace bellkit;
  std::array<OutcomeDist, 4> table;
  for (const Context& c : kContexts) {
    int x = setting_alias(c.a);
    int y = setting_alias(c.b);
    table[context_index(c)] = OutcomeDist::from_probs(
        Scalar(lf_joint(x, y, 1, 1)), Scalar(lf_joint(x, y, 1, -1)),
        Scalar(lf_joint(x, y, -1, 1)), Scalar(lf_joint(x, y, -1, -1)));
  }
  return Behavior(table);
}

// ---------------------------------------------------------------------------
// Closed-form singlet correlation.

inline double singlet_expectation(double theta_a, double theta_b) {
  return -std::cos(theta_a - theta_b);
}

// ---------------------------------------------------------------------------
// Brute-force feasibility: search every integer-valued coupling with
// denominator q (all 16 entries k_i/q, sum q) for one whose marginals equal
// the behavior exactly. Only callable on exact behaviors whose entries have
// denominators dividing q. Prunes on running marginal sums.

inline bool brute_force_coupling_exists(const bellkit::Behavior& behavior, int q) {
  using namespace bellkit;
  // Integer targets per context bucket.
  std::array<std::array<int, 4>, 4> target{};
  for (const Context& c : kContexts) {
    for (int a : {1, -1}) {
      for (int b : {1, -1}) {
        const Rational& p = behavior.at(c).p(a, b).rat();
        if (q % p.den() != 0) return false;  // not representable at this denominator
        target[context_index(c)][OutcomeDist::index_of(a, b)] =
            static_cast<int>(p.num() * (q / p.den()));
      }
    }
  }
  // bucket[ctx][cell]: which (a,b) bucket cell's outcomes land in for ctx.
  std::array<std::array<int, 16>, 4> bucket{};
  for (int cell = 0; cell < 16; ++cell) {
    auto o = CouplingJP::outcomes_of(cell);
    for (const Context& c : kContexts) {
      int a = c.a == 1 ? o[0] : o[2];
      int b = c.b == 1 ? o[1] : o[3];
      bucket[context_index(c)][cell] = OutcomeDist::index_of(a, b);
    }
  }
  // Each context's bucket sums are bounded by their targets, and both sides
  // total q, so reaching cell 16 with nothing left means an exact match.
  std::array<std::array<int, 4>, 4> sums{};
  std::function<bool(int, int)> place = [&](int cell, int remaining) -> bool {
    if (cell == 16) return remaining == 0;
    for (int k = 0; k <= remaining; ++k) {
      bool over = false;
      for (int ctx = 0; ctx < 4; ++ctx) {
        sums[ctx][bucket[ctx][cell]] += k;
        if (sums[ctx][bucket[ctx][cell]] > target[ctx][bucket[ctx][cell]]) over = true;
      }
      if (!over && place(cell + 1, remaining - k)) return true;
      for (int ctx = 0; ctx < 4; ++ctx) sums[ctx][bucket[ctx][cell]] -= k;
      if (over) break;  // larger k only overshoots more
    }
    return false;
  };
  return place(0, q);
}

// ---------------------------------------------------------------------------
// Quadrature oracle for the contextual detection model. Alice's outcome is
// sign(cos 2(phi - theta_a)) detected with probability |cos|^(1/gamma);
// Bob likewise with his -1 channel scaled by w. Integrands are piecewise
// smooth between the cosine zeros, so integrate segment by segment with
// adaptive Simpson.

namespace detail {

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double fa, double fm, double fb, double whole, double tol,
                               int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b) {
  double m = 0.5 * (a + b);
  double fa = f(a), fm = f(m), fb = f(b);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, 1e-12, 40);
}

}  // namespace detail

struct PostStats {
  double expectation = 0.0;
  double p_a_plus = 0.0;
  double p_b_plus = 0.0;
  double retained = 0.0;
};

inline PostStats contextual_post_stats(double theta_a, double theta_b, double gamma,
                                       double bob_minus_eff) {
  constexpr double kPi = 3.14159265358979323846;
  double k = 1.0 / gamma;
  // Segment boundaries: zeros of either cosine in [0, pi].
  std::vector<double> pts{0.0, kPi};
  for (double theta : {theta_a, theta_b}) {
    for (int m = -4; m <= 8; ++m) {
      double p = theta + kPi / 4.0 + m * kPi / 2.0;
      if (p > 1e-12 && p < kPi - 1e-12) pts.push_back(p);
    }
  }
  std::sort(pts.begin(), pts.end());
  double d = 0.0, num_e = 0.0, num_a = 0.0, num_b = 0.0;
  auto f = [&](double phi) {
    return std::pow(std::fabs(std::cos(2.0 * (phi - theta_a))), k) *
           std::pow(std::fabs(std::cos(2.0 * (phi - theta_b))), k);
  };
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    double lo = pts[i], hi = pts[i + 1];
    if (hi - lo < 1e-13) continue;
    double mid = 0.5 * (lo + hi);
    double su = std::cos(2.0 * (mid - theta_a)) >= 0 ? 1.0 : -1.0;
    double sv = std::cos(2.0 * (mid - theta_b)) >= 0 ? 1.0 : -1.0;
    double wb = sv < 0 ? bob_minus_eff : 1.0;
    double val = detail::integrate(f, lo, hi) * wb;
    d += val;
    num_e += su * sv * val;
    if (su > 0) num_a += val;
    if (sv > 0) num_b += val;
  }
  PostStats out;
  out.expectation = num_e / d;
  out.p_a_plus = num_a / d;
  out.p_b_plus = num_b / d;
  out.retained = d / kPi;
  return out;
}

struct ContextualOracle {
  std::array<PostStats, 4> per_context;  // kContexts order
  double post_chsh_max_abs = 0.0;
  double delta = 0.0;         // conditioned no-signaling discrepancy
  double min_retained = 1.0;
  double raw_chsh_max_abs = 0.0;  // zeros counted as 0
};

inline ContextualOracle contextual_oracle(const bellkit::ContextualModel& model) {
  using namespace bellkit;
  ContextualOracle out;
  for (const Context& c : kContexts) {
    out.per_context[context_index(c)] = contextual_post_stats(
        model.alice_angle(c.a), model.bob_angle(c.b), model.gamma, model.bob_minus_efficiency);
  }
  auto max_abs_chsh = [](const std::array<double, 4>& e) {
    double total = e[0] + e[1] + e[2] + e[3];
    double best = std::fabs(total);
    for (double em : e) best = std::max(best, std::fabs(total - 2.0 * em));
    return best;
  };
  std::array<double, 4> e{}, raw{};
  for (int i = 0; i < 4; ++i) {
    e[i] = out.per_context[i].expectation;
    raw[i] = out.per_context[i].expectation * out.per_context[i].retained;
    out.min_retained = std::min(out.min_retained, out.per_context[i].retained);
  }
  out.post_chsh_max_abs = max_abs_chsh(e);
  out.raw_chsh_max_abs = max_abs_chsh(raw);
  auto pa = [&](int x, int y) { return out.per_context[context_index({x, y})].p_a_plus; };
  auto pb = [&](int x, int y) { return out.per_context[context_index({x, y})].p_b_plus; };
  for (int s = 1; s <= 2; ++s) {
    out.delta = std::max(out.delta, std::fabs(pa(s, 1) - pa(s, 2)));
    out.delta = std::max(out.delta, std::fabs(pb(1, s) - pb(2, s)));
  }
  return out;
}

// The freezing procedure for the preset's exponent: maximize post-selected
// CHSH over the declared grid subject to every context retaining >= 20%.
inline double grid_search_gamma(const bellkit::ContextualModel& base) {
  double best_gamma = 0.0, best_s = -1.0;
  for (int i = 1; i <= 60; ++i) {
    bellkit::ContextualModel m = base;
    m.gamma = 0.05 * i;
    ContextualOracle o = contextual_oracle(m);
    if (o.min_retained >= 0.2 && o.post_chsh_max_abs > best_s) {
      best_s = o.post_chsh_max_abs;
      best_gamma = m.gamma;
    }
  }
  return best_gamma;
}

// ---------------------------------------------------------------------------
// Random generators shared by the property suites (all driven by RngStream,
// so every test run is reproducible).

inline bellkit::HVModel random_hv_model(bellkit::RngStream& rng, int max_states = 64) {
  using namespace bellkit;
  int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_states)));
  std::vector<std::int64_t> w(n);
  std::int64_t total = 0;
  for (auto& x : w) {
    x = static_cast<std::int64_t>(rng.below(100));
    total += x;
  }
  if (total == 0) {
    w[0] = 1;
    total = 1;
  }
  std::vector<HVState> states;
  for (int i = 0; i < n; ++i) {
    HVState s;
    s.weight = Rational(w[i], total);
    s.a = {rng.below(2) ? 1 : -1, rng.below(2) ? 1 : -1};
    s.b = {rng.below(2) ? 1 : -1, rng.below(2) ? 1 : -1};
    states.push_back(s);
  }
  return HVModel(std::move(states));
}

// Deterministic local vertices and PR boxes, as behaviors.
inline bellkit::Behavior deterministic_vertex(int a1, int a2, int b1, int b2) {
  using namespace bellkit;
  std::array<int, 2> ra{a1, a2}, rb{b1, b2};
  std::array<OutcomeDist, 4> table;
  for (const Context& c : kContexts) {
    std::array<Scalar, 4> p{Scalar::exact(0), Scalar::exact(0), Scalar::exact(0),
                            Scalar::exact(0)};
    p[OutcomeDist::index_of(ra[c.a - 1], rb[c.b - 1])] = Scalar::exact(1);
    table[context_index(c)] = OutcomeDist::from_probs(p[0], p[1], p[2], p[3]);
  }
  return Behavior(table);
}

// signs: per-context product target, must have an odd number of -1 entries.
inline bellkit::Behavior pr_box(const std::array<int, 4>& signs) {
  using namespace bellkit;
  std::array<OutcomeDist, 4> table;
  for (const Context& c : kContexts) {
    int s = signs[context_index(c)];
    Scalar h = Scalar::exact(1, 2);
    Scalar z = Scalar::exact(0);
    table[context_index(c)] =
        s == 1 ? OutcomeDist::from_probs(h, z, z, h) : OutcomeDist::from_probs(z, h, h, z);
  }
  return Behavior(table);
}

inline std::vector<bellkit::Behavior> no_signaling_vertices() {
  using namespace bellkit;
  std::vector<Behavior> v;
  for (int a1 : {1, -1}) {
    for (int a2 : {1, -1}) {
      for (int b1 : {1, -1}) {
        for (int b2 : {1, -1}) v.push_back(deterministic_vertex(a1, a2, b1, b2));
      }
    }
  }
  for (int i = 0; i < 16; ++i) {
    std::array<int, 4> signs{(i & 1) ? 1 : -1, (i & 2) ? 1 : -1, (i & 4) ? 1 : -1,
                             (i & 8) ? 1 : -1};
    if (signs[0] * signs[1] * signs[2] * signs[3] == -1) v.push_back(pr_box(signs));
  }
  return v;
}

// Random rational mixture of the vertices; occasionally places extra weight
// on a PR box so infeasible cases appear often.
inline bellkit::Behavior random_vertex_mix(bellkit::RngStream& rng) {
  using namespace bellkit;
  static const std::vector<Behavior> verts = no_signaling_vertices();
  std::vector<std::int64_t> w(verts.size(), 0);
  std::int64_t total = 0;
  for (auto& x : w) {
    x = static_cast<std::int64_t>(rng.below(10));
    total += x;
  }
  if (rng.below(2) == 0) {
    std::size_t pr = 16 + rng.below(8);
    w[pr] += 5 * 24;
    total += 5 * 24;
  }
  if (total == 0) {
    w[0] = 1;
    total = 1;
  }
  std::array<std::array<Scalar, 4>, 4> acc;
  for (auto& row : acc) row = {Scalar::exact(0), Scalar::exact(0), Scalar::exact(0), Scalar::exact(0)};
  for (std::size_t v = 0; v < verts.size(); ++v) {
    if (w[v] == 0) continue;
    Scalar weight = Scalar::exact(w[v], total);
    for (int ctx = 0; ctx < 4; ++ctx) {
      for (int k = 0; k < 4; ++k) acc[ctx][k] += weight * verts[v].table()[ctx].probs()[k];
    }
  }
  std::array<OutcomeDist, 4> table;
  for (int ctx = 0; ctx < 4; ++ctx) {
    table[ctx] = OutcomeDist::from_probs(acc[ctx][0], acc[ctx][1], acc[ctx][2], acc[ctx][3]);
  }
  return Behavior(table);
}

}  // namespace oracle
