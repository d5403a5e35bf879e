#include "doctest.h"

#include <cmath>
#include <set>

#include "bellkit/behavior.hpp"
#include "bellkit/coupling.hpp"
#include "bellkit/quantum.hpp"
#include "oracles.hpp"

using namespace bellkit;

namespace {

OutcomeDist exact_dist(std::int64_t pp_n, std::int64_t pp_d, std::int64_t pm_n, std::int64_t pm_d,
                       std::int64_t mp_n, std::int64_t mp_d, std::int64_t mm_n, std::int64_t mm_d) {
  return OutcomeDist::from_probs(Scalar::exact(pp_n, pp_d), Scalar::exact(pm_n, pm_d),
                                 Scalar::exact(mp_n, mp_d), Scalar::exact(mm_n, mm_d));
}

OutcomeDist random_exact_dist(RngStream& rng) {
  std::array<std::int64_t, 4> k{};
  std::int64_t total = 0;
  for (auto& x : k) {
    x = static_cast<std::int64_t>(rng.below(20));
    total += x;
  }
  if (total == 0) {
    k[0] = 1;
    total = 1;
  }
  return OutcomeDist::from_probs(Scalar::exact(k[0], total), Scalar::exact(k[1], total),
                                 Scalar::exact(k[2], total), Scalar::exact(k[3], total));
}

Behavior random_exact_behavior(RngStream& rng) {
  std::array<OutcomeDist, 4> table;
  for (auto& d : table) d = random_exact_dist(rng);
  return Behavior(table);
}

}  // namespace

TEST_CASE("expectation of simple distributions") {
  OutcomeDist uniform = exact_dist(1, 4, 1, 4, 1, 4, 1, 4);
  CHECK(expectation(uniform) == Scalar::exact(0));

  OutcomeDist anticorr = exact_dist(0, 1, 1, 2, 1, 2, 0, 1);
  CHECK(expectation(anticorr) == Scalar::exact(-1));
}

TEST_CASE("expectation of the singlet at relative angle 60 degrees") {
  // Quantum trace oracle: E = Tr(rho A (x) B) = -cos(60 deg) = -1/2.
  Behavior b = singlet_behavior(MeasurementAngle(0), MeasurementAngle(0),
                                MeasurementAngle::degrees(60), MeasurementAngle::degrees(60));
  double traced = trace_expectation(DensityMatrix4::singlet(), MeasurementAngle(0),
                                    MeasurementAngle::degrees(60));
  CHECK(traced == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(expectation(b.at({1, 1})).value() == doctest::Approx(traced).epsilon(1e-12));
}

TEST_CASE("expectation identity holds exactly") {
  RngStream rng(101, derive_stream(101, 0));
  for (int i = 0; i < 500; ++i) {
    OutcomeDist d = random_exact_dist(rng);
    const auto& p = d.probs();
    Scalar direct = p[0] + p[3] - p[1] - p[2];
    CHECK(expectation(d) == direct);
    CHECK(abs(expectation(d)) <= Scalar::exact(1));
  }
}

TEST_CASE("marginals") {
  OutcomeDist uniform = exact_dist(1, 4, 1, 4, 1, 4, 1, 4);
  auto [pa, pb] = marginals(uniform);
  CHECK(pa == Scalar::exact(1, 2));
  CHECK(pb == Scalar::exact(1, 2));

  OutcomeDist point = exact_dist(0, 1, 1, 1, 0, 1, 0, 1);  // p(+1,-1) = 1
  auto [pa2, pb2] = marginals(point);
  CHECK(pa2 == Scalar::exact(1));
  CHECK(pb2 == Scalar::exact(0));

  // Dice-model context (x,y) = (1,1): enumeration gives certainty (+1,+1).
  OutcomeDist lf = OutcomeDist::from_probs(
      Scalar(oracle::lf_joint(1, 1, 1, 1)), Scalar(oracle::lf_joint(1, 1, 1, -1)),
      Scalar(oracle::lf_joint(1, 1, -1, 1)), Scalar(oracle::lf_joint(1, 1, -1, -1)));
  auto [pa3, pb3] = marginals(lf);
  CHECK(pa3 == Scalar::exact(1));
  CHECK(pb3 == Scalar::exact(1));
}

TEST_CASE("chsh on the dice-model behavior is exactly 2") {
  Behavior b = oracle::lf_behavior();
  auto e = b.expectations();
  CHECK(e[0] == Scalar::exact(1));
  CHECK(e[1] == Scalar::exact(0));
  CHECK(e[2] == Scalar::exact(0));
  CHECK(e[3] == Scalar::exact(-1));
  ChshReport r = chsh(b);
  CHECK(r.max_abs == Scalar::exact(2));
}

TEST_CASE("chsh on the PR box is exactly 4") {
  Behavior b = oracle::pr_box({1, 1, 1, -1});
  ChshReport r = chsh(b);
  CHECK(r.max_abs == Scalar::exact(4));
  CHECK(r.variants[r.argmax] == Scalar::exact(4));
}

TEST_CASE("chsh on the singlet at optimal angles is 2*sqrt(2)") {
  Behavior b = singlet_behavior(MeasurementAngle::degrees(0), MeasurementAngle::degrees(90),
                                MeasurementAngle::degrees(45), MeasurementAngle::degrees(135));
  ChshReport r = chsh(b);
  CHECK(r.max_abs.value() == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("chsh variants stay within the algebraic range") {
  RngStream rng(77, derive_stream(77, 1));
  for (int i = 0; i < 300; ++i) {
    ChshReport r = chsh(random_exact_behavior(rng));
    CHECK(r.max_abs <= Scalar::exact(4));
    for (const Scalar& v : r.variants) CHECK(abs(v) <= Scalar::exact(4));
  }
}

TEST_CASE("chsh variant multiset is stable under single-setting relabeling") {
  RngStream rng(78, derive_stream(78, 2));
  auto variant_multiset = [](const Behavior& b) {
    std::multiset<std::string> out;
    for (const Scalar& v : chsh(b).variants) out.insert(v.rat().str());
    return out;
  };
  // Flip Alice's setting-1 outcome: swap rows of the two contexts with a=1.
  auto flip_a1 = [](const Behavior& b) {
    std::array<OutcomeDist, 4> table = b.table();
    for (const Context& c : kContexts) {
      if (c.a != 1) continue;
      const auto& p = b.at(c).probs();
      table[context_index(c)] = OutcomeDist::from_probs(p[2], p[3], p[0], p[1]);
    }
    return Behavior(table);
  };
  for (int i = 0; i < 200; ++i) {
    Behavior b = random_exact_behavior(rng);
    Behavior flipped = flip_a1(b);
    CHECK(variant_multiset(b) == variant_multiset(flipped));
    CHECK(chsh(b).max_abs == chsh(flipped).max_abs);
  }
}

TEST_CASE("chsh max_abs is invariant under any outcome relabeling") {
  RngStream rng(79, derive_stream(79, 3));
  // mask bits: flip A1, A2, B1, B2.
  auto relabel = [](const Behavior& b, int mask) {
    std::array<OutcomeDist, 4> table;
    for (const Context& c : kContexts) {
      bool fa = mask & (1 << (c.a - 1));
      bool fb = mask & (4 << (c.b - 1));
      std::array<Scalar, 4> q;
      for (int a : {1, -1}) {
        for (int bo : {1, -1}) {
          q[OutcomeDist::index_of(fa ? -a : a, fb ? -bo : bo)] = b.at(c).p(a, bo);
        }
      }
      table[context_index(c)] = OutcomeDist::from_probs(q[0], q[1], q[2], q[3]);
    }
    return Behavior(table);
  };
  for (int i = 0; i < 50; ++i) {
    Behavior b = random_exact_behavior(rng);
    Scalar base = chsh(b).max_abs;
    for (int mask = 0; mask < 16; ++mask) CHECK(chsh(relabel(b, mask)).max_abs == base);
  }
}

TEST_CASE("no_signaling_delta is zero for anything marginalized from a coupling") {
  RngStream rng(80, derive_stream(80, 4));
  for (int i = 0; i < 300; ++i) {
    HVModel m = oracle::random_hv_model(rng, 16);
    Behavior b = behavior_of(build_coupling(m));
    CHECK(no_signaling_delta(b) == Scalar::exact(0));
  }
  CHECK(no_signaling_delta(oracle::lf_behavior()) == Scalar::exact(0));
}

TEST_CASE("no_signaling_delta picks up a marginal discrepancy") {
  // Alice's +1 marginal is 0.6 in context (1,1) and 0.4 in (1,2).
  std::array<OutcomeDist, 4> table;
  table[context_index({1, 1})] = exact_dist(3, 10, 3, 10, 1, 5, 1, 5);
  table[context_index({1, 2})] = exact_dist(1, 5, 1, 5, 3, 10, 3, 10);
  table[context_index({2, 1})] = exact_dist(1, 4, 1, 4, 1, 4, 1, 4);
  table[context_index({2, 2})] = exact_dist(1, 4, 1, 4, 1, 4, 1, 4);
  Behavior b(table);
  CHECK(no_signaling_delta(b) == Scalar::exact(1, 5));
}

TEST_CASE("outcome distribution validation") {
  CHECK_THROWS_AS(exact_dist(1, 2, 1, 2, 1, 2, -1, 2), ValidationError);   // negative
  CHECK_THROWS_AS(exact_dist(1, 2, 1, 2, 1, 2, 1, 2), ValidationError);    // sums to 2
  CHECK_THROWS_AS(OutcomeDist::from_probs(Scalar(0.5), Scalar(0.5), Scalar(0.1), Scalar(0.0)),
                  ValidationError);
  CHECK_NOTHROW(OutcomeDist::from_probs(Scalar(0.25), Scalar(0.25), Scalar(0.25),
                                        Scalar(0.25 + 5e-13)));
  CHECK_THROWS_AS(OutcomeDist::index_of(0, 1), ValidationError);
  CHECK_THROWS_AS(context_index({0, 1}), ValidationError);
  CHECK_THROWS_AS(context_index({1, 3}), ValidationError);
}

TEST_CASE("setting alias maps indices to {1,-1}") {
  CHECK(setting_alias(1) == 1);
  CHECK(setting_alias(2) == -1);
}
