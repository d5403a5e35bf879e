#pragma once

// Non-contextual probabilistic couplings.
//
// A finite hidden-variable model (weights p(lambda), deterministic responses
// A_i(lambda), B_j(lambda)) induces a single joint distribution over
// Omega = {(a1,b1,a2,b2)} whose context marginals reproduce the model's
// pairwise statistics; conversely, joint-distribution existence for an
// arbitrary behavior is an LP feasibility question, and the CHSH variants
// are its certificate of impossibility when the marginals are consistent.

#include <optional>
#include <string>
#include <vector>

#include "bellkit/behavior.hpp"
#include "bellkit/rational.hpp"

namespace bellkit {

struct HVState {
  Rational weight;
  std::array<int, 2> a;  // A_1(lambda), A_2(lambda), each +/-1
  std::array<int, 2> b;  // B_1(lambda), B_2(lambda)
};

// Finite hidden-variable space with exact weights summing to 1.
class HVModel {
 public:
  explicit HVModel(std::vector<HVState> states);

  const std::vector<HVState>& states() const { return states_; }
  std::size_t size() const { return states_.size(); }

  // setting in {1,2}.
  int response_a(int setting, std::size_t lambda) const;
  int response_b(int setting, std::size_t lambda) const;

  // lcm of weight denominators if it fits in uint64 (for exact sampling).
  std::optional<std::uint64_t> weight_common_denominator() const;

 private:
  std::vector<HVState> states_;
};

// Joint distribution over the 16-element space {(a1,b1,a2,b2)}.
// Index packing: bit 3..0 = (a1,b1,a2,b2) with +1 -> 0, -1 -> 1.
class CouplingJP {
 public:
  static CouplingJP from_probs(std::array<Scalar, 16> p);

  const Scalar& p(int a1, int b1, int a2, int b2) const { return p_[index_of(a1, b1, a2, b2)]; }
  const std::array<Scalar, 16>& probs() const { return p_; }
  bool is_exact() const;

  static int index_of(int a1, int b1, int a2, int b2);
  // Outcome quadruple for a packed index.
  static std::array<int, 4> outcomes_of(int index);

 private:
  std::array<Scalar, 16> p_{};
};

// p(omega) = sum of p(lambda) over the preimage of omega under
// M(lambda) = (A_1, B_1, A_2, B_2)(lambda); exact.
CouplingJP build_coupling(const HVModel& model);

// The four context marginals of the joint.
Behavior behavior_of(const CouplingJP& coupling);

// E(A'_1 B'_1 A'_2 B'_2).
Scalar four_product_expectation(const CouplingJP& coupling);

struct FineResult {
  bool feasible = false;
  std::optional<CouplingJP> witness;
  std::optional<int> violated_variant;  // ChshReport variant index with S > 2
  std::string reason;                   // set when infeasible
};

// Joint-distribution existence for a behavior: LP feasibility over the
// 16-simplex with the behavior's 16 probabilities as marginal constraints.
// Behaviors with inconsistent marginals (no_signaling_delta > tolerance) are
// reported infeasible with reason "inconsistent marginals" and no variant.
FineResult fine_check(const Behavior& behavior);

// The dice model: Lambda = {1..6} uniform, A_x(lambda) = x^lambda,
// B_y(lambda) = y^(lambda+1), settings x,y in {1,-1} stored as indices
// {1,2} via setting_alias.
HVModel lf_counterexample();

}  // namespace bellkit
