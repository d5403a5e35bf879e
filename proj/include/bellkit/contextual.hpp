#pragma once

// Setting-dependent hidden variables: each context (i,j) has its own
// hidden-variable space (lambda_1, lambda_2, lambda_i, lambda_j) where
// (lambda_1, lambda_2) describe the source beams and (lambda_i, lambda_j)
// the instruments at measurement time. Raw responses are tri-valued
// (+1, -1, or 0 for no detection); conditioning on coincidences produces
// the final +/-1 statistics.
//
// Every sample is tagged with its context, so the spaces are disjoint by
// construction and the posterior over settings given a tagged sample is an
// exact point mass: seeing lambda tells you which experiment ran; nothing
// influences how settings are chosen.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bellkit/behavior.hpp"
#include "bellkit/finite_sample.hpp"

namespace bellkit {

struct SourceState {
  double lam1 = 0.0;  // Alice-wing polarization phase, radians
  double lam2 = 0.0;  // Bob's wing; lam1 + pi in the shipped preset
};

struct InstrumentState {
  double lam_i = 0.0;  // Alice-instrument threshold variable in [0,1]
  double lam_j = 0.0;
};

struct ContextualModel {
  std::array<double, 2> alice_theta{};  // radians per setting index
  std::array<double, 2> bob_theta{};
  double gamma = 0.45;                // rejection-curve exponent
  double bob_minus_efficiency = 0.9;  // relative detection efficiency of Bob's -1 channel
  double malus_coeff = 0.0;           // instrument correlation = coeff * cos(theta_i - theta_j)
  std::optional<double> fixed_threshold;  // tests: pin lam_i = lam_j

  // Frozen default: angles (0, 45, 22.5, 67.5) degrees, gamma = 0.45,
  // bob_minus_efficiency = 0.9, independent instruments.
  static ContextualModel default_preset();

  double alice_angle(int setting) const { return alice_theta[setting - 1]; }
  double bob_angle(int setting) const { return bob_theta[setting - 1]; }
};

// One simulated trial with its hidden state exposed.
struct ContextualTrial {
  Context context;  // the tag; spaces for different tags are disjoint
  SourceState source;
  InstrumentState instrument;
  int a = 0;
  int b = 0;
};

// Pure function of (model, context, seed, trial_index): source and
// instrument variables come from independent derived streams.
ContextualTrial sample_trial(const ContextualModel& model, const Context& context,
                             std::uint64_t seed, std::int64_t trial_index);

// n trials for each of the four contexts; run_id in the log = context index.
TrialLog run_contextual(const ContextualModel& model, long n_per_context, std::uint64_t seed);
std::vector<ContextualTrial> run_contextual_detailed(const ContextualModel& model,
                                                     long n_per_context, std::uint64_t seed);

// A hidden sample with (possibly missing) context tag, as fed to the
// posterior: p(i,j | lambda) is 1 on the tag and 0 elsewhere.
struct HiddenSample {
  std::optional<Context> tag;
  SourceState source;
  InstrumentState instrument;
};

std::array<double, 4> posterior_setting(const ContextualModel& model, const HiddenSample& sample);

// Post-selected per-context estimates over {-1,+1}.
struct ConditionedContext {
  long total = 0;
  long kept = 0;
  std::array<long, 4> counts{};  // ++, +-, -+, --

  bool empty() const { return kept == 0; }
  double retained() const { return total == 0 ? 0.0 : double(kept) / double(total); }
  double expectation() const;
  std::pair<double, double> marginals() const;
  OutcomeDist dist() const;
};

struct NoSignalingEstimate {
  double delta = 0.0;
  double stderr_delta = 0.0;  // propagated SE of the maximizing marginal pair
};

struct ConditionedBehavior {
  std::array<ConditionedContext, 4> contexts;
  std::vector<std::string> warnings;  // one per context with zero coincidences

  bool complete() const;
  // Throws ValidationError if any context is empty (see warnings).
  Behavior behavior() const;
  // Empty when some context has no coincidences (excluded from CHSH).
  std::optional<ChshReport> chsh_report() const;
  NoSignalingEstimate no_signaling() const;
};

// Discard trials with a null outcome on either side, renormalize per context.
ConditionedBehavior condition_on_coincidences(const TrialLog& log);

// Replace the independent instrument sampler with a jointly correlated one:
// corr(lam_i, lam_j) = coeff * cos(theta_i - theta_j) per context, realized
// by a Frechet mixture (copy / anti-copy / independent). coeff in [-1,1].
// With coeff = 0 the trial stream is bit-identical to the base model's.
ContextualModel malus_instrument_model(const ContextualModel& base, double coeff);

// Raw estimates counting zeros as outcome values (for the raw-level CHSH).
std::array<double, 4> raw_expectations(const TrialLog& log);

}  // namespace bellkit
