#pragma once

// Finite-sample protocols: the urn experiment (draw a hidden state, read
// off two predetermined outcomes, return the marble), disjoint-sample CHSH
// estimation on four independent N-row samples versus a single shared
// 4N x 4 spreadsheet, and the algebraic S <= 4 bound for disconnected
// datasets.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "bellkit/coupling.hpp"
#include "bellkit/rng.hpp"

namespace bellkit {

struct TrialRecord {
  std::int64_t run_id = 0;
  std::int64_t trial = 0;
  Context context;
  int a = 0;  // {-1,+1}, or 0 for an undetected raw outcome
  int b = 0;
  std::optional<std::int32_t> lambda_index;  // audit snapshot, not exported to CSV
};

using TrialLog = std::vector<TrialRecord>;

// CSV schema: run_id,trial,ax,by,a,b (header mandatory).
void write_trial_csv(std::ostream& out, const TrialLog& log);
TrialLog read_trial_csv(std::istream& in);

// Per-context outcome counts for +/-1 logs (zeros are rejected here; the
// contextual module owns coincidence filtering).
struct ContextTally {
  long n = 0;
  std::array<long, 4> counts{};  // ++, +-, -+, --

  double expectation() const;
  std::pair<double, double> marginals() const;
};

std::array<ContextTally, 4> tally_log(const TrialLog& log);

// The single fixed CHSH combination E11 + E12 + E21 - E22.
double fixed_chsh(const std::array<double, 4>& e);

// Draw lambda ~ p(lambda) with replacement for every scheduled context and
// emit the predetermined outcomes. Stream = hash(seed, run_id).
TrialLog urn_protocol(const HVModel& model, const std::vector<Context>& schedule,
                      std::uint64_t seed, std::int64_t run_id = 0);

// 4N rows of complete quadruples (a1,b1,a2,b2) sampled from a model.
class Spreadsheet4N {
 public:
  static Spreadsheet4N sample(const HVModel& model, long n_per_context, RngStream& rng);
  explicit Spreadsheet4N(std::vector<std::array<int, 4>> rows);

  const std::vector<std::array<int, 4>>& rows() const { return rows_; }

  // max_k |row CHSH variant k|; identically 2 for +/-1 rows.
  static int row_bound(const std::array<int, 4>& row);

  // S over all rows for the fixed variant, exact (integer counts).
  Rational same_sheet_chsh() const;

 private:
  std::vector<std::array<int, 4>> rows_;
};

struct ViolationStats {
  long runs = 0;
  long violated = 0;
  double frequency = 0.0;
  double mean_S = 0.0;
  double stderr_S = 0.0;
  // Contrast: the same estimator on one shared spreadsheet per run.
  double same_sheet_mean_S = 0.0;
  double same_sheet_max_S = 0.0;
};

// Per run: four independent N-row samples (one per context), the fixed CHSH
// variant from those disjoint estimates, violations counted as S_hat > 2
// (strict); plus the shared-spreadsheet estimate for contrast.
ViolationStats spreadsheet_experiment(const HVModel& model, long n_per_context, long runs,
                                      std::uint64_t seed);

// Four explicit datasets of (a,b) pairs not drawn from any common coupling,
// achieving S = 4 - epsilon by construction.
struct DisconnectedDatasets {
  std::array<std::vector<std::pair<int, int>>, 4> data;  // per context
  Rational achieved_S;
};

// epsilon >= 0 (a request above S = 4 is invalid); epsilon*rows/8 must be an
// integer so the mix is exact.
DisconnectedDatasets max_S_disconnected(const Rational& epsilon, long rows = 1000);

// S of four arbitrary +/-1 datasets, exact.
Rational disconnected_chsh(const std::array<std::vector<std::pair<int, int>>, 4>& data);

// Population S = 2 exactly: A1 = B1 = A2 = +1, B2 = +/-1 equally weighted.
// The disjoint-sample estimator fluctuates symmetrically about the bound.
HVModel preset_s2();

// Population S = 1 exactly: A1 = B1 = +1, A2 and B2 independent fair signs.
HVModel preset_s1();

}  // namespace bellkit
