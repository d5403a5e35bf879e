#include "bellkit/finite_sample.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

namespace bellkit {

namespace {

// Shared lambda sampler: exact integer inversion when the weights' common
// denominator fits, double-CDF inversion otherwise. Either path is a pure
// function of the stream state.
class LambdaSampler {
 public:
  explicit LambdaSampler(const HVModel& model) : model_(model) {
    auto denom = model.weight_common_denominator();
    if (denom) {
      denom_ = *denom;
      std::uint64_t acc = 0;
      for (const auto& s : model.states()) {
        acc += static_cast<std::uint64_t>(s.weight.num()) * (denom_ / s.weight.den());
        cum_.push_back(acc);
      }
    }
  }

  std::size_t draw(RngStream& rng) const {
    if (denom_ != 0) {
      std::uint64_t r = rng.below(denom_);
      std::size_t lo = 0, hi = cum_.size() - 1;
      while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (r < cum_[mid]) {
          hi = mid;
        } else {
          lo = mid + 1;
        }
      }
      return lo;
    }
    double u = rng.next_unit();
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < model_.size(); ++i) {
      acc += model_.states()[i].weight.to_double();
      if (u < acc) return i;
    }
    return model_.size() - 1;
  }

 private:
  const HVModel& model_;
  std::uint64_t denom_ = 0;
  std::vector<std::uint64_t> cum_;
};

}  // namespace

void write_trial_csv(std::ostream& out, const TrialLog& log) {
  out << "run_id,trial,ax,by,a,b\n";
  for (const auto& t : log) {
    out << t.run_id << ',' << t.trial << ',' << t.context.a << ',' << t.context.b << ','
        << t.a << ',' << t.b << '\n';
  }
}

TrialLog read_trial_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "run_id,trial,ax,by,a,b") {
    throw ValidationError("trial CSV must start with header run_id,trial,ax,by,a,b");
  }
  TrialLog log;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream row(line);
    TrialRecord t;
    char c1, c2, c3, c4, c5;
    if (!(row >> t.run_id >> c1 >> t.trial >> c2 >> t.context.a >> c3 >> t.context.b >> c4 >>
          t.a >> c5 >> t.b) ||
        c1 != ',' || c2 != ',' || c3 != ',' || c4 != ',' || c5 != ',') {
      throw ValidationError("trial CSV line " + std::to_string(lineno) + ": malformed row");
    }
    if ((t.context.a != 1 && t.context.a != 2) || (t.context.b != 1 && t.context.b != 2) ||
        t.a < -1 || t.a > 1 || t.b < -1 || t.b > 1) {
      throw ValidationError("trial CSV line " + std::to_string(lineno) + ": values out of range");
    }
    log.push_back(t);
  }
  return log;
}

double ContextTally::expectation() const {
  if (n == 0) throw ValidationError("no trials in context");
  return double(counts[0] + counts[3] - counts[1] - counts[2]) / double(n);
}

std::pair<double, double> ContextTally::marginals() const {
  if (n == 0) throw ValidationError("no trials in context");
  return {double(counts[0] + counts[1]) / double(n), double(counts[0] + counts[2]) / double(n)};
}

std::array<ContextTally, 4> tally_log(const TrialLog& log) {
  std::array<ContextTally, 4> tallies{};
  for (const auto& t : log) {
    if (t.a == 0 || t.b == 0) {
      throw ValidationError("tally_log saw a null outcome; condition on coincidences first");
    }
    auto& tc = tallies[context_index(t.context)];
    ++tc.n;
    ++tc.counts[OutcomeDist::index_of(t.a, t.b)];
  }
  return tallies;
}

double fixed_chsh(const std::array<double, 4>& e) {
  return e[0] + e[1] + e[2] - e[3];
}

TrialLog urn_protocol(const HVModel& model, const std::vector<Context>& schedule,
                      std::uint64_t seed, std::int64_t run_id) {
  if (schedule.empty()) throw ValidationError("urn protocol needs a non-empty schedule");
  RngStream rng(seed, derive_stream(seed, static_cast<std::uint64_t>(run_id)));
  LambdaSampler sampler(model);
  TrialLog log;
  log.reserve(schedule.size());
  std::int64_t trial = 0;
  for (const Context& c : schedule) {
    std::size_t lambda = sampler.draw(rng);
    TrialRecord t;
    t.run_id = run_id;
    t.trial = trial++;
    t.context = c;
    t.a = model.response_a(c.a, lambda);
    t.b = model.response_b(c.b, lambda);
    t.lambda_index = static_cast<std::int32_t>(lambda);
    log.push_back(t);
  }
  return log;
}

Spreadsheet4N::Spreadsheet4N(std::vector<std::array<int, 4>> rows) : rows_(std::move(rows)) {
  for (const auto& r : rows_) {
    for (int v : r) {
      if (v != 1 && v != -1) throw ValidationError("spreadsheet entries must be +/-1");
    }
  }
}

Spreadsheet4N Spreadsheet4N::sample(const HVModel& model, long n_per_context, RngStream& rng) {
  LambdaSampler sampler(model);
  std::vector<std::array<int, 4>> rows;
  rows.reserve(static_cast<std::size_t>(4 * n_per_context));
  for (long i = 0; i < 4 * n_per_context; ++i) {
    std::size_t lambda = sampler.draw(rng);
    const HVState& s = model.states()[lambda];
    rows.push_back({s.a[0], s.b[0], s.a[1], s.b[1]});
  }
  return Spreadsheet4N(std::move(rows));
}

int Spreadsheet4N::row_bound(const std::array<int, 4>& row) {
  int e11 = row[0] * row[1], e12 = row[0] * row[3], e21 = row[2] * row[1],
      e22 = row[2] * row[3];
  int total = e11 + e12 + e21 + e22;
  int best = 0;
  for (int em : {e11, e12, e21, e22}) best = std::max(best, std::abs(total - 2 * em));
  return best;
}

Rational Spreadsheet4N::same_sheet_chsh() const {
  if (rows_.empty()) throw ValidationError("empty spreadsheet");
  std::int64_t sum = 0;
  for (const auto& r : rows_) {
    sum += r[0] * r[1] + r[0] * r[3] + r[2] * r[1] - r[2] * r[3];
  }
  return Rational(sum, static_cast<std::int64_t>(rows_.size()));
}

ViolationStats spreadsheet_experiment(const HVModel& model, long n_per_context, long runs,
                                      std::uint64_t seed) {
  if (n_per_context < 1) throw ValidationError("N must be >= 1");
  if (runs < 1) throw ValidationError("runs must be >= 1");
  LambdaSampler sampler(model);

  ViolationStats stats;
  stats.runs = runs;
  double sum_s = 0.0, sum_s2 = 0.0;
  double sheet_sum = 0.0, sheet_max = -8.0;
  for (long run = 0; run < runs; ++run) {
    std::uint64_t base = derive_stream(seed, static_cast<std::uint64_t>(run));
    // Disjoint estimates: an independent N-draw sample per context.
    std::array<double, 4> e{};
    for (const Context& c : kContexts) {
      RngStream rng(seed, derive_stream(base, static_cast<std::uint64_t>(context_index(c))));
      long sum = 0;
      for (long i = 0; i < n_per_context; ++i) {
        std::size_t lambda = sampler.draw(rng);
        sum += model.response_a(c.a, lambda) * model.response_b(c.b, lambda);
      }
      e[context_index(c)] = double(sum) / double(n_per_context);
    }
    double s_hat = fixed_chsh(e);
    if (s_hat > 2.0) ++stats.violated;
    sum_s += s_hat;
    sum_s2 += s_hat * s_hat;

    // Contrast: one shared 4N x 4 spreadsheet, all estimates from its columns.
    RngStream sheet_rng(seed, derive_stream(base, 4));
    Spreadsheet4N sheet = Spreadsheet4N::sample(model, n_per_context, sheet_rng);
    double s_same = sheet.same_sheet_chsh().to_double();
    sheet_sum += s_same;
    sheet_max = std::max(sheet_max, s_same);
  }
  stats.frequency = double(stats.violated) / double(runs);
  stats.mean_S = sum_s / double(runs);
  double var = runs > 1 ? (sum_s2 - sum_s * sum_s / double(runs)) / double(runs - 1) : 0.0;
  stats.stderr_S = std::sqrt(std::max(0.0, var) / double(runs));
  stats.same_sheet_mean_S = sheet_sum / double(runs);
  stats.same_sheet_max_S = sheet_max;
  return stats;
}

DisconnectedDatasets max_S_disconnected(const Rational& epsilon, long rows) {
  if (epsilon < Rational(0)) {
    throw ValidationError("requested S exceeds 4 (epsilon must be >= 0)");
  }
  if (epsilon > Rational(8)) throw ValidationError("epsilon must be <= 8");
  if (rows < 1) throw ValidationError("rows must be >= 1");
  Rational k_rat = epsilon * Rational(rows, 8);
  if (k_rat.den() != 1) {
    throw ValidationError("epsilon*rows/8 must be an integer for an exact mix (got " +
                          k_rat.str() + ")");
  }
  long k = static_cast<long>(k_rat.num());
  if (k > rows) throw ValidationError("epsilon too large for this row count");

  DisconnectedDatasets out;
  for (int ctx = 0; ctx < 4; ++ctx) {
    // Contexts 11,12,21 target E=+1 via (+1,+1) rows; context 22 targets
    // E=-1 via (+1,-1). The first k rows of each dataset are discordant.
    int concordant_b = ctx == 3 ? -1 : 1;
    auto& d = out.data[ctx];
    d.reserve(static_cast<std::size_t>(rows));
    for (long i = 0; i < rows; ++i) {
      d.emplace_back(1, i < k ? -concordant_b : concordant_b);
    }
  }
  out.achieved_S = disconnected_chsh(out.data);
  return out;
}

Rational disconnected_chsh(const std::array<std::vector<std::pair<int, int>>, 4>& data) {
  std::array<Rational, 4> e;
  for (int ctx = 0; ctx < 4; ++ctx) {
    if (data[ctx].empty()) throw ValidationError("empty dataset");
    std::int64_t sum = 0;
    for (auto [a, b] : data[ctx]) {
      if ((a != 1 && a != -1) || (b != 1 && b != -1)) {
        throw ValidationError("dataset entries must be +/-1");
      }
      sum += a * b;
    }
    e[ctx] = Rational(sum, static_cast<std::int64_t>(data[ctx].size()));
  }
  return e[0] + e[1] + e[2] - e[3];
}

HVModel preset_s2() {
  std::vector<HVState> states;
  for (int t : {1, -1}) {
    HVState s;
    s.weight = Rational(1, 2);
    s.a = {1, 1};
    s.b = {1, t};
    states.push_back(s);
  }
  return HVModel(std::move(states));
}

HVModel preset_s1() {
  std::vector<HVState> states;
  for (int a2 : {1, -1}) {
    for (int b2 : {1, -1}) {
      HVState s;
      s.weight = Rational(1, 4);
      s.a = {1, a2};
      s.b = {1, b2};
      states.push_back(s);
    }
  }
  return HVModel(std::move(states));
}

}  // namespace bellkit
