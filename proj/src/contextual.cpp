#include "bellkit/contextual.hpp"

#include <cmath>

#include "bellkit/rng.hpp"

namespace bellkit {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Stream tags for the two independent draw families (Eq.-level requirement:
// source and instrument variables factorize).
constexpr std::uint64_t kSourceTag = 0x736F7572u;      // "sour"
constexpr std::uint64_t kInstrumentTag = 0x696E7374u;  // "inst"

int sign_of(double v) { return v >= 0.0 ? 1 : -1; }

}  // namespace

ContextualModel ContextualModel::default_preset() {
  ContextualModel m;
  m.alice_theta = {0.0, kPi / 4.0};
  m.bob_theta = {kPi / 8.0, 3.0 * kPi / 8.0};
  m.gamma = 0.45;
  m.bob_minus_efficiency = 0.9;
  m.malus_coeff = 0.0;
  return m;
}

ContextualTrial sample_trial(const ContextualModel& model, const Context& context,
                             std::uint64_t seed, std::int64_t trial_index) {
  int ctx = context_index(context);
  std::uint64_t trial_u = static_cast<std::uint64_t>(trial_index);
  RngStream source_rng(seed, derive_stream(derive_stream(seed, kSourceTag ^ std::uint64_t(ctx)),
                                           trial_u));
  RngStream inst_rng(seed, derive_stream(derive_stream(seed, kInstrumentTag ^ std::uint64_t(ctx)),
                                         trial_u));

  ContextualTrial t;
  t.context = context;
  t.source.lam1 = source_rng.next_unit() * 2.0 * kPi;
  t.source.lam2 = t.source.lam1 + kPi;

  double theta_i = model.alice_angle(context.a);
  double theta_j = model.bob_angle(context.b);

  if (model.fixed_threshold) {
    t.instrument.lam_i = *model.fixed_threshold;
    t.instrument.lam_j = *model.fixed_threshold;
  } else {
    t.instrument.lam_i = inst_rng.next_unit();
    double rho = model.malus_coeff * std::cos(theta_i - theta_j);
    if (rho == 0.0) {
      t.instrument.lam_j = inst_rng.next_unit();
    } else {
      // Frechet mixture: with probability |rho| copy (or anti-copy), else draw fresh.
      double branch = inst_rng.next_unit();
      if (branch < std::fabs(rho)) {
        t.instrument.lam_j = rho > 0 ? t.instrument.lam_i : 1.0 - t.instrument.lam_i;
      } else {
        t.instrument.lam_j = inst_rng.next_unit();
      }
    }
  }

  // Alice: outcome sign(cos 2(lam1 - theta_i)) when the alignment clears the
  // instrument threshold lam_i^gamma, else 0.
  double u = std::cos(2.0 * (t.source.lam1 - theta_i));
  t.a = std::fabs(u) >= std::pow(t.instrument.lam_i, model.gamma) ? sign_of(u) : 0;

  // Bob: same, with the -1 channel's efficiency folded into the gate so that
  // P(detect) = |v|^(1/gamma) * w for sign -1.
  double v = std::cos(2.0 * (t.source.lam2 - theta_j));
  double w = sign_of(v) < 0 ? model.bob_minus_efficiency : 1.0;
  t.b = std::fabs(v) * std::pow(w, model.gamma) >= std::pow(t.instrument.lam_j, model.gamma)
            ? sign_of(v)
            : 0;
  return t;
}

TrialLog run_contextual(const ContextualModel& model, long n_per_context, std::uint64_t seed) {
  if (n_per_context < 1) throw ValidationError("n_per_context must be >= 1");
  TrialLog log;
  log.reserve(static_cast<std::size_t>(4 * n_per_context));
  for (const Context& c : kContexts) {
    for (long i = 0; i < n_per_context; ++i) {
      ContextualTrial t = sample_trial(model, c, seed, i);
      TrialRecord rec;
      rec.run_id = context_index(c);
      rec.trial = i;
      rec.context = c;
      rec.a = t.a;
      rec.b = t.b;
      log.push_back(rec);
    }
  }
  return log;
}

std::vector<ContextualTrial> run_contextual_detailed(const ContextualModel& model,
                                                     long n_per_context, std::uint64_t seed) {
  if (n_per_context < 1) throw ValidationError("n_per_context must be >= 1");
  std::vector<ContextualTrial> trials;
  trials.reserve(static_cast<std::size_t>(4 * n_per_context));
  for (const Context& c : kContexts) {
    for (long i = 0; i < n_per_context; ++i) {
      trials.push_back(sample_trial(model, c, seed, i));
    }
  }
  return trials;
}

std::array<double, 4> posterior_setting(const ContextualModel&, const HiddenSample& sample) {
  if (!sample.tag) {
    throw ValidationError("hidden sample carries no context tag");
  }
  std::array<double, 4> p{};
  p[context_index(*sample.tag)] = 1.0;
  return p;
}

double ConditionedContext::expectation() const {
  if (kept == 0) throw ValidationError("no coincidences in context");
  return double(counts[0] + counts[3] - counts[1] - counts[2]) / double(kept);
}

std::pair<double, double> ConditionedContext::marginals() const {
  if (kept == 0) throw ValidationError("no coincidences in context");
  return {double(counts[0] + counts[1]) / double(kept),
          double(counts[0] + counts[2]) / double(kept)};
}

OutcomeDist ConditionedContext::dist() const {
  if (kept == 0) throw ValidationError("no coincidences in context");
  double n = double(kept);
  return OutcomeDist::from_probs(Scalar(counts[0] / n), Scalar(counts[1] / n),
                                 Scalar(counts[2] / n), Scalar(counts[3] / n));
}

bool ConditionedBehavior::complete() const {
  for (const auto& c : contexts) {
    if (c.empty()) return false;
  }
  return true;
}

Behavior ConditionedBehavior::behavior() const {
  if (!complete()) {
    throw ValidationError("cannot form a behavior: some context has no coincidences");
  }
  std::array<OutcomeDist, 4> table;
  for (int i = 0; i < 4; ++i) table[i] = contexts[i].dist();
  return Behavior(table);
}

std::optional<ChshReport> ConditionedBehavior::chsh_report() const {
  if (!complete()) return std::nullopt;
  return chsh(behavior());
}

NoSignalingEstimate ConditionedBehavior::no_signaling() const {
  if (!complete()) {
    throw ValidationError("cannot estimate no-signaling: some context has no coincidences");
  }
  auto se_of = [&](int ctx, bool alice) {
    auto [pa, pb] = contexts[ctx].marginals();
    double p = alice ? pa : pb;
    return std::sqrt(p * (1.0 - p) / double(contexts[ctx].kept));
  };
  NoSignalingEstimate best;
  auto consider = [&](int ctx1, int ctx2, bool alice) {
    auto m1 = contexts[ctx1].marginals();
    auto m2 = contexts[ctx2].marginals();
    double d = std::fabs((alice ? m1.first : m1.second) - (alice ? m2.first : m2.second));
    if (d >= best.delta) {
      best.delta = d;
      double s1 = se_of(ctx1, alice), s2 = se_of(ctx2, alice);
      best.stderr_delta = std::sqrt(s1 * s1 + s2 * s2);
    }
  };
  // Alice's marginal across Bob's settings, per Alice setting; then Bob's.
  consider(context_index({1, 1}), context_index({1, 2}), true);
  consider(context_index({2, 1}), context_index({2, 2}), true);
  consider(context_index({1, 1}), context_index({2, 1}), false);
  consider(context_index({1, 2}), context_index({2, 2}), false);
  return best;
}

ConditionedBehavior condition_on_coincidences(const TrialLog& log) {
  ConditionedBehavior out;
  for (const auto& t : log) {
    auto& ctx = out.contexts[context_index(t.context)];
    ++ctx.total;
    if (t.a == 0 || t.b == 0) continue;
    ++ctx.kept;
    ++ctx.counts[OutcomeDist::index_of(t.a, t.b)];
  }
  for (const Context& c : kContexts) {
    const auto& ctx = out.contexts[context_index(c)];
    if (ctx.empty()) {
      out.warnings.push_back("context (" + std::to_string(c.a) + "," + std::to_string(c.b) +
                             "): no coincidences retained; excluded from CHSH");
    }
  }
  return out;
}

ContextualModel malus_instrument_model(const ContextualModel& base, double coeff) {
  if (!(coeff >= -1.0 && coeff <= 1.0)) {
    throw ValidationError("instrument correlation coefficient must be in [-1,1]");
  }
  ContextualModel m = base;
  m.malus_coeff = coeff;
  return m;
}

std::array<double, 4> raw_expectations(const TrialLog& log) {
  std::array<long, 4> sums{};
  std::array<long, 4> n{};
  for (const auto& t : log) {
    int i = context_index(t.context);
    sums[i] += t.a * t.b;
    ++n[i];
  }
  std::array<double, 4> e{};
  for (int i = 0; i < 4; ++i) {
    if (n[i] == 0) throw ValidationError("no trials in context");
    e[i] = double(sums[i]) / double(n[i]);
  }
  return e;
}

}  // namespace bellkit
