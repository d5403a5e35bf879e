#include "bellkit/runner.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "bellkit/quantum.hpp"

namespace bellkit {

namespace {

Behavior load_behavior(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open behavior file '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw ValidationError("behavior file '" + path + "': " + e.what());
  }
  return behavior_from_json(j);
}

std::string behavior_csv(const Behavior& behavior) {
  std::ostringstream out;
  out << "ax,by,p_pp,p_pm,p_mp,p_mm,E\n";
  for (const Context& c : kContexts) {
    const OutcomeDist& d = behavior.at(c);
    out << c.a << ',' << c.b;
    for (int i = 0; i < 4; ++i) out << ',' << d.probs()[i].repr();
    out << ',' << expectation(d).repr() << '\n';
  }
  return out.str();
}

std::string variants_csv(const ChshReport& report) {
  std::ostringstream out;
  out << "variant,name,S\n";
  for (int k = 0; k < 8; ++k) {
    out << k << ",\"" << ChshReport::variant_name(k) << "\"," << report.variants[k].repr()
        << '\n';
  }
  return out.str();
}

std::string stats_csv(const ViolationStats& s) {
  std::ostringstream out;
  out << "runs,violated,frequency,mean_S,stderr_S,same_sheet_mean_S,same_sheet_max_S\n";
  out << s.runs << ',' << s.violated << ',' << s.frequency << ',' << s.mean_S << ','
      << s.stderr_S << ',' << s.same_sheet_mean_S << ',' << s.same_sheet_max_S << '\n';
  return out.str();
}

std::string conditioned_csv(const ConditionedBehavior& cb) {
  std::ostringstream out;
  out << "ax,by,total,kept,retained,E,p_a_plus,p_b_plus\n";
  for (const Context& c : kContexts) {
    const auto& ctx = cb.contexts[context_index(c)];
    out << c.a << ',' << c.b << ',' << ctx.total << ',' << ctx.kept << ',' << ctx.retained();
    if (!ctx.empty()) {
      auto [pa, pb] = ctx.marginals();
      out << ',' << ctx.expectation() << ',' << pa << ',' << pb;
    } else {
      out << ",,,";
    }
    out << '\n';
  }
  return out.str();
}

double param_double(const ExperimentConfig& cfg, const std::string& key, double fallback) {
  auto it = cfg.model_params.find(key);
  if (it == cfg.model_params.end()) return fallback;
  return std::stod(it->second);
}

std::string param_string(const ExperimentConfig& cfg, const std::string& key,
                         const std::string& fallback) {
  auto it = cfg.model_params.find(key);
  return it == cfg.model_params.end() ? fallback : it->second;
}

Json run_chsh(const ExperimentConfig& cfg, RunOutput& out) {
  Behavior behavior = load_behavior(cfg.input_path);
  ChshReport report = chsh(behavior);
  out.tables.emplace_back("variants.csv", variants_csv(report));
  return Json{{"chsh", chsh_report_to_json(report)},
              {"no_signaling_delta", scalar_to_json(no_signaling_delta(behavior))}};
}

Json run_fine(const ExperimentConfig& cfg, RunOutput& out) {
  Behavior behavior = load_behavior(cfg.input_path);
  FineResult result = fine_check(behavior);
  ChshReport report = chsh(behavior);
  out.tables.emplace_back("variants.csv", variants_csv(report));
  return Json{{"fine", fine_result_to_json(result)},
              {"chsh", chsh_report_to_json(report)},
              {"no_signaling_delta", scalar_to_json(no_signaling_delta(behavior))}};
}

Json run_singlet(const ExperimentConfig& cfg, RunOutput& out) {
  std::array<double, 4> deg = cfg.angles_deg.value_or(std::array<double, 4>{0, 90, 45, 135});
  Behavior behavior =
      singlet_behavior(MeasurementAngle::degrees(deg[0]), MeasurementAngle::degrees(deg[1]),
                       MeasurementAngle::degrees(deg[2]), MeasurementAngle::degrees(deg[3]));
  ChshReport report = chsh(behavior);
  out.tables.emplace_back("behavior.csv", behavior_csv(behavior));
  return Json{{"angles_deg", deg},
              {"behavior", behavior_to_json(behavior)},
              {"chsh", chsh_report_to_json(report)},
              {"no_signaling_delta", scalar_to_json(no_signaling_delta(behavior))}};
}

Json run_counterexample(const ExperimentConfig&, RunOutput& out) {
  HVModel model = lf_counterexample();
  CouplingJP coupling = build_coupling(model);
  Behavior behavior = behavior_of(coupling);
  ChshReport report = chsh(behavior);
  FineResult fine = fine_check(behavior);

  Json expectations = Json::array();
  for (const Scalar& e : behavior.expectations()) expectations.push_back(scalar_to_json(e));

  out.tables.emplace_back("behavior.csv", behavior_csv(behavior));
  return Json{{"lambda_count", model.size()},
              {"expectations", expectations},
              {"coupling", coupling_to_json(coupling)},
              {"four_product_expectation", scalar_to_json(four_product_expectation(coupling))},
              {"chsh", chsh_report_to_json(report)},
              {"no_signaling_delta", scalar_to_json(no_signaling_delta(behavior))},
              {"fine", fine_result_to_json(fine)}};
}

Json run_spreadsheet(const ExperimentConfig& cfg, RunOutput& out) {
  std::string preset = param_string(cfg, "preset", "s2");
  HVModel model = preset == "s2" ? preset_s2() : preset == "s1" ? preset_s1() : lf_counterexample();
  ViolationStats stats = spreadsheet_experiment(model, cfg.n, cfg.runs, cfg.seed);
  out.tables.emplace_back("stats.csv", stats_csv(stats));
  Json j = violation_stats_to_json(stats);
  j["preset"] = preset;
  Json pop = Json::array();
  for (const Scalar& e : behavior_of(build_coupling(model)).expectations()) {
    pop.push_back(scalar_to_json(e));
  }
  j["population_expectations"] = pop;
  return j;
}

Json run_contextual_experiment(const ExperimentConfig& cfg, RunOutput& out) {
  ContextualModel model = ContextualModel::default_preset();
  model.gamma = param_double(cfg, "gamma", model.gamma);
  model.bob_minus_efficiency = param_double(cfg, "bob_minus_efficiency", model.bob_minus_efficiency);
  if (cfg.model_params.count("fixed_threshold")) {
    model.fixed_threshold = param_double(cfg, "fixed_threshold", 0.0);
  }
  if (cfg.angles_deg) {
    const auto& a = *cfg.angles_deg;
    constexpr double kRad = 3.14159265358979323846 / 180.0;
    model.alice_theta = {a[0] * kRad, a[1] * kRad};
    model.bob_theta = {a[2] * kRad, a[3] * kRad};
  }
  if (cfg.model_params.count("malus")) {
    model = malus_instrument_model(model, param_double(cfg, "malus", 0.0));
  }

  TrialLog log = run_contextual(model, cfg.n, cfg.seed);
  ConditionedBehavior conditioned = condition_on_coincidences(log);

  Json j;
  j["raw_expectations"] = raw_expectations(log);
  j["conditioned"] = conditioned_to_json(conditioned);
  if (conditioned.complete()) {
    ChshReport report = *conditioned.chsh_report();
    NoSignalingEstimate ns = conditioned.no_signaling();
    j["post_selected_chsh"] = chsh_report_to_json(report);
    j["no_signaling_delta"] = ns.delta;
    j["no_signaling_stderr"] = ns.stderr_delta;
  }
  out.tables.emplace_back("conditioned.csv", conditioned_csv(conditioned));
  if (param_string(cfg, "emit_trials", "false") == "true") {
    std::ostringstream trials;
    write_trial_csv(trials, log);
    out.tables.emplace_back("trials.csv", trials.str());
  }
  return j;
}

}  // namespace

RunOutput run(const ExperimentConfig& config) {
  auto t0 = std::chrono::steady_clock::now();
  RunOutput out;
  Json payload;
  switch (config.experiment) {
    case ExperimentKind::chsh: payload = run_chsh(config, out); break;
    case ExperimentKind::fine: payload = run_fine(config, out); break;
    case ExperimentKind::singlet: payload = run_singlet(config, out); break;
    case ExperimentKind::counterexample: payload = run_counterexample(config, out); break;
    case ExperimentKind::spreadsheet: payload = run_spreadsheet(config, out); break;
    case ExperimentKind::contextual: payload = run_contextual_experiment(config, out); break;
  }
  auto t1 = std::chrono::steady_clock::now();

  Json config_echo;
  config_echo["experiment"] = experiment_name(config.experiment);
  config_echo["seed"] = config.seed;
  config_echo["n"] = config.n;
  config_echo["runs"] = config.runs;
  if (config.angles_deg) config_echo["angles_deg"] = *config.angles_deg;
  if (!config.input_path.empty()) config_echo["input"] = config.input_path;
  if (!config.output_prefix.empty()) config_echo["out"] = config.output_prefix;
  if (!config.model_params.empty()) {
    Json mp;
    for (const auto& [k, v] : config.model_params) mp[k] = v;
    config_echo["model"] = mp;
  }

  out.envelope = Json{{"toolkit", Json{{"name", "bellkit"}, {"version", kToolkitVersion}}},
                      {"config", config_echo},
                      {"payload", payload},
                      {"wall_clock_ms",
                       std::chrono::duration<double, std::milli>(t1 - t0).count()}};
  return out;
}

}  // namespace bellkit
