// bellkit - command-line front end.
//
// Subcommands mirror the experiments:
//   bellkit chsh <behavior.json>
//   bellkit fine <behavior.json>
//   bellkit singlet --angles a1,a2,b1,b2
//   bellkit counterexample
//   bellkit spreadsheet --preset s2 --n N --runs R
//   bellkit contextual --preset default --n N [--malus c]
// Global: --seed S, --out PREFIX, --config FILE. A config file supplies
// defaults; explicit flags win. Results: one JSON envelope (stdout, or
// <prefix>.json) plus <prefix>.<table>.csv files.
//
// Exit codes: 0 ok, 2 invalid config/input, 3 numerical failure, 4 I/O error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "bellkit/runner.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

struct CliState {
  std::string config_path;
  bool seed_set = false;
  std::uint64_t seed = 0;
  std::string out_prefix;

  bool n_set = false;
  long n = 0;
  bool runs_set = false;
  long runs = 0;
  std::string angles_text;
  std::string input_path;
  std::string preset;
  bool malus_set = false;
  double malus = 0.0;
  bool emit_trials = false;
};

int fail_config(const std::vector<bellkit::ConfigError>& errors) {
  for (const auto& e : errors) std::cerr << "error: " << e.format() << "\n";
  return kExitValidation;
}

std::optional<std::array<double, 4>> parse_angles_or_die(const std::string& text, int& rc) {
  std::array<double, 4> out{};
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      double v = std::stod(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
      vals.push_back(v);
    } catch (const std::exception&) {
      std::cerr << "error: angles: '" << part << "' is not a number\n";
      rc = kExitValidation;
      return std::nullopt;
    }
  }
  if (vals.size() != 4) {
    std::cerr << "error: angles: exactly 4 angles required (got " << vals.size() << ")\n";
    rc = kExitValidation;
    return std::nullopt;
  }
  for (int i = 0; i < 4; ++i) out[i] = vals[i];
  return out;
}

int run_and_emit(const bellkit::ExperimentConfig& config) {
  bellkit::RunOutput output;
  try {
    output = bellkit::run(config);
  } catch (const bellkit::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const bellkit::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }

  std::string envelope = output.envelope.dump(2);
  if (config.output_prefix.empty()) {
    std::cout << envelope << "\n";
  } else {
    std::string path = config.output_prefix + ".json";
    std::ofstream json_out(path, std::ios::binary);
    if (!json_out) {
      std::cerr << "error: cannot write '" << path << "'\n";
      return kExitIo;
    }
    json_out << envelope << "\n";
    for (const auto& [suffix, content] : output.tables) {
      std::string table_path = config.output_prefix + "." + suffix;
      std::ofstream table_out(table_path, std::ios::binary);
      if (!table_out) {
        std::cerr << "error: cannot write '" << table_path << "'\n";
        return kExitIo;
      }
      table_out << content;
    }
    std::cout << path << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bell-test couplings, finite-sample protocols and contextual models"};
  app.require_subcommand(0, 1);

  CliState st;
  app.add_option("--config", st.config_path, "config file (key = value lines)");
  auto* seed_opt = app.add_option("--seed", st.seed, "RNG seed (64-bit)");
  app.add_option("--out", st.out_prefix, "output path prefix");

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--n", st.n, "trials per context")->each([&](const std::string&) {
      st.n_set = true;
    });
    sub->add_option("--runs", st.runs, "repetitions")->each([&](const std::string&) {
      st.runs_set = true;
    });
  };

  auto* chsh = app.add_subcommand("chsh", "CHSH variants of a behavior file");
  chsh->fallthrough();
  chsh->add_option("behavior", st.input_path, "behavior JSON path")->required();

  auto* fine = app.add_subcommand("fine", "joint-distribution feasibility of a behavior file");
  fine->fallthrough();
  fine->add_option("behavior", st.input_path, "behavior JSON path")->required();

  auto* singlet = app.add_subcommand("singlet", "singlet-state behavior at four angles");
  singlet->fallthrough();
  singlet->add_option("--angles", st.angles_text, "a1,a2,b1,b2 in degrees");

  app.add_subcommand("counterexample", "the exact dice-model coupling")->fallthrough();

  auto* spreadsheet = app.add_subcommand("spreadsheet", "disjoint-sample CHSH estimation");
  spreadsheet->fallthrough();
  spreadsheet->add_option("--preset", st.preset, "s2, s1 or lf");
  add_common(spreadsheet);

  auto* contextual = app.add_subcommand("contextual", "instrument-variable model with conditioning");
  contextual->fallthrough();
  contextual->add_option("--preset", st.preset, "model preset (default)");
  contextual->add_option("--malus", st.malus, "instrument correlation coefficient in [-1,1]")
      ->each([&](const std::string&) { st.malus_set = true; });
  contextual->add_option("--angles", st.angles_text, "a1,a2,b1,b2 in degrees");
  contextual->add_flag("--emit-trials", st.emit_trials, "also write the raw trial CSV");
  add_common(contextual);

  CLI11_PARSE(app, argc, argv);

  // Start from the config file when given, else from defaults.
  bellkit::ExperimentConfig config;
  bool have_experiment = false;
  if (!st.config_path.empty()) {
    std::ifstream in(st.config_path);
    if (!in) {
      std::cerr << "error: cannot open config '" << st.config_path << "'\n";
      return kExitIo;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    auto parsed = bellkit::parse_config_text(buffer.str());
    if (!parsed.errors.empty()) return fail_config(parsed.errors);
    config = *parsed.config;
    have_experiment = true;
  }

  // Flags and the chosen subcommand override file values.
  CLI::App* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands()[0];
  if (sub != nullptr) {
    auto kind = bellkit::experiment_from_name(sub->get_name());
    if (have_experiment && config.experiment != *kind) {
      // Subcommand wins; drop file-scoped params that belonged to the other experiment.
      config.model_params.clear();
      config.input_path.clear();
    }
    config.experiment = *kind;
    have_experiment = true;
  } else if (!have_experiment) {
    std::cerr << "error: no experiment: give a subcommand or --config with an experiment key\n";
    std::cerr << app.help();
    return kExitValidation;
  }

  if (seed_opt->count() > 0) config.seed = st.seed;
  if (!st.out_prefix.empty()) config.output_prefix = st.out_prefix;
  if (st.n_set) config.n = st.n;
  if (st.runs_set) config.runs = st.runs;
  if (!st.input_path.empty()) config.input_path = st.input_path;
  if (!st.preset.empty()) config.model_params["preset"] = st.preset;
  if (st.malus_set) config.model_params["malus"] = std::to_string(st.malus);
  if (st.emit_trials) config.model_params["emit_trials"] = "true";
  if (!st.angles_text.empty()) {
    int rc = 0;
    auto angles = parse_angles_or_die(st.angles_text, rc);
    if (!angles) return rc;
    config.angles_deg = *angles;
  }

  auto errors = bellkit::validate(config);
  if (!errors.empty()) return fail_config(errors);
  return run_and_emit(config);
}
