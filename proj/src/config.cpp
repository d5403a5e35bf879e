#include "bellkit/config.hpp"

#include <charconv>
#include <cstdlib>
#include <set>
#include <sstream>

namespace bellkit {

std::string experiment_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::chsh: return "chsh";
    case ExperimentKind::fine: return "fine";
    case ExperimentKind::singlet: return "singlet";
    case ExperimentKind::counterexample: return "counterexample";
    case ExperimentKind::spreadsheet: return "spreadsheet";
    case ExperimentKind::contextual: return "contextual";
  }
  return "?";
}

std::optional<ExperimentKind> experiment_from_name(const std::string& name) {
  for (ExperimentKind k :
       {ExperimentKind::chsh, ExperimentKind::fine, ExperimentKind::singlet,
        ExperimentKind::counterexample, ExperimentKind::spreadsheet, ExperimentKind::contextual}) {
    if (experiment_name(k) == name) return k;
  }
  return std::nullopt;
}

std::string ConfigError::format() const {
  std::string msg;
  if (line > 0) msg += "line " + std::to_string(line) + ": ";
  if (!key.empty()) msg += key + ": ";
  return msg + message;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_long(const std::string& s, long& out) {
  const char* beg = s.data();
  const char* end = beg + s.size();
  auto [p, ec] = std::from_chars(beg, end, out);
  return ec == std::errc() && p == end;
}

bool parse_u64(const std::string& s, std::uint64_t& out) {
  const char* beg = s.data();
  const char* end = beg + s.size();
  auto [p, ec] = std::from_chars(beg, end, out);
  return ec == std::errc() && p == end;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

bool parse_angles(const std::string& value, std::array<double, 4>& out, std::string& err) {
  std::vector<double> vals;
  std::stringstream ss(value);
  std::string part;
  while (std::getline(ss, part, ',')) {
    double v;
    if (!parse_double(trim(part), v)) {
      err = "'" + trim(part) + "' is not a number";
      return false;
    }
    vals.push_back(v);
  }
  if (vals.size() != 4) {
    err = "exactly 4 angles required (got " + std::to_string(vals.size()) + ")";
    return false;
  }
  for (int i = 0; i < 4; ++i) out[i] = vals[i];
  return true;
}

// model.* keys each experiment accepts.
const std::map<std::string, std::set<std::string>>& allowed_model_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"chsh", {}},
      {"fine", {}},
      {"singlet", {}},
      {"counterexample", {}},
      {"spreadsheet", {"preset"}},
      {"contextual",
       {"preset", "gamma", "bob_minus_efficiency", "malus", "fixed_threshold", "emit_trials"}},
  };
  return keys;
}

}  // namespace

ConfigParse parse_config_text(const std::string& text) {
  ConfigParse out;
  ExperimentConfig cfg;
  bool have_experiment = false;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      out.errors.push_back({lineno, "", "expected 'key = value'"});
      continue;
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      out.errors.push_back({lineno, "", "missing key before '='"});
      continue;
    }
    if (!seen.insert(key).second) {
      out.errors.push_back({lineno, key, "duplicate key"});
      continue;
    }
    if (key.rfind("model.", 0) == 0) {
      cfg.model_params[key.substr(6)] = value;
      continue;
    }
    if (key == "experiment") {
      auto kind = experiment_from_name(value);
      if (!kind) {
        out.errors.push_back({lineno, key, "unknown experiment '" + value + "'"});
      } else {
        cfg.experiment = *kind;
        have_experiment = true;
      }
    } else if (key == "seed") {
      std::uint64_t v;
      if (!parse_u64(value, v)) {
        out.errors.push_back({lineno, key, "not a 64-bit unsigned integer"});
      } else {
        cfg.seed = v;
      }
    } else if (key == "n") {
      long v;
      if (!parse_long(value, v)) {
        out.errors.push_back({lineno, key, "not an integer"});
      } else {
        cfg.n = v;
      }
    } else if (key == "runs") {
      long v;
      if (!parse_long(value, v)) {
        out.errors.push_back({lineno, key, "not an integer"});
      } else {
        cfg.runs = v;
      }
    } else if (key == "angles") {
      std::array<double, 4> a;
      std::string err;
      if (!parse_angles(value, a, err)) {
        out.errors.push_back({lineno, key, err});
      } else {
        cfg.angles_deg = a;
      }
    } else if (key == "out") {
      cfg.output_prefix = value;
    } else if (key == "input") {
      cfg.input_path = value;
    } else {
      out.errors.push_back({lineno, key, "unknown key"});
    }
  }
  if (!have_experiment) {
    out.errors.push_back({0, "experiment", "required key is missing"});
  }
  if (out.errors.empty()) {
    auto semantic = validate(cfg);
    out.errors.insert(out.errors.end(), semantic.begin(), semantic.end());
  }
  if (out.errors.empty()) out.config = cfg;
  return out;
}

std::vector<ConfigError> validate(const ExperimentConfig& config) {
  std::vector<ConfigError> errors;
  if (config.n < 1) errors.push_back({0, "n", "N must be >= 1"});
  if (config.runs < 1) errors.push_back({0, "runs", "runs must be >= 1"});

  std::string name = experiment_name(config.experiment);
  const auto& allowed = allowed_model_keys().at(name);
  for (const auto& [key, value] : config.model_params) {
    if (!allowed.count(key)) {
      errors.push_back({0, "model." + key,
                        "unknown key for experiment '" + name + "'"});
      continue;
    }
    if (key == "preset") {
      if (config.experiment == ExperimentKind::spreadsheet) {
        if (value != "s2" && value != "s1" && value != "lf") {
          errors.push_back({0, "model.preset", "must be one of s2, s1, lf"});
        }
      } else if (value != "default") {
        errors.push_back({0, "model.preset", "must be 'default'"});
      }
    } else if (key == "gamma") {
      double v;
      if (!parse_double(value, v) || v <= 0.0) {
        errors.push_back({0, "model.gamma", "must be a positive number"});
      }
    } else if (key == "bob_minus_efficiency") {
      double v;
      if (!parse_double(value, v) || v <= 0.0 || v > 1.0) {
        errors.push_back({0, "model.bob_minus_efficiency", "must be in (0,1]"});
      }
    } else if (key == "malus") {
      double v;
      if (!parse_double(value, v) || v < -1.0 || v > 1.0) {
        errors.push_back({0, "model.malus", "correlation coefficient must be in [-1,1]"});
      }
    } else if (key == "fixed_threshold") {
      double v;
      if (!parse_double(value, v) || v < 0.0 || v > 1.0) {
        errors.push_back({0, "model.fixed_threshold", "must be in [0,1]"});
      }
    } else if (key == "emit_trials") {
      if (value != "true" && value != "false") {
        errors.push_back({0, "model.emit_trials", "must be true or false"});
      }
    }
  }

  switch (config.experiment) {
    case ExperimentKind::chsh:
    case ExperimentKind::fine:
      if (config.input_path.empty()) {
        errors.push_back({0, "input", "a behavior JSON path is required"});
      }
      break;
    case ExperimentKind::singlet:
    case ExperimentKind::contextual:
      break;
    case ExperimentKind::counterexample:
    case ExperimentKind::spreadsheet:
      if (config.angles_deg) {
        errors.push_back({0, "angles", "not accepted by this experiment"});
      }
      break;
  }
  return errors;
}

}  // namespace bellkit
