#include "bellkit/io.hpp"

#include <cstdio>

namespace bellkit {

Json scalar_to_json(const Scalar& s) {
  if (s.is_exact()) return s.rat().str();
  return s.value();
}

Scalar scalar_from_json(const Json& j) {
  if (j.is_string()) {
    auto r = Rational::parse(j.get<std::string>());
    if (!r) throw ValidationError("cannot parse probability string '" + j.get<std::string>() + "'");
    return Scalar(*r);
  }
  if (j.is_number()) return Scalar(j.get<double>());
  throw ValidationError("probability must be a number or a string");
}

Json behavior_to_json(const Behavior& behavior) {
  Json contexts = Json::array();
  for (const Context& c : kContexts) {
    const OutcomeDist& d = behavior.at(c);
    Json entry;
    entry["a"] = c.a;
    entry["b"] = c.b;
    entry["p"] = Json::array({Json::array({scalar_to_json(d.p(1, 1)), scalar_to_json(d.p(1, -1))}),
                              Json::array({scalar_to_json(d.p(-1, 1)), scalar_to_json(d.p(-1, -1))})});
    contexts.push_back(entry);
  }
  return Json{{"contexts", contexts}};
}

Behavior behavior_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("contexts") || !j["contexts"].is_array()) {
    throw ValidationError("behavior JSON must be an object with a 'contexts' array");
  }
  const Json& contexts = j["contexts"];
  if (contexts.size() != 4) {
    throw ValidationError("behavior JSON must list exactly 4 contexts");
  }
  std::array<bool, 4> seen{};
  std::array<OutcomeDist, 4> table;
  for (const Json& entry : contexts) {
    if (!entry.contains("a") || !entry.contains("b") || !entry.contains("p")) {
      throw ValidationError("behavior context entry needs keys a, b, p");
    }
    Context c{entry["a"].get<int>(), entry["b"].get<int>()};
    int idx = context_index(c);
    if (seen[idx]) {
      throw ValidationError("behavior JSON repeats context (" + std::to_string(c.a) + "," +
                            std::to_string(c.b) + ")");
    }
    seen[idx] = true;
    const Json& p = entry["p"];
    if (!p.is_array() || p.size() != 2 || !p[0].is_array() || p[0].size() != 2 ||
        !p[1].is_array() || p[1].size() != 2) {
      throw ValidationError("behavior p must be a 2x2 array");
    }
    table[idx] = OutcomeDist::from_probs(scalar_from_json(p[0][0]), scalar_from_json(p[0][1]),
                                         scalar_from_json(p[1][0]), scalar_from_json(p[1][1]));
  }
  for (int i = 0; i < 4; ++i) {
    if (!seen[i]) throw ValidationError("behavior JSON is missing a context");
  }
  return Behavior(table);
}

namespace {

std::string omega_key(int index) {
  auto o = CouplingJP::outcomes_of(index);
  std::string key = "(";
  for (int i = 0; i < 4; ++i) {
    key += std::to_string(o[i]);
    key += i == 3 ? ')' : ',';
  }
  return key;
}

}  // namespace

Json coupling_to_json(const CouplingJP& coupling) {
  Json p = Json::object();
  for (int i = 0; i < 16; ++i) {
    const Scalar& v = coupling.probs()[i];
    bool zero = v.is_exact() ? v.rat() == Rational(0) : v.value() == 0.0;
    if (!zero) p[omega_key(i)] = scalar_to_json(v);
  }
  return Json{{"p", p}};
}

CouplingJP coupling_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("p") || !j["p"].is_object()) {
    throw ValidationError("coupling JSON must be an object with a 'p' map");
  }
  std::array<Scalar, 16> probs;
  std::array<bool, 16> present{};
  for (int i = 0; i < 16; ++i) probs[i] = Scalar::exact(0);
  for (auto it = j["p"].begin(); it != j["p"].end(); ++it) {
    int a1, b1, a2, b2;
    if (std::sscanf(it.key().c_str(), "(%d,%d,%d,%d)", &a1, &b1, &a2, &b2) != 4) {
      throw ValidationError("coupling key '" + it.key() + "' is not of the form (a1,b1,a2,b2)");
    }
    int idx = CouplingJP::index_of(a1, b1, a2, b2);
    if (present[idx]) throw ValidationError("coupling key repeated: " + it.key());
    present[idx] = true;
    probs[idx] = scalar_from_json(it.value());
  }
  return CouplingJP::from_probs(probs);
}

Json chsh_report_to_json(const ChshReport& report) {
  Json variants = Json::array();
  for (int k = 0; k < 8; ++k) {
    variants.push_back(Json{{"name", ChshReport::variant_name(k)},
                            {"S", scalar_to_json(report.variants[k])}});
  }
  return Json{{"variants", variants},
              {"max_abs", scalar_to_json(report.max_abs)},
              {"argmax", report.argmax}};
}

Json fine_result_to_json(const FineResult& result) {
  Json j;
  j["feasible"] = result.feasible;
  if (result.witness) j["witness"] = coupling_to_json(*result.witness);
  if (result.violated_variant) {
    j["violated_variant"] = *result.violated_variant;
    j["violated_variant_name"] = ChshReport::variant_name(*result.violated_variant);
  }
  if (!result.reason.empty()) j["reason"] = result.reason;
  return j;
}

Json violation_stats_to_json(const ViolationStats& stats) {
  return Json{{"runs", stats.runs},
              {"violated", stats.violated},
              {"frequency", stats.frequency},
              {"mean_S", stats.mean_S},
              {"stderr_S", stats.stderr_S},
              {"same_sheet_mean_S", stats.same_sheet_mean_S},
              {"same_sheet_max_S", stats.same_sheet_max_S}};
}

Json conditioned_to_json(const ConditionedBehavior& cb) {
  Json contexts = Json::array();
  for (const Context& c : kContexts) {
    const ConditionedContext& ctx = cb.contexts[context_index(c)];
    Json entry;
    entry["a"] = c.a;
    entry["b"] = c.b;
    entry["total"] = ctx.total;
    entry["kept"] = ctx.kept;
    entry["retained"] = ctx.retained();
    if (!ctx.empty()) {
      OutcomeDist d = ctx.dist();
      entry["p"] = Json::array({Json::array({scalar_to_json(d.p(1, 1)), scalar_to_json(d.p(1, -1))}),
                                Json::array({scalar_to_json(d.p(-1, 1)), scalar_to_json(d.p(-1, -1))})});
      entry["E"] = ctx.expectation();
    }
    contexts.push_back(entry);
  }
  Json j{{"contexts", contexts}};
  if (!cb.warnings.empty()) j["warnings"] = cb.warnings;
  return j;
}

}  // namespace bellkit
