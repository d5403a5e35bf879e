#pragma once

// JSON schemas for the shared file formats. Exact values are serialized as
// "num/den" strings (never rounded floats); float values as JSON numbers.
// Parsers accept "num/den", decimal strings ("0.25") and numbers.

#include "json.hpp"  // vendored nlohmann/json

#include "bellkit/contextual.hpp"
#include "bellkit/coupling.hpp"

namespace bellkit {

using Json = nlohmann::json;

Json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const Json& j);

// {"contexts":[{"a":1,"b":1,"p":[[p++,p+-],[p-+,p--]]}, ... x4]}
Json behavior_to_json(const Behavior& behavior);
Behavior behavior_from_json(const Json& j);

// {"p":{"(a1,b1,a2,b2)": value, ...}} with zero entries omitted.
Json coupling_to_json(const CouplingJP& coupling);
CouplingJP coupling_from_json(const Json& j);

Json chsh_report_to_json(const ChshReport& report);
Json fine_result_to_json(const FineResult& result);
Json violation_stats_to_json(const ViolationStats& stats);

// Behavior schema plus a per-context "retained" fraction and warnings.
Json conditioned_to_json(const ConditionedBehavior& cb);

}  // namespace bellkit
