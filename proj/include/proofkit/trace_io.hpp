#pragma once

#include <json.hpp>

#include "proofkit/analysis.hpp"

namespace proofkit {

using Json = nlohmann::ordered_json;

Json env_to_json(const Environment& env);
// Throws ParseError.
Environment env_from_json(const Json& j);

Json position_to_json(const Position& p);
Position position_from_json(const Json& j);

// {initial, steps:[{index, rule, position, env, term, fine, administrative}],
//  result, fine, truncated}
Json trace_to_json(const ReductionTrace& t);
ReductionTrace trace_from_json(const Json& j);

Json weight_to_json(const WeightReport& w);

// Corners, legs and flags; legs use the trace layout.
Json diagram_to_json(const Diagram& d);
Diagram diagram_from_json(const Json& j);

}  // namespace proofkit
