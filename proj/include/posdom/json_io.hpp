// Copyright 2026 The posdom Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef POSDOM_JSON_IO_HPP_
#define POSDOM_JSON_IO_HPP_

#include <string>

#include "json.hpp"
#include "posdom/core.hpp"
#include "posdom/eval.hpp"
#include "posdom/tree.hpp"

namespace posdom {

using Json = nlohmann::ordered_json;

// Numbers are JSON numbers except the sentinels "-inf" and "inf".
Json number_to_json(double x);
double number_from_json(const Json& j, const std::string& field);

// {"lo", "hi", "lo_closed", "hi_closed"}; the closedness flags default to
// true when absent.
Json to_json(const Interval& iv);
Interval interval_from_json(const Json& j, const std::string& field = "interval");

// {"name", "lo", "hi"}
Json to_json(const VariableSpec& v);
VariableSpec variable_from_json(const Json& j, const std::string& field = "variable");

// Array of intervals.
Json to_json(const TargetRange& t);
TargetRange target_from_json(const Json& j, const std::string& field = "target");

// {"intervals": [...]}
Json to_json(const Box& b);
Box box_from_json(const Json& j, const std::string& field = "box");

// {"variables", "target", "granularity", "refined", "boxes"}
Json to_json(const ApproxPositiveDomain& apd);
ApproxPositiveDomain apd_from_json(const Json& j);

// Nested {"feature_index", "threshold", "count", "left", "right"} or
// {"label", "count"}.
Json to_json(const DecisionTree& tree);
DecisionTree tree_from_json(const Json& j, std::size_t dim);

// {"tp", "fp", "fn", "tn", "tpr", "accuracy"}; tpr is null when undefined.
Json to_json(const EvalReport& r);

// Pretty-printed with a trailing newline.
std::string dump(const Json& j);

}  // namespace posdom

#endif  // POSDOM_JSON_IO_HPP_
