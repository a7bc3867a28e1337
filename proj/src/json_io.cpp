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

#include "posdom/json_io.hpp"

#include <cmath>

#include "posdom/error.hpp"

namespace posdom {

namespace {

const Json& require(const Json& j, const char* key, const std::string& field) {
  if (!j.is_object()) throw ValidationError(field + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end()) {
    throw ValidationError(field + "." + key + ": missing");
  }
  return *it;
}

bool flag(const Json& j, const char* key, const std::string& field) {
  const auto it = j.find(key);
  if (it == j.end()) return true;
  if (!it->is_boolean()) {
    throw ValidationError(field + "." + key + ": expected true or false");
  }
  return it->get<bool>();
}

const Json& require_array(const Json& j, const char* key,
                          const std::string& field) {
  const Json& a = require(j, key, field);
  if (!a.is_array()) throw ValidationError(field + "." + key + ": expected an array");
  return a;
}

void build_tree(const Json& j, const std::string& field,
                std::vector<TreeNode>& nodes) {
  if (!j.is_object()) throw ValidationError(field + ": expected an object");
  const std::size_t id = nodes.size();
  nodes.emplace_back();
  TreeNode node;
  const Json& count = require(j, "count", field);
  if (!count.is_number_unsigned()) {
    throw ValidationError(field + ".count: expected a nonnegative integer");
  }
  node.count = count.get<std::size_t>();
  if (j.contains("label")) {
    const Json& label = j.at("label");
    if (!label.is_string()) throw ValidationError(field + ".label: expected a string");
    node.label = parse_label(label.get<std::string>());
    nodes[id] = node;
    return;
  }
  const Json& feature = require(j, "feature_index", field);
  if (!feature.is_number_integer()) {
    throw ValidationError(field + ".feature_index: expected an integer");
  }
  node.feature = feature.get<std::int32_t>();
  node.threshold = number_from_json(require(j, "threshold", field),
                                    field + ".threshold");
  node.left = static_cast<std::uint32_t>(nodes.size());
  build_tree(require(j, "left", field), field + ".left", nodes);
  node.right = static_cast<std::uint32_t>(nodes.size());
  build_tree(require(j, "right", field), field + ".right", nodes);
  nodes[id] = node;
}

Json tree_node(const DecisionTree& tree, std::uint32_t id) {
  const TreeNode& n = tree.node(id);
  Json j;
  if (n.is_leaf()) {
    j["label"] = std::string(to_string(n.label));
    j["count"] = n.count;
    return j;
  }
  j["feature_index"] = n.feature;
  j["threshold"] = number_to_json(n.threshold);
  j["count"] = n.count;
  j["left"] = tree_node(tree, n.left);
  j["right"] = tree_node(tree, n.right);
  return j;
}

}  // namespace

Json number_to_json(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double number_from_json(const Json& j, const std::string& field) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  throw ValidationError(field + ": expected a number, \"inf\" or \"-inf\"");
}

Json to_json(const Interval& iv) {
  Json j;
  j["lo"] = number_to_json(iv.lo());
  j["hi"] = number_to_json(iv.hi());
  j["lo_closed"] = iv.lo_closed();
  j["hi_closed"] = iv.hi_closed();
  return j;
}

Interval interval_from_json(const Json& j, const std::string& field) {
  try {
    return Interval(number_from_json(require(j, "lo", field), field + ".lo"),
                    number_from_json(require(j, "hi", field), field + ".hi"),
                    flag(j, "lo_closed", field), flag(j, "hi_closed", field));
  } catch (const ValidationError& e) {
    const std::string what = e.what();
    if (what.rfind(field, 0) == 0) throw;
    throw ValidationError(field + ": " + what);
  }
}

Json to_json(const VariableSpec& v) {
  Json j;
  j["name"] = v.name;
  j["lo"] = v.lo;
  j["hi"] = v.hi;
  return j;
}

VariableSpec variable_from_json(const Json& j, const std::string& field) {
  const Json& name = require(j, "name", field);
  if (!name.is_string()) throw ValidationError(field + ".name: expected a string");
  try {
    return VariableSpec(name.get<std::string>(),
                        number_from_json(require(j, "lo", field), field + ".lo"),
                        number_from_json(require(j, "hi", field), field + ".hi"));
  } catch (const ValidationError& e) {
    const std::string what = e.what();
    if (what.rfind(field, 0) == 0) throw;
    throw ValidationError(field + ": " + what);
  }
}

Json to_json(const TargetRange& t) {
  Json j = Json::array();
  for (const Interval& iv : t.intervals()) j.push_back(to_json(iv));
  return j;
}

TargetRange target_from_json(const Json& j, const std::string& field) {
  if (!j.is_array()) throw ValidationError(field + ": expected an array of intervals");
  std::vector<Interval> intervals;
  for (std::size_t i = 0; i < j.size(); ++i) {
    intervals.push_back(
        interval_from_json(j[i], field + "[" + std::to_string(i) + "]"));
  }
  try {
    return TargetRange(std::move(intervals));
  } catch (const ValidationError& e) {
    throw ValidationError(field + ": " + e.what());
  }
}

Json to_json(const Box& b) {
  Json j;
  j["intervals"] = Json::array();
  for (const Interval& iv : b.intervals()) j["intervals"].push_back(to_json(iv));
  return j;
}

Box box_from_json(const Json& j, const std::string& field) {
  const Json& a = require_array(j, "intervals", field);
  std::vector<Interval> intervals;
  for (std::size_t i = 0; i < a.size(); ++i) {
    intervals.push_back(interval_from_json(
        a[i], field + ".intervals[" + std::to_string(i) + "]"));
  }
  return Box(std::move(intervals));
}

Json to_json(const ApproxPositiveDomain& apd) {
  Json j;
  j["variables"] = Json::array();
  for (const VariableSpec& v : apd.variables()) j["variables"].push_back(to_json(v));
  j["target"] = to_json(apd.target());
  j["granularity"] = apd.granularity();
  j["refined"] = apd.refined();
  j["boxes"] = Json::array();
  for (const Box& b : apd.boxes()) j["boxes"].push_back(to_json(b));
  return j;
}

ApproxPositiveDomain apd_from_json(const Json& j) {
  const std::string field = "apd";
  std::vector<VariableSpec> vars;
  const Json& jv = require_array(j, "variables", field);
  for (std::size_t i = 0; i < jv.size(); ++i) {
    vars.push_back(
        variable_from_json(jv[i], field + ".variables[" + std::to_string(i) + "]"));
  }
  TargetRange target = target_from_json(require(j, "target", field), field + ".target");
  const double granularity =
      number_from_json(require(j, "granularity", field), field + ".granularity");
  const Json& refined = require(j, "refined", field);
  if (!refined.is_boolean()) throw ValidationError(field + ".refined: expected a boolean");
  std::vector<Box> boxes;
  const Json& jb = require_array(j, "boxes", field);
  for (std::size_t i = 0; i < jb.size(); ++i) {
    boxes.push_back(box_from_json(jb[i], field + ".boxes[" + std::to_string(i) + "]"));
  }
  try {
    return ApproxPositiveDomain(std::move(vars), std::move(target), granularity,
                                refined.get<bool>(), std::move(boxes));
  } catch (const ValidationError& e) {
    throw ValidationError(field + ": " + e.what());
  }
}

Json to_json(const DecisionTree& tree) { return tree_node(tree, 0); }

DecisionTree tree_from_json(const Json& j, std::size_t dim) {
  std::vector<TreeNode> nodes;
  build_tree(j, "tree", nodes);
  return DecisionTree(dim, std::move(nodes));
}

Json to_json(const EvalReport& r) {
  Json j;
  j["tp"] = r.tp;
  j["fp"] = r.fp;
  j["fn"] = r.fn;
  j["tn"] = r.tn;
  const auto tpr = r.tpr();
  j["tpr"] = tpr ? Json(*tpr) : Json(nullptr);
  j["accuracy"] = r.accuracy();
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace posdom
