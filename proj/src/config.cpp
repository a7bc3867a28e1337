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

#include "posdom/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "posdom/error.hpp"
#include "posdom/expression.hpp"
#include "posdom/external_model.hpp"

namespace posdom {

namespace {

const Json* find(const Json& j, const char* key) {
  const auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

double positive_number(const Json& j, const std::string& field) {
  const double x = number_from_json(j, field);
  if (!(x > 0) || std::isinf(x)) {
    throw ValidationError(field + ": must be a positive finite number");
  }
  return x;
}

std::uint64_t unsigned_integer(const Json& j, const std::string& field) {
  if (!j.is_number_unsigned()) {
    throw ValidationError(field + ": expected a nonnegative integer");
  }
  return j.get<std::uint64_t>();
}

std::vector<double> number_list(const Json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) {
    throw ValidationError(field + ": expected a nonempty array of numbers");
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(number_from_json(j[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

ModelSpec parse_model(const Json& j, const std::string& field) {
  if (!j.is_object()) throw ValidationError(field + ": expected an object");
  ModelSpec spec;
  const Json* expr = find(j, "expr");
  const Json* command = find(j, "command");
  if ((expr != nullptr) == (command != nullptr)) {
    throw ValidationError(field + ": give exactly one of \"expr\" or \"command\"");
  }
  if (expr) {
    if (!expr->is_string() || expr->get_ref<const std::string&>().empty()) {
      throw ValidationError(field + ".expr: expected a nonempty string");
    }
    spec.expr = expr->get<std::string>();
  } else {
    if (!command->is_array() || command->empty()) {
      throw ValidationError(field + ".command: expected a nonempty array of strings");
    }
    for (const Json& a : *command) {
      if (!a.is_string()) {
        throw ValidationError(field + ".command: expected a nonempty array of strings");
      }
      spec.command.push_back(a.get<std::string>());
    }
  }
  if (const Json* t = find(j, "timeout_ms")) {
    const std::uint64_t ms = unsigned_integer(*t, field + ".timeout_ms");
    if (ms == 0) throw ValidationError(field + ".timeout_ms: must be positive");
    spec.timeout = std::chrono::milliseconds(ms);
  }
  return spec;
}

SweepSpec parse_sweep(const Json& j) {
  const std::string field = "sweep";
  if (!j.is_object()) throw ValidationError(field + ": expected an object");
  SweepSpec s;
  if (const Json* fs = find(j, "functions")) {
    if (!fs->is_array() || fs->empty()) {
      throw ValidationError(field + ".functions: expected a nonempty array");
    }
    for (std::size_t i = 0; i < fs->size(); ++i) {
      const std::string f = field + ".functions[" + std::to_string(i) + "]";
      const Json& item = (*fs)[i];
      if (item.is_string()) {
        const std::string id = item.get<std::string>();
        try {
          ModelSpec ms;
          ms.expr = benchmark(id).source;
          s.functions.push_back({id, std::move(ms)});
        } catch (const ValidationError& e) {
          throw ValidationError(f + ": " + e.what());
        }
        continue;
      }
      const Json* id = item.is_object() ? find(item, "id") : nullptr;
      if (!id || !id->is_string()) throw ValidationError(f + ".id: expected a string");
      s.functions.push_back({id->get<std::string>(), parse_model(item, f)});
    }
  }
  if (const Json* d = find(j, "deltas")) {
    s.deltas = number_list(*d, field + ".deltas");
    for (std::size_t i = 0; i < s.deltas.size(); ++i) {
      if (!(s.deltas[i] > 0) || std::isinf(s.deltas[i])) {
        throw ValidationError(field + ".deltas[" + std::to_string(i) +
                              "]: must be a positive finite number");
      }
    }
  }
  if (const Json* g = find(j, "sigmas")) {
    s.sigmas = number_list(*g, field + ".sigmas");
    for (std::size_t i = 0; i < s.sigmas.size(); ++i) {
      if (!(s.sigmas[i] >= 0) || std::isinf(s.sigmas[i])) {
        throw ValidationError(field + ".sigmas[" + std::to_string(i) +
                              "]: must be a finite number >= 0");
      }
    }
  }
  if (const Json* f = find(j, "folds")) {
    s.folds = unsigned_integer(*f, field + ".folds");
    if (s.folds == 0) throw ValidationError(field + ".folds: must be at least 1");
  }
  if (const Json* r = find(j, "refine")) {
    if (!r->is_boolean()) throw ValidationError(field + ".refine: expected a boolean");
    s.refine = r->get<bool>();
  }
  return s;
}

}  // namespace

TargetRange ProblemConfig::carving_target() const {
  if (margin == 0) return target;
  return shrink_target(target, margin, margin_side);
}

ProblemConfig parse_config(const Json& j) {
  if (!j.is_object()) throw ValidationError("config: expected a JSON object");
  ProblemConfig c;

  const Json* vars = find(j, "variables");
  if (!vars) throw ValidationError("variables: missing");
  if (!vars->is_array() || vars->empty()) {
    throw ValidationError("variables: expected a nonempty array");
  }
  for (std::size_t i = 0; i < vars->size(); ++i) {
    c.variables.push_back(
        variable_from_json((*vars)[i], "variables[" + std::to_string(i) + "]"));
    for (std::size_t k = 0; k < i; ++k) {
      if (c.variables[k].name == c.variables[i].name) {
        throw ValidationError("variables[" + std::to_string(i) +
                              "].name: duplicate name '" + c.variables[i].name + "'");
      }
    }
  }

  const Json* target = find(j, "target");
  if (!target) throw ValidationError("target: missing");
  c.target = target_from_json(*target, "target");

  const Json* granularity = find(j, "granularity");
  if (!granularity) throw ValidationError("granularity: missing");
  c.granularity = positive_number(*granularity, "granularity");

  const Json* model = find(j, "model");
  if (!model) throw ValidationError("model: missing");
  c.model = parse_model(*model, "model");
  if (c.model.expr) {
    // Parse now so syntax errors surface as config errors.
    try {
      Expression::parse(*c.model.expr, c.variables);
    } catch (const ValidationError& e) {
      throw ValidationError(std::string("model.expr: ") + e.what());
    }
  }

  if (const Json* m = find(j, "margin")) {
    c.margin = number_from_json(*m, "margin");
    if (!(c.margin >= 0) || std::isinf(c.margin)) {
      throw ValidationError("margin: must be a finite number >= 0");
    }
  }
  if (const Json* s = find(j, "margin_side")) {
    const std::string side = s->is_string() ? s->get<std::string>() : "";
    if (side == "both") c.margin_side = MarginSide::kBoth;
    else if (side == "upper") c.margin_side = MarginSide::kUpper;
    else if (side == "lower") c.margin_side = MarginSide::kLower;
    else throw ValidationError("margin_side: expected \"both\", \"upper\" or \"lower\"");
  }
  try {
    c.carving_target();
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("margin: ") + e.what());
  }
  if (const Json* s = find(j, "seed")) c.seed = unsigned_integer(*s, "seed");
  if (const Json* t = find(j, "test_size")) {
    c.test_size = unsigned_integer(*t, "test_size");
    if (c.test_size == 0) throw ValidationError("test_size: must be at least 1");
  }
  if (const Json* g = find(j, "grid_cap")) {
    c.grid_cap = unsigned_integer(*g, "grid_cap");
    if (c.grid_cap == 0) throw ValidationError("grid_cap: must be at least 1");
  }
  if (const Json* d = find(j, "inner_delta")) {
    c.inner_delta = positive_number(*d, "inner_delta");
  }
  if (const Json* s = find(j, "sweep")) {
    c.sweep = parse_sweep(*s);
    for (std::size_t i = 0; i < c.sweep.functions.size(); ++i) {
      const ModelSpec& ms = c.sweep.functions[i].model;
      if (!ms.expr) continue;
      try {
        Expression::parse(*ms.expr, c.variables);
      } catch (const ValidationError& e) {
        throw ValidationError("sweep.functions[" + std::to_string(i) + "]: " +
                              e.what());
      }
    }
  }
  return c;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(path.string() + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(path.string() + ": invalid JSON: " + e.what());
  }
}

ProblemConfig load_config(const std::filesystem::path& path) {
  return parse_config(read_json_file(path));
}

std::shared_ptr<OutputModel> make_model(const ModelSpec& spec,
                                        const std::vector<VariableSpec>& variables) {
  if (spec.expr) return std::make_shared<ExpressionModel>(*spec.expr, variables);
  return std::make_shared<ExternalModel>(spec.command, variables.size(),
                                         spec.timeout);
}

std::vector<NamedModel> sweep_models(const ProblemConfig& config) {
  std::vector<NamedModel> out;
  if (config.sweep.functions.empty()) {
    out.push_back({"model", make_model(config.model, config.variables)});
    return out;
  }
  for (const SweepFunction& f : config.sweep.functions) {
    out.push_back({f.id, make_model(f.model, config.variables)});
  }
  return out;
}

}  // namespace posdom
