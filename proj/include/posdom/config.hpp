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

#ifndef POSDOM_CONFIG_HPP_
#define POSDOM_CONFIG_HPP_

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "posdom/core.hpp"
#include "posdom/experiments.hpp"
#include "posdom/grid.hpp"
#include "posdom/json_io.hpp"

namespace posdom {

struct ModelSpec {
  // Exactly one of expr / command is set.
  std::optional<std::string> expr;
  std::vector<std::string> command;
  std::chrono::milliseconds timeout{10'000};
};

struct SweepFunction {
  std::string id;
  ModelSpec model;
};

struct SweepSpec {
  std::vector<SweepFunction> functions;  // empty: the problem's own model
  std::vector<double> deltas = kDefaultDeltas;
  std::vector<double> sigmas = kDefaultSigmas;
  std::size_t folds = 5;
  bool refine = false;
};

// A carving problem as read from a JSON config file:
//
//   {
//     "variables": [{"name": "x1", "lo": -1, "hi": 1}, ...],
//     "target": [{"lo": 0, "hi": 1, "lo_closed": true, "hi_closed": true}],
//     "granularity": 0.2,
//     "model": {"expr": "x1 + x2"}  or  {"command": ["prog", "arg"]},
//     "margin": 0, "margin_side": "both" | "upper" | "lower",
//     "seed": 1, "test_size": 10000, "grid_cap": 50000000,
//     "inner_delta": 0.05,
//     "sweep": {"functions": ["linear", {"id": "f", "expr": "..."}],
//               "deltas": [...], "sigmas": [...], "folds": 5,
//               "refine": false}
//   }
//
// Every field except variables, target, granularity and model is optional.
struct ProblemConfig {
  std::vector<VariableSpec> variables;
  TargetRange target{Interval::closed(0, 1)};
  double granularity = 0;
  ModelSpec model;
  double margin = 0;
  MarginSide margin_side = MarginSide::kBoth;
  std::uint64_t seed = 1;
  std::size_t test_size = 10'000;
  std::size_t grid_cap = kDefaultGridCap;
  std::optional<double> inner_delta;
  SweepSpec sweep;

  // Target handed to carving and refinement: the target shrunk by the margin.
  TargetRange carving_target() const;
};

// Throws ValidationError naming the offending field.
ProblemConfig parse_config(const Json& j);
ProblemConfig load_config(const std::filesystem::path& path);

std::shared_ptr<OutputModel> make_model(const ModelSpec& spec,
                                        const std::vector<VariableSpec>& variables);

// Functions of the sweep section, or the problem model under id "model".
std::vector<NamedModel> sweep_models(const ProblemConfig& config);

Json read_json_file(const std::filesystem::path& path);

}  // namespace posdom

#endif  // POSDOM_CONFIG_HPP_
