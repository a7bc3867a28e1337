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

#ifndef POSDOM_CARVE_HPP_
#define POSDOM_CARVE_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "posdom/core.hpp"
#include "posdom/grid.hpp"
#include "posdom/parallel.hpp"
#include "posdom/tree.hpp"

namespace posdom {

// Turns every root-to-leaf path ending in an Inside leaf into a box. A left
// branch at (f, t) bounds dimension f by t from above (closed), a right
// branch bounds it from below (open); unconstrained sides keep the closed
// initial range. Box membership therefore matches tree routing exactly
// inside the initial ranges.
ApproxPositiveDomain extract_boxes(const DecisionTree& tree,
                                   const std::vector<VariableSpec>& variables,
                                   const TargetRange& target,
                                   double granularity);

struct RefineStats {
  std::size_t kept = 0;
  std::size_t dropped = 0;
};

// Keeps the boxes whose inner grid (granularity inner_delta over the box
// closure, restricted to points the box actually contains) maps entirely
// into the target. A box with no admissible inner grid point along some axis
// uses that interval's midpoint instead. Evaluates the model, not the tree.
// Passing the test does not prove containment for off-grid points.
ApproxPositiveDomain refine(const ApproxPositiveDomain& apd, OutputModel& model,
                            const TargetRange& target, double inner_delta,
                            Jobs jobs = {}, RefineStats* stats = nullptr);

// Default inner granularity: a quarter of the carving granularity.
inline double default_inner_delta(const ApproxPositiveDomain& apd) {
  return apd.granularity() / 4;
}

struct CarveOptions {
  std::size_t grid_cap = kDefaultGridCap;
  Jobs jobs{};
};

struct CarveResult {
  LabeledDataset dataset;
  DecisionTree tree;
  ApproxPositiveDomain apd;
};

// Grid -> labels -> tree -> boxes.
CarveResult carve(const std::vector<VariableSpec>& variables, OutputModel& model,
                  const TargetRange& target, double granularity,
                  const CarveOptions& options = {});

}  // namespace posdom

#endif  // POSDOM_CARVE_HPP_
