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

#include "posdom/carve.hpp"

#include <cmath>

#include "posdom/error.hpp"

namespace posdom {

namespace {

struct Bound {
  double lo;
  double hi;
  bool lo_closed;
  bool hi_closed;
};

void collect(const DecisionTree& tree, std::uint32_t id,
             std::vector<Bound>& bounds, std::vector<Box>& out) {
  const TreeNode& n = tree.node(id);
  if (n.is_leaf()) {
    if (n.label != Label::kInside) return;
    std::vector<Interval> intervals;
    intervals.reserve(bounds.size());
    for (const Bound& b : bounds) {
      intervals.emplace_back(b.lo, b.hi, b.lo_closed, b.hi_closed);
    }
    out.emplace_back(std::move(intervals));
    return;
  }
  Bound& b = bounds[static_cast<std::size_t>(n.feature)];
  const Bound saved = b;
  if (n.threshold < b.hi) {
    b.hi = n.threshold;
    b.hi_closed = true;
  }
  collect(tree, n.left, bounds, out);
  b = saved;
  if (n.threshold >= b.lo) {
    b.lo = n.threshold;
    b.lo_closed = false;
  }
  collect(tree, n.right, bounds, out);
  b = saved;
}

}  // namespace

ApproxPositiveDomain extract_boxes(const DecisionTree& tree,
                                   const std::vector<VariableSpec>& variables,
                                   const TargetRange& target,
                                   double granularity) {
  if (tree.dim() != variables.size()) {
    throw ArityMismatch("tree has " + std::to_string(tree.dim()) +
                        " features but " + std::to_string(variables.size()) +
                        " variables were given");
  }
  std::vector<Bound> bounds;
  for (const VariableSpec& v : variables) bounds.push_back({v.lo, v.hi, true, true});
  std::vector<Box> boxes;
  collect(tree, 0, bounds, boxes);
  return ApproxPositiveDomain(variables, target, granularity, false,
                              std::move(boxes));
}

namespace {

bool box_maps_inside(const Box& box, OutputModel& model,
                     const TargetRange& target, double inner_delta) {
  std::vector<std::vector<double>> axes;
  for (std::size_t j = 0; j < box.dim(); ++j) {
    const Interval& iv = box[j];
    std::vector<double> admissible;
    if (iv.lo() == iv.hi()) {
      admissible.push_back(iv.lo());
    } else {
      for (double x : axis_values(VariableSpec("axis", iv.lo(), iv.hi()),
                                  inner_delta)) {
        if (iv.contains(x)) admissible.push_back(x);
      }
      if (admissible.empty()) admissible.push_back(iv.lo() + (iv.hi() - iv.lo()) / 2);
    }
    axes.push_back(std::move(admissible));
  }
  const std::size_t m = axes.size();
  std::vector<std::size_t> idx(m, 0);
  std::vector<double> point(m);
  for (;;) {
    for (std::size_t j = 0; j < m; ++j) point[j] = axes[j][idx[j]];
    const double y = model.evaluate(point);
    if (!std::isfinite(y) || !target.contains(y)) return false;
    std::size_t j = m;
    while (j-- > 0) {
      if (++idx[j] < axes[j].size()) break;
      idx[j] = 0;
    }
    if (j == static_cast<std::size_t>(-1)) return true;
  }
}

}  // namespace

ApproxPositiveDomain refine(const ApproxPositiveDomain& apd, OutputModel& model,
                            const TargetRange& target, double inner_delta,
                            Jobs jobs, RefineStats* stats) {
  if (!(inner_delta > 0) || std::isinf(inner_delta)) {
    throw ValidationError("inner granularity must be a positive finite number");
  }
  if (model.arity() != apd.dim()) {
    throw ArityMismatch("model arity " + std::to_string(model.arity()) +
                        " does not match APD dimension " +
                        std::to_string(apd.dim()));
  }
  const auto& boxes = apd.boxes();
  std::vector<char> keep(boxes.size(), 0);
  parallel_for(boxes.size(), model.concurrent_safe() ? jobs : Jobs{1},
               [&](std::size_t b) {
                 keep[b] = box_maps_inside(boxes[b], model, target, inner_delta);
               });
  std::vector<Box> kept;
  for (std::size_t b = 0; b < boxes.size(); ++b) {
    if (keep[b]) kept.push_back(boxes[b]);
  }
  if (stats) {
    stats->kept = kept.size();
    stats->dropped = boxes.size() - kept.size();
  }
  return ApproxPositiveDomain(apd.variables(), apd.target(), apd.granularity(),
                              true, std::move(kept));
}

CarveResult carve(const std::vector<VariableSpec>& variables, OutputModel& model,
                  const TargetRange& target, double granularity,
                  const CarveOptions& options) {
  const GridSpec spec(variables, granularity);
  LabeledDataset data =
      label_dataset(build_grid(spec, options.grid_cap), model, target,
                    options.jobs);
  DecisionTree tree = train(data);
  ApproxPositiveDomain apd = extract_boxes(tree, variables, target, granularity);
  return {std::move(data), std::move(tree), std::move(apd)};
}

}  // namespace posdom
