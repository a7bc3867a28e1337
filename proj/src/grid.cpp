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

#include "posdom/grid.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cmath>
#include <limits>
#include <ostream>

#include "posdom/error.hpp"

namespace posdom {

namespace {

// Rounds x to 15 significant digits relative to `scale`, the largest
// magnitude on the axis, so values near zero snap to zero as well.
double snap_decimal(double x, double scale) {
  const int exponent = scale > 0 ? static_cast<int>(std::floor(std::log10(scale))) : 0;
  const int decimals = 14 - exponent;
  if (decimals < 0 || decimals > 330) return x;
  char buf[400];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x,
                                 std::chars_format::fixed, decimals);
  if (ec != std::errc()) return x;
  double snapped = x;
  std::from_chars(buf, end, snapped);
  return snapped == 0.0 ? 0.0 : snapped;
}

}  // namespace

GridSpec::GridSpec(std::vector<VariableSpec> variables_, double delta_)
    : variables(std::move(variables_)), delta(delta_) {
  if (variables.empty()) throw ValidationError("grid needs at least one variable");
  if (!(delta > 0) || std::isinf(delta)) {
    throw ValidationError("granularity must be a positive finite number, got " +
                          format_number(delta));
  }
}

PointSet::PointSet(std::size_t dim, std::vector<double> coords)
    : dim_(dim), coords_(std::move(coords)) {
  if (dim_ == 0 || coords_.size() % dim_ != 0) {
    throw ValidationError("point coordinates do not divide into rows of " +
                          std::to_string(dim_));
  }
}

void PointSet::push_back(std::span<const double> point) {
  if (point.size() != dim_) {
    throw ArityMismatch("point has " + std::to_string(point.size()) +
                        " coordinates, expected " + std::to_string(dim_));
  }
  coords_.insert(coords_.end(), point.begin(), point.end());
}

std::vector<double> axis_values(const VariableSpec& v, double delta) {
  if (!(delta > 0) || std::isinf(delta)) {
    throw ValidationError("granularity must be a positive finite number");
  }
  const double tol = delta * 1e-9;
  const double scale = std::max(std::fabs(v.lo), std::fabs(v.hi));
  std::vector<double> values{v.lo};
  for (std::uint64_t n = 1;; ++n) {
    const double x = snap_decimal(v.lo + static_cast<double>(n) * delta, scale);
    if (x >= v.hi - tol) break;
    if (x > values.back()) values.push_back(x);
  }
  values.push_back(v.hi);
  return values;
}

std::size_t grid_size(const GridSpec& spec) {
  std::size_t total = 1;
  for (const VariableSpec& v : spec.variables) {
    if ((v.hi - v.lo) / spec.delta > 1e9) {
      return std::numeric_limits<std::size_t>::max();
    }
    const std::size_t n = axis_values(v, spec.delta).size();
    if (n != 0 && total > std::numeric_limits<std::size_t>::max() / n) {
      return std::numeric_limits<std::size_t>::max();
    }
    total *= n;
  }
  return total;
}

PointSet build_grid(const GridSpec& spec, std::size_t cap) {
  std::vector<std::vector<double>> axes;
  std::size_t total = 1;
  for (const VariableSpec& v : spec.variables) {
    if ((v.hi - v.lo) / spec.delta > static_cast<double>(cap)) {
      throw GridTooLarge("variable '" + v.name + "' alone exceeds the grid cap of " +
                         std::to_string(cap) + " points");
    }
    axes.push_back(axis_values(v, spec.delta));
    const std::size_t n = axes.back().size();
    if (total > cap / n) {
      throw GridTooLarge("grid exceeds the cap of " + std::to_string(cap) +
                         " points");
    }
    total *= n;
  }
  const std::size_t m = axes.size();
  std::vector<double> coords(total * m);
  // Odometer over the axes, last axis fastest.
  std::vector<std::size_t> idx(m, 0);
  for (std::size_t p = 0; p < total; ++p) {
    for (std::size_t j = 0; j < m; ++j) coords[p * m + j] = axes[j][idx[j]];
    for (std::size_t j = m; j-- > 0;) {
      if (++idx[j] < axes[j].size()) break;
      idx[j] = 0;
    }
  }
  return PointSet(m, std::move(coords));
}

std::size_t LabeledDataset::count(Label l) const noexcept {
  std::size_t n = 0;
  for (Label x : labels) n += x == l;
  return n;
}

LabeledDataset label_dataset(const PointSet& points, OutputModel& model,
                             const TargetRange& target, Jobs jobs) {
  if (model.arity() != points.dim()) {
    throw ArityMismatch("model arity " + std::to_string(model.arity()) +
                        " does not match grid dimension " +
                        std::to_string(points.dim()));
  }
  LabeledDataset data;
  data.points = points;
  data.outputs.resize(points.size());
  data.labels.resize(points.size());
  auto label_one = [&](std::size_t i) {
    const double y = model.evaluate(points[i]);
    data.outputs[i] = y;
    data.labels[i] = std::isfinite(y) && target.contains(y) ? Label::kInside
                                                            : Label::kOutside;
  };
  parallel_for(points.size(), model.concurrent_safe() ? jobs : Jobs{1},
               label_one);
  return data;
}

void write_csv(std::ostream& out, const LabeledDataset& data,
               const std::vector<VariableSpec>& variables) {
  const std::size_t m = data.points.dim();
  for (std::size_t j = 0; j < m; ++j) {
    out << (j < variables.size() ? variables[j].name : "x" + std::to_string(j + 1))
        << ',';
  }
  out << "y,label\n";
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto p = data.points[i];
    for (std::size_t j = 0; j < m; ++j) out << format_number(p[j]) << ',';
    out << format_number(data.outputs[i]) << ',' << to_string(data.labels[i])
        << '\n';
  }
}

}  // namespace posdom
