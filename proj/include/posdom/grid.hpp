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

#ifndef POSDOM_GRID_HPP_
#define POSDOM_GRID_HPP_

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "posdom/core.hpp"
#include "posdom/parallel.hpp"

namespace posdom {

inline constexpr std::size_t kDefaultGridCap = 50'000'000;

struct GridSpec {
  // Throws ValidationError unless delta > 0 and there is at least one
  // variable.
  GridSpec(std::vector<VariableSpec> variables, double delta);

  std::vector<VariableSpec> variables;
  double delta;
};

// Row-major matrix of points, one row per point.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::size_t dim) : dim_(dim) {}
  PointSet(std::size_t dim, std::vector<double> coords);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept {
    return dim_ == 0 ? 0 : coords_.size() / dim_;
  }
  bool empty() const noexcept { return coords_.empty(); }

  std::span<const double> operator[](std::size_t i) const noexcept {
    return {coords_.data() + i * dim_, dim_};
  }
  void push_back(std::span<const double> point);
  void reserve(std::size_t n) { coords_.reserve(n * dim_); }

  const std::vector<double>& coords() const noexcept { return coords_; }

 private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
};

// Synthetic values of one variable: a, every a + n*delta below b, and b.
// Interior values are a + n*delta rounded to 15 significant digits of the
// axis scale max(|a|, |b|), so decimal steps land on decimal grid lines; a
// value within delta*1e-9 of b is merged into b.
std::vector<double> axis_values(const VariableSpec& v, double delta);

// Number of points build_grid would produce, saturating at SIZE_MAX.
std::size_t grid_size(const GridSpec& spec);

// Row-major cartesian product of the axis values (last variable fastest).
// Throws GridTooLarge above `cap` points.
PointSet build_grid(const GridSpec& spec, std::size_t cap = kDefaultGridCap);

struct LabeledDataset {
  PointSet points;
  std::vector<double> outputs;
  std::vector<Label> labels;

  std::size_t size() const noexcept { return labels.size(); }
  std::size_t count(Label l) const noexcept;
};

// Labels each point Inside iff the model output is inside the target.
// Non-finite outputs are Outside. Runs on `jobs` workers when the model is
// concurrency-safe and serially otherwise.
LabeledDataset label_dataset(const PointSet& points, OutputModel& model,
                             const TargetRange& target, Jobs jobs = {});

// CSV with header x1..xm (or variable names), y, label.
void write_csv(std::ostream& out, const LabeledDataset& data,
               const std::vector<VariableSpec>& variables);

}  // namespace posdom

#endif  // POSDOM_GRID_HPP_
