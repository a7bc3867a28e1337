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

#ifndef POSDOM_CORE_HPP_
#define POSDOM_CORE_HPP_

#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace posdom {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// One-dimensional range whose endpoints are independently open or closed.
// Endpoint comparisons are exact; any rounding is up to the caller.
class Interval {
 public:
  // Throws ValidationError if the interval would be empty.
  Interval(double lo, double hi, bool lo_closed = true, bool hi_closed = true);

  static Interval closed(double lo, double hi) { return {lo, hi, true, true}; }
  static Interval point(double x) { return {x, x, true, true}; }

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  bool lo_closed() const noexcept { return lo_closed_; }
  bool hi_closed() const noexcept { return hi_closed_; }

  bool contains(double x) const noexcept {
    return (x > lo_ || (lo_closed_ && x == lo_)) &&
           (x < hi_ || (hi_closed_ && x == hi_));
  }
  // True if every point of `other` is a point of this interval.
  bool contains(const Interval& other) const noexcept;
  bool overlaps(const Interval& other) const noexcept;

  // Bracket notation, e.g. "(0.1, 0.5]".
  std::string to_string() const;

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double lo_;
  double hi_;
  bool lo_closed_;
  bool hi_closed_;
};

struct VariableSpec {
  // Throws ValidationError unless lo < hi, both finite, name nonempty.
  VariableSpec(std::string name, double lo, double hi);

  std::string name;
  double lo;
  double hi;

  friend bool operator==(const VariableSpec&, const VariableSpec&) = default;
};

enum class Label : unsigned char { kOutside = 0, kInside = 1 };

std::string_view to_string(Label label) noexcept;
// Accepts exactly "Inside" / "Outside".
Label parse_label(std::string_view text);

enum class MarginSide { kBoth, kUpper, kLower };

// Union of pairwise disjoint intervals, sorted by lower endpoint. Touching
// intervals whose shared endpoint is closed on at least one side are merged.
class TargetRange {
 public:
  explicit TargetRange(std::vector<Interval> intervals);
  TargetRange(std::initializer_list<Interval> intervals)
      : TargetRange(std::vector<Interval>(intervals)) {}

  bool contains(double y) const noexcept;
  const std::vector<Interval>& intervals() const noexcept { return intervals_; }
  std::string to_string() const;

  friend bool operator==(const TargetRange&, const TargetRange&) = default;

 private:
  std::vector<Interval> intervals_;
};

inline bool target_contains(const TargetRange& t, double y) noexcept {
  return t.contains(y);
}

// Moves finite endpoints inward by `margin` on the chosen side(s); drops
// intervals that become empty. Throws EmptyTarget if nothing survives.
TargetRange shrink_target(const TargetRange& t, double margin,
                          MarginSide side = MarginSide::kBoth);

// Cartesian product of one interval per variable.
class Box {
 public:
  explicit Box(std::vector<Interval> intervals);

  std::size_t dim() const noexcept { return intervals_.size(); }
  const std::vector<Interval>& intervals() const noexcept { return intervals_; }
  const Interval& operator[](std::size_t i) const { return intervals_[i]; }

  bool contains(std::span<const double> point) const noexcept;
  bool disjoint_from(const Box& other) const noexcept;
  // e.g. "x1 ∈ (0.1, 0.5], x2 ∈ [-1, 0.3]"
  std::string to_string(const std::vector<VariableSpec>& variables) const;

  friend bool operator==(const Box&, const Box&) = default;

 private:
  std::vector<Interval> intervals_;
};

// Union of disjoint boxes approximating the positive domain, plus the
// parameters that produced it.
class ApproxPositiveDomain {
 public:
  // Validates box dimensions, containment in the initial ranges, and
  // pairwise disjointness.
  ApproxPositiveDomain(std::vector<VariableSpec> variables, TargetRange target,
                       double granularity, bool refined,
                       std::vector<Box> boxes);

  const std::vector<Box>& boxes() const noexcept { return boxes_; }
  const std::vector<VariableSpec>& variables() const noexcept {
    return variables_;
  }
  const TargetRange& target() const noexcept { return target_; }
  double granularity() const noexcept { return granularity_; }
  bool refined() const noexcept { return refined_; }
  std::size_t dim() const noexcept { return variables_.size(); }
  bool empty() const noexcept { return boxes_.empty(); }

  bool contains(std::span<const double> point) const;

  // One line per box.
  std::string report() const;

  friend bool operator==(const ApproxPositiveDomain&,
                         const ApproxPositiveDomain&) = default;

 private:
  std::vector<VariableSpec> variables_;
  TargetRange target_;
  double granularity_;
  bool refined_;
  std::vector<Box> boxes_;
};

inline bool apd_contains(const ApproxPositiveDomain& apd,
                         std::span<const double> point) {
  return apd.contains(point);
}

// A real-valued function of `arity()` reals: an expression, an external
// regression model, or a noise wrapper around either.
class OutputModel {
 public:
  virtual ~OutputModel() = default;

  virtual std::size_t arity() const = 0;
  virtual double evaluate(std::span<const double> point) = 0;
  // Whether evaluate() may be called from several threads at once.
  virtual bool concurrent_safe() const { return false; }
};

// Shortest decimal text that parses back to the same double.
std::string format_number(double x);

}  // namespace posdom

#endif  // POSDOM_CORE_HPP_
