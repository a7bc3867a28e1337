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

#include "posdom/core.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "posdom/error.hpp"

namespace posdom {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, end);
}

Interval::Interval(double lo, double hi, bool lo_closed, bool hi_closed)
    : lo_(lo), hi_(hi), lo_closed_(lo_closed), hi_closed_(hi_closed) {
  if (std::isnan(lo) || std::isnan(hi)) {
    throw ValidationError("interval endpoint is NaN");
  }
  if (lo == kInf || hi == -kInf) {
    throw ValidationError("interval [" + format_number(lo) + ", " +
                          format_number(hi) + "] is empty");
  }
  // Infinite endpoints are never members.
  if (std::isinf(lo)) lo_closed_ = false;
  if (std::isinf(hi)) hi_closed_ = false;
  if (lo > hi || (lo == hi && !(lo_closed_ && hi_closed_))) {
    throw ValidationError("interval " + to_string() + " is empty");
  }
}

bool Interval::contains(const Interval& other) const noexcept {
  const bool lo_ok =
      other.lo_ > lo_ || (other.lo_ == lo_ && (lo_closed_ || !other.lo_closed_));
  const bool hi_ok =
      other.hi_ < hi_ || (other.hi_ == hi_ && (hi_closed_ || !other.hi_closed_));
  return lo_ok && hi_ok;
}

bool Interval::overlaps(const Interval& other) const noexcept {
  double lo = lo_;
  bool lo_closed = lo_closed_;
  if (other.lo_ > lo) {
    lo = other.lo_;
    lo_closed = other.lo_closed_;
  } else if (other.lo_ == lo) {
    lo_closed = lo_closed && other.lo_closed_;
  }
  double hi = hi_;
  bool hi_closed = hi_closed_;
  if (other.hi_ < hi) {
    hi = other.hi_;
    hi_closed = other.hi_closed_;
  } else if (other.hi_ == hi) {
    hi_closed = hi_closed && other.hi_closed_;
  }
  return lo < hi || (lo == hi && lo_closed && hi_closed);
}

std::string Interval::to_string() const {
  std::string s;
  s += lo_closed_ ? '[' : '(';
  s += format_number(lo_);
  s += ", ";
  s += format_number(hi_);
  s += hi_closed_ ? ']' : ')';
  return s;
}

VariableSpec::VariableSpec(std::string name_, double lo_, double hi_)
    : name(std::move(name_)), lo(lo_), hi(hi_) {
  if (name.empty()) throw ValidationError("variable name is empty");
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw ValidationError("variable '" + name + "' has a non-finite range");
  }
  if (!(lo < hi)) {
    throw ValidationError("variable '" + name + "' needs lo < hi, got [" +
                          format_number(lo) + ", " + format_number(hi) + "]");
  }
}

std::string_view to_string(Label label) noexcept {
  return label == Label::kInside ? "Inside" : "Outside";
}

Label parse_label(std::string_view text) {
  if (text == "Inside") return Label::kInside;
  if (text == "Outside") return Label::kOutside;
  throw ValidationError("unknown label '" + std::string(text) + "'");
}

TargetRange::TargetRange(std::vector<Interval> intervals) {
  if (intervals.empty()) throw EmptyTarget("target range has no intervals");
  std::sort(intervals.begin(), intervals.end(),
            [](const Interval& a, const Interval& b) {
              if (a.lo() != b.lo()) return a.lo() < b.lo();
              return a.lo_closed() && !b.lo_closed();
            });
  for (const Interval& next : intervals) {
    if (intervals_.empty()) {
      intervals_.push_back(next);
      continue;
    }
    const Interval& last = intervals_.back();
    // Sharing one endpoint (closed on either side) is touching, not overlap.
    if (last.hi() == next.lo() && next.lo() < next.hi() &&
        (last.hi_closed() || next.lo_closed())) {
      intervals_.back() =
          Interval(last.lo(), next.hi(), last.lo_closed(), next.hi_closed());
    } else if (last.overlaps(next)) {
      throw ValidationError("target intervals " + last.to_string() + " and " +
                            next.to_string() + " overlap");
    } else {
      intervals_.push_back(next);
    }
  }
}

bool TargetRange::contains(double y) const noexcept {
  for (const Interval& iv : intervals_) {
    if (iv.contains(y)) return true;
  }
  return false;
}

std::string TargetRange::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    if (i) s += " ∪ ";
    s += intervals_[i].to_string();
  }
  return s;
}

TargetRange shrink_target(const TargetRange& t, double margin,
                          MarginSide side) {
  if (!(margin >= 0) || std::isinf(margin)) {
    throw ValidationError("margin must be a finite nonnegative number");
  }
  const bool lower = side != MarginSide::kUpper;
  const bool upper = side != MarginSide::kLower;
  std::vector<Interval> kept;
  for (const Interval& iv : t.intervals()) {
    double lo = iv.lo();
    double hi = iv.hi();
    if (lower && std::isfinite(lo)) lo += margin;
    if (upper && std::isfinite(hi)) hi -= margin;
    if (lo < hi || (lo == hi && iv.lo_closed() && iv.hi_closed())) {
      kept.emplace_back(lo, hi, iv.lo_closed(), iv.hi_closed());
    }
  }
  if (kept.empty()) {
    throw EmptyTarget("shrinking " + t.to_string() + " by " +
                      format_number(margin) + " leaves an empty target");
  }
  return TargetRange(std::move(kept));
}

Box::Box(std::vector<Interval> intervals) : intervals_(std::move(intervals)) {
  if (intervals_.empty()) throw ValidationError("box has no dimensions");
}

bool Box::contains(std::span<const double> point) const noexcept {
  if (point.size() != intervals_.size()) return false;
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    if (!intervals_[i].contains(point[i])) return false;
  }
  return true;
}

bool Box::disjoint_from(const Box& other) const noexcept {
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    if (!intervals_[i].overlaps(other.intervals_[i])) return true;
  }
  return false;
}

std::string Box::to_string(const std::vector<VariableSpec>& variables) const {
  std::string s;
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    if (i) s += ", ";
    s += i < variables.size() ? variables[i].name : "x" + std::to_string(i + 1);
    s += " ∈ ";
    s += intervals_[i].to_string();
  }
  return s;
}

ApproxPositiveDomain::ApproxPositiveDomain(std::vector<VariableSpec> variables,
                                           TargetRange target,
                                           double granularity, bool refined,
                                           std::vector<Box> boxes)
    : variables_(std::move(variables)),
      target_(std::move(target)),
      granularity_(granularity),
      refined_(refined),
      boxes_(std::move(boxes)) {
  if (variables_.empty()) throw ValidationError("APD has no variables");
  if (!(granularity_ > 0) || std::isinf(granularity_)) {
    throw ValidationError("APD granularity must be positive");
  }
  for (std::size_t b = 0; b < boxes_.size(); ++b) {
    const Box& box = boxes_[b];
    if (box.dim() != variables_.size()) {
      throw ValidationError("box " + std::to_string(b) + " has dimension " +
                            std::to_string(box.dim()) + ", expected " +
                            std::to_string(variables_.size()));
    }
    for (std::size_t i = 0; i < box.dim(); ++i) {
      const VariableSpec& v = variables_[i];
      if (!Interval::closed(v.lo, v.hi).contains(box[i])) {
        throw ValidationError("box " + std::to_string(b) + " leaves the range of '" +
                              v.name + "'");
      }
    }
    for (std::size_t other = 0; other < b; ++other) {
      if (!box.disjoint_from(boxes_[other])) {
        throw ValidationError("boxes " + std::to_string(other) + " and " +
                              std::to_string(b) + " overlap");
      }
    }
  }
}

bool ApproxPositiveDomain::contains(std::span<const double> point) const {
  if (point.size() != variables_.size()) {
    throw ArityMismatch("point has " + std::to_string(point.size()) +
                        " coordinates, APD has " +
                        std::to_string(variables_.size()) + " variables");
  }
  for (const Box& box : boxes_) {
    if (box.contains(point)) return true;
  }
  return false;
}

std::string ApproxPositiveDomain::report() const {
  std::ostringstream out;
  for (const Box& box : boxes_) out << box.to_string(variables_) << '\n';
  return out.str();
}

}  // namespace posdom
