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

#ifndef POSDOM_EVAL_HPP_
#define POSDOM_EVAL_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "posdom/carve.hpp"
#include "posdom/core.hpp"
#include "posdom/grid.hpp"
#include "posdom/parallel.hpp"

namespace posdom {

// Contingency table of an APD on a test set.
//
//                     OUTPUT Inside   OUTPUT Outside
//   INPUT Inside      tp              fp
//   INPUT Outside     fn              tn
struct EvalReport {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;

  std::size_t total() const noexcept { return tp + fp + fn + tn; }
  // tp / (tp + fp); empty when the APD accepted no test point.
  std::optional<double> tpr() const noexcept;
  double accuracy() const noexcept;

  // The 2x2 table followed by tpr and accuracy lines.
  std::string table() const;

  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

struct TestSet {
  PointSet points;
  std::vector<double> outputs;
  std::uint64_t seed = 0;

  std::size_t size() const noexcept { return outputs.size(); }
};

// Coordinate j of point k is uniform(seed stream, k*m + j) scaled onto the
// variable's range.
PointSet sample_uniform(const std::vector<VariableSpec>& variables,
                        std::size_t n, std::uint64_t seed);

// n uniform points over the initial ranges with model outputs.
TestSet generate_test_set(const std::vector<VariableSpec>& variables,
                          std::size_t n, OutputModel& model, std::uint64_t seed,
                          Jobs jobs = {});

// INPUT Inside = apd contains the point; OUTPUT Inside = target contains the
// output (non-finite outputs are Outside).
EvalReport evaluate(const ApproxPositiveDomain& apd, const TestSet& test,
                    const TargetRange& target, Jobs jobs = {});

struct GranularityChoice {
  double delta;
  // Mean TPR per candidate, in candidate order; nullopt if every fold was
  // undefined.
  std::vector<std::pair<double, std::optional<double>>> mean_tprs;
};

// Mean of the defined TPRs; nullopt if none is defined.
std::optional<double> mean_tpr(const std::vector<EvalReport>& reports);

// For each candidate (largest first) carves at that granularity and
// evaluates on one test set per seed. Returns the largest candidate whose
// mean TPR reaches `tpr_threshold`; throws NoQualifyingGranularity
// otherwise.
GranularityChoice select_granularity(std::vector<double> candidates,
                                     const std::vector<VariableSpec>& variables,
                                     OutputModel& model,
                                     const TargetRange& target,
                                     double tpr_threshold,
                                     const std::vector<std::uint64_t>& seeds,
                                     std::size_t test_size = 10'000,
                                     const CarveOptions& options = {});

}  // namespace posdom

#endif  // POSDOM_EVAL_HPP_
