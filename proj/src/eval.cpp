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

#include "posdom/eval.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <sstream>

#include "posdom/error.hpp"
#include "posdom/rng.hpp"

namespace posdom {

std::optional<double> EvalReport::tpr() const noexcept {
  if (tp + fp == 0) return std::nullopt;
  return static_cast<double>(tp) / static_cast<double>(tp + fp);
}

double EvalReport::accuracy() const noexcept {
  if (total() == 0) return 0;
  return static_cast<double>(tp + tn) / static_cast<double>(total());
}

std::string EvalReport::table() const {
  std::ostringstream out;
  const int w = static_cast<int>(
      std::max<std::size_t>(7, std::to_string(std::max({tp, fp, fn, tn})).size()));
  out << std::setw(15) << "" << " | OUTPUT" << '\n';
  out << std::setw(15) << "" << " | " << std::setw(w) << "Inside" << " | "
      << std::setw(w) << "Outside" << '\n';
  out << std::setw(15) << "INPUT Inside" << " | " << std::setw(w) << tp
      << " | " << std::setw(w) << fp << '\n';
  out << std::setw(15) << "INPUT Outside" << " | " << std::setw(w) << fn
      << " | " << std::setw(w) << tn << '\n';
  const auto rate = tpr();
  out << "tpr: " << (rate ? format_number(*rate) : std::string("undefined"))
      << '\n';
  out << "accuracy: " << format_number(accuracy()) << '\n';
  return out.str();
}

PointSet sample_uniform(const std::vector<VariableSpec>& variables,
                        std::size_t n, std::uint64_t seed) {
  const std::size_t m = variables.size();
  const CounterRng rng(seed);
  std::vector<double> coords(n * m);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < m; ++j) {
      const VariableSpec& v = variables[j];
      const double u = rng.uniform(k * m + j);
      coords[k * m + j] = v.lo + (v.hi - v.lo) * u;
    }
  }
  return PointSet(m, std::move(coords));
}

TestSet generate_test_set(const std::vector<VariableSpec>& variables,
                          std::size_t n, OutputModel& model, std::uint64_t seed,
                          Jobs jobs) {
  if (n == 0) throw ValidationError("test set size must be at least 1");
  if (variables.empty()) throw ValidationError("test set needs variables");
  if (model.arity() != variables.size()) {
    throw ArityMismatch("model arity " + std::to_string(model.arity()) +
                        " does not match " + std::to_string(variables.size()) +
                        " variables");
  }
  TestSet test;
  test.seed = seed;
  test.points = sample_uniform(variables, n, seed);
  test.outputs.resize(n);
  parallel_for(n, model.concurrent_safe() ? jobs : Jobs{1}, [&](std::size_t k) {
    test.outputs[k] = model.evaluate(test.points[k]);
  });
  return test;
}

EvalReport evaluate(const ApproxPositiveDomain& apd, const TestSet& test,
                    const TargetRange& target, Jobs jobs) {
  if (test.size() == 0) throw ValidationError("test set is empty");
  if (test.points.size() != test.outputs.size()) {
    throw ValidationError("test set has mismatched points and outputs");
  }
  if (test.points.dim() != apd.dim()) {
    throw ArityMismatch("test points have " + std::to_string(test.points.dim()) +
                        " coordinates, APD has " + std::to_string(apd.dim()));
  }
  // cell = 2*input_inside + output_inside
  std::vector<unsigned char> cell(test.size());
  parallel_for(test.size(), jobs, [&](std::size_t k) {
    const double y = test.outputs[k];
    const bool in = apd.contains(test.points[k]);
    const bool out = std::isfinite(y) && target.contains(y);
    cell[k] = static_cast<unsigned char>(2 * in + out);
  });
  EvalReport r;
  for (unsigned char c : cell) {
    switch (c) {
      case 3: ++r.tp; break;
      case 2: ++r.fp; break;
      case 1: ++r.fn; break;
      default: ++r.tn; break;
    }
  }
  return r;
}

std::optional<double> mean_tpr(const std::vector<EvalReport>& reports) {
  double sum = 0;
  std::size_t defined = 0;
  for (const EvalReport& r : reports) {
    if (const auto t = r.tpr()) {
      sum += *t;
      ++defined;
    }
  }
  if (defined == 0) return std::nullopt;
  return sum / static_cast<double>(defined);
}

GranularityChoice select_granularity(std::vector<double> candidates,
                                     const std::vector<VariableSpec>& variables,
                                     OutputModel& model,
                                     const TargetRange& target,
                                     double tpr_threshold,
                                     const std::vector<std::uint64_t>& seeds,
                                     std::size_t test_size,
                                     const CarveOptions& options) {
  if (candidates.empty()) throw ValidationError("no candidate granularities");
  if (seeds.empty()) throw ValidationError("no test-set seeds");
  std::sort(candidates.begin(), candidates.end(), std::greater<>());

  std::vector<TestSet> tests;
  for (std::uint64_t seed : seeds) {
    tests.push_back(
        generate_test_set(variables, test_size, model, seed, options.jobs));
  }
  GranularityChoice choice{0, {}};
  std::optional<double> chosen;
  for (double delta : candidates) {
    const CarveResult carved = carve(variables, model, target, delta, options);
    std::vector<EvalReport> reports;
    for (const TestSet& t : tests) {
      reports.push_back(evaluate(carved.apd, t, target, options.jobs));
    }
    const auto mean = mean_tpr(reports);
    choice.mean_tprs.emplace_back(delta, mean);
    if (mean && *mean >= tpr_threshold) {
      chosen = delta;
      break;
    }
  }
  if (!chosen) {
    std::vector<std::pair<double, double>> summary;
    std::string text = "no granularity reaches mean TPR " +
                       format_number(tpr_threshold) + ":";
    for (const auto& [delta, mean] : choice.mean_tprs) {
      summary.emplace_back(delta, mean ? *mean : std::nan(""));
      text += " delta=" + format_number(delta) + " tpr=" +
              (mean ? format_number(*mean) : std::string("undefined"));
    }
    throw NoQualifyingGranularity(text, std::move(summary));
  }
  choice.delta = *chosen;
  return choice;
}

}  // namespace posdom
