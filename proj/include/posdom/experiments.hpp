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

#ifndef POSDOM_EXPERIMENTS_HPP_
#define POSDOM_EXPERIMENTS_HPP_

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "posdom/core.hpp"
#include "posdom/eval.hpp"
#include "posdom/grid.hpp"
#include "posdom/parallel.hpp"
#include "posdom/rng.hpp"

namespace posdom {

// base(x) + sigma * z, with z the k-th standard normal of a counter stream
// and k the number of previous calls. Deterministic for a fixed seed and
// call sequence, hence not concurrency-safe.
class NoisyOutputModel final : public OutputModel {
 public:
  NoisyOutputModel(std::shared_ptr<OutputModel> base, double sigma,
                   std::uint64_t seed);

  std::size_t arity() const override { return base_->arity(); }
  double evaluate(std::span<const double> point) override;

  double sigma() const noexcept { return sigma_; }

 private:
  std::shared_ptr<OutputModel> base_;
  double sigma_;
  CounterRng rng_;
  std::uint64_t calls_ = 0;
};

enum class ExperimentKind { kGranularity, kNoisyOutput, kNoisyInput };

std::string_view to_string(ExperimentKind kind) noexcept;
// "granularity", "noisy-output", "noisy-input"
ExperimentKind parse_experiment(std::string_view name);

struct NamedModel {
  std::string id;
  std::shared_ptr<OutputModel> model;
};

// The four benchmark functions over x1, x2 in [-1, 1].
std::vector<VariableSpec> benchmark_variables();
std::vector<NamedModel> benchmark_models();

inline const std::vector<double> kDefaultDeltas{0.05, 0.1, 0.2, 0.275, 0.4, 0.7};
inline const std::vector<double> kDefaultSigmas{0, 0.05, 0.1, 0.2};

// Test-set seeds: derive_seed(master, {"fold", k}) for k < folds.
std::vector<std::uint64_t> fold_seeds(std::uint64_t master, std::size_t folds);

struct ExperimentConfig {
  std::vector<VariableSpec> variables;
  TargetRange target{Interval::closed(0, 1)};
  std::vector<NamedModel> functions;
  std::vector<double> deltas = kDefaultDeltas;
  std::vector<double> sigmas = kDefaultSigmas;
  std::vector<std::uint64_t> seeds;
  std::size_t test_size = 10'000;
  // Also refine each APD (with the labelling model) before evaluating.
  bool refine = false;
  std::optional<double> inner_delta;
  std::size_t grid_cap = kDefaultGridCap;
  Jobs jobs{};
};

struct ExperimentResult {
  std::string function;
  double delta = 0;
  double sigma = 0;
  ExperimentKind experiment = ExperimentKind::kGranularity;
  std::vector<std::uint64_t> seeds;
  std::vector<EvalReport> reports;  // one per seed

  std::optional<double> mean_tpr;   // over defined folds
  double mean_accuracy = 0;
  std::size_t undefined_folds = 0;
  // Noiseless mean TPR minus this cell's mean TPR (same function and delta).
  std::optional<double> tpr_diff;
};

// Carve each function at each delta on [noiseless] grids and evaluate on
// one uniform test set per seed.
std::vector<ExperimentResult> run_granularity_sweep(const ExperimentConfig& config);

// Label (and refine) with NoisyOutputModel, evaluate against noiseless test
// outputs. Noise seed per (seed, function, delta, sigma).
std::vector<ExperimentResult> run_noisy_output(const ExperimentConfig& config);

// Noiseless APD; test outputs computed at input + sigma * z per coordinate,
// contingency table built on the noiseless inputs.
std::vector<ExperimentResult> run_noisy_inputs(const ExperimentConfig& config);

std::vector<ExperimentResult> run_experiment(ExperimentKind kind,
                                             const ExperimentConfig& config);

// function,delta,sigma,experiment,seed,tp,fp,fn,tn,tpr,accuracy
void write_cells_csv(std::ostream& out,
                     const std::vector<ExperimentResult>& results);
// function,delta,sigma,experiment,mean_tpr,mean_accuracy,tpr_diff,undefined_folds
void write_aggregate_csv(std::ostream& out,
                         const std::vector<ExperimentResult>& results);

}  // namespace posdom

#endif  // POSDOM_EXPERIMENTS_HPP_
