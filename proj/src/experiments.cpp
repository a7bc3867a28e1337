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

#include "posdom/experiments.hpp"

#include <cmath>
#include <ostream>

#include "posdom/carve.hpp"
#include "posdom/error.hpp"
#include "posdom/expression.hpp"

namespace posdom {

NoisyOutputModel::NoisyOutputModel(std::shared_ptr<OutputModel> base,
                                   double sigma, std::uint64_t seed)
    : base_(std::move(base)), sigma_(sigma), rng_(seed) {
  if (!base_) throw ValidationError("noisy model needs a base model");
  if (!(sigma_ >= 0) || std::isinf(sigma_)) {
    throw ValidationError("noise standard deviation must be finite and >= 0");
  }
}

double NoisyOutputModel::evaluate(std::span<const double> point) {
  const double y = base_->evaluate(point);
  const std::uint64_t k = calls_++;
  if (sigma_ == 0) return y;
  return y + sigma_ * rng_.normal(k);
}

std::string_view to_string(ExperimentKind kind) noexcept {
  switch (kind) {
    case ExperimentKind::kGranularity: return "granularity";
    case ExperimentKind::kNoisyOutput: return "noisy-output";
    case ExperimentKind::kNoisyInput: return "noisy-input";
  }
  return "?";
}

ExperimentKind parse_experiment(std::string_view name) {
  for (ExperimentKind k : {ExperimentKind::kGranularity,
                           ExperimentKind::kNoisyOutput,
                           ExperimentKind::kNoisyInput}) {
    if (to_string(k) == name) return k;
  }
  throw ValidationError("unknown experiment '" + std::string(name) +
                        "' (expected granularity, noisy-output or noisy-input)");
}

std::vector<VariableSpec> benchmark_variables() {
  return {VariableSpec("x1", -1, 1), VariableSpec("x2", -1, 1)};
}

std::vector<NamedModel> benchmark_models() {
  const auto vars = benchmark_variables();
  std::vector<NamedModel> out;
  for (const Benchmark& b : benchmark_functions()) {
    out.push_back({b.id, std::make_shared<ExpressionModel>(b.source, vars)});
  }
  return out;
}

std::vector<std::uint64_t> fold_seeds(std::uint64_t master, std::size_t folds) {
  std::vector<std::uint64_t> seeds;
  for (std::size_t k = 0; k < folds; ++k) {
    seeds.push_back(derive_seed(master, {hash_text("fold"), k}));
  }
  return seeds;
}

namespace {

void validate(const ExperimentConfig& c, bool noisy) {
  if (c.variables.empty()) throw ValidationError("experiment has no variables");
  if (c.functions.empty()) throw ValidationError("experiment has no functions");
  if (c.deltas.empty()) throw ValidationError("experiment has no granularities");
  if (c.seeds.empty()) throw ValidationError("experiment has no test-set seeds");
  if (c.test_size == 0) throw ValidationError("test_size must be at least 1");
  for (double d : c.deltas) {
    if (!(d > 0) || std::isinf(d)) {
      throw ValidationError("granularity " + format_number(d) + " is not positive");
    }
  }
  if (noisy) {
    if (c.sigmas.empty()) throw ValidationError("experiment has no noise levels");
    for (double s : c.sigmas) {
      if (!(s >= 0) || std::isinf(s)) {
        throw ValidationError("noise level " + format_number(s) + " is negative");
      }
    }
  }
  for (const NamedModel& f : c.functions) {
    if (!f.model) throw ValidationError("function '" + f.id + "' has no model");
    if (f.model->arity() != c.variables.size()) {
      throw ArityMismatch("function '" + f.id + "' has arity " +
                          std::to_string(f.model->arity()) + ", expected " +
                          std::to_string(c.variables.size()));
    }
  }
}

bool all_concurrent_safe(const ExperimentConfig& c) {
  for (const NamedModel& f : c.functions) {
    if (!f.model->concurrent_safe()) return false;
  }
  return true;
}

// Work that runs inside a parallel cell uses one worker; serial models force
// one worker everywhere.
struct Plan {
  Jobs outer;
  Jobs inner{1};
};

Plan plan_for(const ExperimentConfig& c) {
  return all_concurrent_safe(c) ? Plan{c.jobs, Jobs{1}} : Plan{Jobs{1}, Jobs{1}};
}

ApproxPositiveDomain carve_cell(const ExperimentConfig& c, OutputModel& model,
                                double delta, Jobs jobs) {
  CarveOptions opts;
  opts.grid_cap = c.grid_cap;
  opts.jobs = jobs;
  ApproxPositiveDomain apd = carve(c.variables, model, c.target, delta, opts).apd;
  if (c.refine) {
    apd = refine(apd, model, c.target,
                 c.inner_delta ? *c.inner_delta : default_inner_delta(apd), jobs);
  }
  return apd;
}

struct Baseline {
  // tests[f][s]: noiseless test set of function f for seed s
  std::vector<std::vector<TestSet>> tests;
  // apds[f][d]: noiseless APD of function f at delta d
  std::vector<std::vector<std::optional<ApproxPositiveDomain>>> apds;
};

Baseline baseline(const ExperimentConfig& c, const Plan& plan) {
  const std::size_t nf = c.functions.size();
  const std::size_t ns = c.seeds.size();
  const std::size_t nd = c.deltas.size();
  Baseline b;
  b.tests.assign(nf, std::vector<TestSet>(ns));
  b.apds.assign(nf, std::vector<std::optional<ApproxPositiveDomain>>(nd));
  parallel_for(nf * ns, plan.outer, [&](std::size_t i) {
    const std::size_t f = i / ns, s = i % ns;
    b.tests[f][s] = generate_test_set(c.variables, c.test_size,
                                      *c.functions[f].model, c.seeds[s],
                                      plan.inner);
  });
  parallel_for(nf * nd, plan.outer, [&](std::size_t i) {
    const std::size_t f = i / nd, d = i % nd;
    b.apds[f][d] = carve_cell(c, *c.functions[f].model, c.deltas[d], plan.inner);
  });
  return b;
}

void summarize(ExperimentResult& r) {
  r.mean_tpr = mean_tpr(r.reports);
  double acc = 0;
  r.undefined_folds = 0;
  for (const EvalReport& e : r.reports) {
    acc += e.accuracy();
    r.undefined_folds += !e.tpr().has_value();
  }
  r.mean_accuracy = r.reports.empty() ? 0 : acc / static_cast<double>(r.reports.size());
}

// Fills tpr_diff against the granularity results for the same function and
// delta.
void attach_diffs(std::vector<ExperimentResult>& results,
                  const std::vector<ExperimentResult>& noiseless) {
  for (ExperimentResult& r : results) {
    for (const ExperimentResult& base : noiseless) {
      if (base.function == r.function && base.delta == r.delta) {
        if (base.mean_tpr && r.mean_tpr) r.tpr_diff = *base.mean_tpr - *r.mean_tpr;
        break;
      }
    }
  }
}

std::vector<ExperimentResult> granularity_results(const ExperimentConfig& c,
                                                  const Baseline& b,
                                                  const Plan& plan) {
  const std::size_t nf = c.functions.size(), nd = c.deltas.size(),
                    ns = c.seeds.size();
  std::vector<ExperimentResult> out(nf * nd);
  parallel_for(nf * nd, plan.outer, [&](std::size_t i) {
    const std::size_t f = i / nd, d = i % nd;
    ExperimentResult& r = out[i];
    r.function = c.functions[f].id;
    r.delta = c.deltas[d];
    r.sigma = 0;
    r.experiment = ExperimentKind::kGranularity;
    r.seeds = c.seeds;
    for (std::size_t s = 0; s < ns; ++s) {
      r.reports.push_back(evaluate(*b.apds[f][d], b.tests[f][s], c.target, plan.inner));
    }
    summarize(r);
    r.tpr_diff = r.mean_tpr ? std::optional<double>(0.0) : std::nullopt;
  });
  return out;
}

}  // namespace

std::vector<ExperimentResult> run_granularity_sweep(const ExperimentConfig& c) {
  validate(c, false);
  const Plan plan = plan_for(c);
  return granularity_results(c, baseline(c, plan), plan);
}

std::vector<ExperimentResult> run_noisy_output(const ExperimentConfig& c) {
  validate(c, true);
  const Plan plan = plan_for(c);
  const Baseline b = baseline(c, plan);
  const std::size_t nf = c.functions.size(), nd = c.deltas.size(),
                    nsig = c.sigmas.size(), ns = c.seeds.size();
  std::vector<EvalReport> reports(nf * nd * nsig * ns);
  parallel_for(reports.size(), plan.outer, [&](std::size_t i) {
    const std::size_t s = i % ns;
    const std::size_t g = (i / ns) % nsig;
    const std::size_t d = (i / (ns * nsig)) % nd;
    const std::size_t f = i / (ns * nsig * nd);
    const double sigma = c.sigmas[g];
    const std::uint64_t noise_seed = derive_seed(
        c.seeds[s], {hash_text("noisy-output"), hash_text(c.functions[f].id),
                     seed_part(c.deltas[d]), seed_part(sigma)});
    NoisyOutputModel noisy(c.functions[f].model, sigma, noise_seed);
    const ApproxPositiveDomain apd = carve_cell(c, noisy, c.deltas[d], plan.inner);
    reports[i] = evaluate(apd, b.tests[f][s], c.target, plan.inner);
  });

  std::vector<ExperimentResult> out;
  for (std::size_t f = 0; f < nf; ++f) {
    for (std::size_t d = 0; d < nd; ++d) {
      for (std::size_t g = 0; g < nsig; ++g) {
        ExperimentResult r;
        r.function = c.functions[f].id;
        r.delta = c.deltas[d];
        r.sigma = c.sigmas[g];
        r.experiment = ExperimentKind::kNoisyOutput;
        r.seeds = c.seeds;
        const std::size_t base = ((f * nd + d) * nsig + g) * ns;
        r.reports.assign(reports.begin() + static_cast<std::ptrdiff_t>(base),
                         reports.begin() + static_cast<std::ptrdiff_t>(base + ns));
        summarize(r);
        out.push_back(std::move(r));
      }
    }
  }
  attach_diffs(out, granularity_results(c, b, plan));
  return out;
}

std::vector<ExperimentResult> run_noisy_inputs(const ExperimentConfig& c) {
  validate(c, true);
  const Plan plan = plan_for(c);
  const Baseline b = baseline(c, plan);
  const std::size_t nf = c.functions.size(), nd = c.deltas.size(),
                    nsig = c.sigmas.size(), ns = c.seeds.size();
  const std::size_t m = c.variables.size();

  // Noisy-input test sets do not depend on delta: noisy[f][g][s].
  std::vector<TestSet> noisy(nf * nsig * ns);
  parallel_for(noisy.size(), plan.outer, [&](std::size_t i) {
    const std::size_t s = i % ns;
    const std::size_t g = (i / ns) % nsig;
    const std::size_t f = i / (ns * nsig);
    const double sigma = c.sigmas[g];
    const TestSet& clean = b.tests[f][s];
    TestSet t;
    t.seed = clean.seed;
    t.points = clean.points;
    if (sigma == 0) {
      t.outputs = clean.outputs;
    } else {
      const CounterRng rng(derive_seed(
          c.seeds[s], {hash_text("noisy-input"), hash_text(c.functions[f].id),
                       seed_part(sigma)}));
      t.outputs.resize(clean.size());
      std::vector<double> shifted(m);
      for (std::size_t k = 0; k < clean.size(); ++k) {
        const auto p = clean.points[k];
        for (std::size_t j = 0; j < m; ++j) {
          shifted[j] = p[j] + sigma * rng.normal(k * m + j);
        }
        t.outputs[k] = c.functions[f].model->evaluate(shifted);
      }
    }
    noisy[i] = std::move(t);
  });

  std::vector<ExperimentResult> out(nf * nd * nsig);
  parallel_for(out.size(), plan.outer, [&](std::size_t i) {
    const std::size_t g = i % nsig;
    const std::size_t d = (i / nsig) % nd;
    const std::size_t f = i / (nsig * nd);
    ExperimentResult& r = out[i];
    r.function = c.functions[f].id;
    r.delta = c.deltas[d];
    r.sigma = c.sigmas[g];
    r.experiment = ExperimentKind::kNoisyInput;
    r.seeds = c.seeds;
    for (std::size_t s = 0; s < ns; ++s) {
      r.reports.push_back(evaluate(*b.apds[f][d], noisy[(f * nsig + g) * ns + s],
                                   c.target, plan.inner));
    }
    summarize(r);
  });
  attach_diffs(out, granularity_results(c, b, plan));
  return out;
}

std::vector<ExperimentResult> run_experiment(ExperimentKind kind,
                                             const ExperimentConfig& config) {
  switch (kind) {
    case ExperimentKind::kGranularity: return run_granularity_sweep(config);
    case ExperimentKind::kNoisyOutput: return run_noisy_output(config);
    case ExperimentKind::kNoisyInput: return run_noisy_inputs(config);
  }
  throw ValidationError("unknown experiment kind");
}

namespace {

std::string optional_number(const std::optional<double>& x) {
  return x ? format_number(*x) : std::string();
}

}  // namespace

void write_cells_csv(std::ostream& out,
                     const std::vector<ExperimentResult>& results) {
  out << "function,delta,sigma,experiment,seed,tp,fp,fn,tn,tpr,accuracy\n";
  for (const ExperimentResult& r : results) {
    for (std::size_t s = 0; s < r.reports.size(); ++s) {
      const EvalReport& e = r.reports[s];
      out << r.function << ',' << format_number(r.delta) << ','
          << format_number(r.sigma) << ',' << to_string(r.experiment) << ','
          << r.seeds[s] << ',' << e.tp << ',' << e.fp << ',' << e.fn << ','
          << e.tn << ',' << optional_number(e.tpr()) << ','
          << format_number(e.accuracy()) << '\n';
    }
  }
}

void write_aggregate_csv(std::ostream& out,
                         const std::vector<ExperimentResult>& results) {
  out << "function,delta,sigma,experiment,mean_tpr,mean_accuracy,tpr_diff,"
         "undefined_folds\n";
  for (const ExperimentResult& r : results) {
    out << r.function << ',' << format_number(r.delta) << ','
        << format_number(r.sigma) << ',' << to_string(r.experiment) << ','
        << optional_number(r.mean_tpr) << ',' << format_number(r.mean_accuracy)
        << ',' << optional_number(r.tpr_diff) << ',' << r.undefined_folds
        << '\n';
  }
}

}  // namespace posdom
