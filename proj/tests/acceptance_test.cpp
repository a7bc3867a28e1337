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

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "posdom/carve.hpp"
#include "posdom/eval.hpp"
#include "posdom/experiments.hpp"
#include "posdom/expression.hpp"
#include "posdom/json_io.hpp"

using namespace posdom;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

const TargetRange kUnit{Interval::closed(0, 1)};

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << ": " << detail
            << std::endl;
  if (!ok) ++failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

double box_area(const Box& b) {
  return (b[0].hi() - b[0].lo()) * (b[1].hi() - b[1].lo());
}

double band_area(const Box& b) {
  return oracle::rect_band_area(b[0].lo(), b[0].hi(), b[1].lo(), b[1].hi(), 0, 1);
}

ExperimentConfig all_functions() {
  ExperimentConfig c;
  c.variables = benchmark_variables();
  c.functions = benchmark_models();
  c.seeds = fold_seeds(1, 5);
  return c;
}

void criterion1() {
  const auto t0 = Clock::now();
  const auto vars = benchmark_variables();
  ExpressionModel f("x1 + x2", vars);
  const CarveResult r = carve(vars, f, kUnit, 0.2);
  const EvalReport rep = evaluate(r.apd, generate_test_set(vars, 10'000, f, 1), kUnit);
  const double secs = seconds_since(t0);
  const double tpr = rep.tpr().value_or(0);
  report(1, rep.fn == 0 && std::fabs(tpr - 0.843) <= 0.02 && secs < 5,
         "linear delta=0.2: tp=" + std::to_string(rep.tp) + " fp=" +
             std::to_string(rep.fp) + " fn=" + std::to_string(rep.fn) +
             " tn=" + std::to_string(rep.tn) + " tpr=" + fmt(tpr) +
             " (0.843 +/- 0.02), " + fmt(secs) + " s (< 5)");
}

void criterion2() {
  std::size_t checked = 0, wrong = 0;
  for (const NamedModel& m : benchmark_models()) {
    for (double d : kDefaultDeltas) {
      const CarveResult r = carve(benchmark_variables(), *m.model, kUnit, d);
      for (std::size_t k = 0; k < r.dataset.size(); ++k) {
        const auto p = r.dataset.points[k];
        const bool inside = r.dataset.labels[k] == Label::kInside;
        wrong += (r.tree.predict(p) == Label::kInside) != inside;
        wrong += r.apd.contains(p) != inside;
        ++checked;
      }
    }
  }
  report(2, wrong == 0,
         std::to_string(checked) + " grid points over 4 functions x 6 deltas, " +
             std::to_string(wrong) + " misclassified by tree or APD");
}

void criterion3() {
  const auto t0 = Clock::now();
  ExperimentConfig c = all_functions();
  c.functions.erase(std::remove_if(c.functions.begin(), c.functions.end(),
                                   [](const NamedModel& m) { return m.id != "sum_of_squares"; }),
                    c.functions.end());
  c.deltas = {0.7};
  const auto r = run_granularity_sweep(c);
  const double secs = seconds_since(t0);
  const double tpr = r.at(0).mean_tpr.value_or(0);
  report(3, tpr == 1.0 && r[0].undefined_folds == 0 && secs < 10,
         "sum_of_squares delta=0.7 mean tpr over 5 seeds=" + fmt(tpr) + " (exactly 1), " +
             fmt(secs) + " s (< 10)");
}

void criterion4() {
  const auto r = run_granularity_sweep(all_functions());
  bool ok = true;
  std::string detail;
  for (const NamedModel& m : benchmark_models()) {
    double best = -1, at_smallest = -1;
    for (const ExperimentResult& e : r) {
      if (e.function != m.id) continue;
      best = std::max(best, e.mean_accuracy);
      if (e.delta == 0.05) at_smallest = e.mean_accuracy;
    }
    ok = ok && at_smallest == best;
    detail += " " + m.id + "=" + fmt(at_smallest) + "/" + fmt(best);
  }
  report(4, ok, "accuracy at 0.05 vs sweep max:" + detail);
}

void criterion5() {
  const auto vars = benchmark_variables();
  // Subset property on every benchmark at every delta.
  bool subset = true;
  for (const NamedModel& m : benchmark_models()) {
    for (double d : kDefaultDeltas) {
      const CarveResult r = carve(vars, *m.model, kUnit, d);
      const ApproxPositiveDomain refined = refine(r.apd, *m.model, kUnit, d / 4);
      for (const Box& b : refined.boxes()) {
        subset = subset && std::find(r.apd.boxes().begin(), r.apd.boxes().end(), b) !=
                               r.apd.boxes().end();
      }
    }
  }
  ExpressionModel f("x1 + x2", vars);
  const CarveResult r = carve(vars, f, kUnit, 0.2);
  RefineStats stats;
  const ApproxPositiveDomain refined = refine(r.apd, f, kUnit, 0.05, {}, &stats);
  double worst = 1;
  for (const Box& b : refined.boxes()) worst = std::min(worst, band_area(b) / box_area(b));
  const EvalReport rep = evaluate(refined, generate_test_set(vars, 10'000, f, 1), kUnit);
  const double tpr = rep.tpr().value_or(0);
  const std::string tpr_text = rep.tpr() ? fmt(*rep.tpr()) : "undefined";
  report(5, subset && !refined.boxes().empty() && std::fabs(worst - 1) <= 1e-12 && tpr == 1.0,
         std::string("subset ") + (subset ? "holds" : "violated") + "; kept " +
             std::to_string(stats.kept) + " of " +
             std::to_string(stats.kept + stats.dropped) +
             " boxes, min band area fraction=" +
             (refined.boxes().empty() ? std::string("n/a") : fmt(worst)) + ", tpr=" + tpr_text +
             " on " + std::to_string(rep.tp + rep.fp) + " accepted points");
}

void criterion6() {
  std::size_t mismatches = 0, checked = 0;
  const auto vars = benchmark_variables();
  std::uint64_t salt = 0;
  for (const NamedModel& m : benchmark_models()) {
    for (double d : kDefaultDeltas) {
      const CarveResult r = carve(vars, *m.model, kUnit, d);
      const PointSet pts = sample_uniform(vars, 10'000, derive_seed(6, {++salt}));
      for (std::size_t k = 0; k < pts.size(); ++k) {
        mismatches += r.apd.contains(pts[k]) != (r.tree.predict(pts[k]) == Label::kInside);
        ++checked;
      }
    }
  }
  report(6, mismatches == 0,
         std::to_string(checked) + " random points, " + std::to_string(mismatches) +
             " tree/APD disagreements");
}

void criterion7() {
  ExperimentConfig c = all_functions();
  c.deltas = {0.2};
  c.sigmas = {0, 0.1, 0.2};
  const auto out = run_noisy_output(c);
  const auto in = run_noisy_inputs(c);
  bool ok = true;
  std::string detail;
  for (const NamedModel& m : benchmark_models()) {
    std::vector<double> tpr, diff;
    for (const auto& e : out)
      if (e.function == m.id) tpr.push_back(e.mean_tpr.value_or(0));
    for (const auto& e : in)
      if (e.function == m.id) diff.push_back(e.tpr_diff.value_or(0));
    for (std::size_t i = 1; i < tpr.size(); ++i) ok = ok && tpr[i] <= tpr[i - 1] + 0.01;
    for (std::size_t i = 1; i < diff.size(); ++i) ok = ok && diff[i] >= diff[i - 1] - 0.01;
    detail += " " + m.id + " tpr(" + fmt(tpr[0]) + "," + fmt(tpr[1]) + "," + fmt(tpr[2]) +
              ") diff(" + fmt(diff[0]) + "," + fmt(diff[1]) + "," + fmt(diff[2]) + ")";
  }
  report(7, ok, "sigma 0/0.1/0.2 at delta=0.2:" + detail);
}

void criterion8() {
  const auto vars = benchmark_variables();
  ExperimentConfig c = all_functions();
  c.functions.resize(1);  // linear
  const auto r = run_granularity_sweep(c);
  bool ok = c.functions[0].id == "linear";
  std::string detail;
  for (const ExperimentResult& e : r) {
    const CarveResult carved = carve(vars, *c.functions[0].model, kUnit, e.delta);
    double inside = 0, total = 0;
    for (const Box& b : carved.apd.boxes()) {
      inside += band_area(b);
      total += box_area(b);
    }
    const double expected = inside / total;
    std::size_t tp = 0, accepted = 0;
    for (const EvalReport& rep : e.reports) {
      tp += rep.tp;
      accepted += rep.tp + rep.fp;
    }
    const double observed = double(tp) / double(accepted);
    const double se = std::sqrt(expected * (1 - expected) / double(accepted));
    const double z = se > 0 ? std::fabs(observed - expected) / se
                            : (observed == expected ? 0 : 1e9);
    ok = ok && z <= 3;
    detail += " d=" + fmt(e.delta) + ":" + fmt(observed) + "/" + fmt(expected) +
              "(z=" + fmt(z) + ")";
  }
  report(8, ok, "linear observed/oracle tpr, 5 pooled folds:" + detail);
}

int run_cli_quiet(const std::string& args) {
  const std::string cmd = std::string(POSDOM_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

void criterion9() {
  std::string tmpl = (fs::temp_directory_path() / "posdom-accept-XXXXXX").string();
  const fs::path dir = mkdtemp(tmpl.data());
  const fs::path cfg = dir / "config.json";
  std::ofstream(cfg) << R"({
  "variables": [{"name": "x1", "lo": -1, "hi": 1}, {"name": "x2", "lo": -1, "hi": 1}],
  "target": [{"lo": 0, "hi": 1}],
  "granularity": 0.2,
  "model": {"expr": "x1 + x2"},
  "seed": 2026,
  "sweep": {"functions": ["linear", "sum_of_squares", "sin_plus_cos", "log_sum_abs"]}
})";
  bool ok = true;
  std::string detail;
  for (const std::string exp : {"granularity", "noisy-output", "noisy-input"}) {
    const std::string base = "sweep --config " + cfg.string() + " --experiment " + exp;
    const fs::path a = dir / (exp + "-a"), b = dir / (exp + "-b"), c = dir / (exp + "-c");
    const bool ran = run_cli_quiet(base + " --jobs 1 --out " + a.string()) == 0 &&
                     run_cli_quiet(base + " --jobs 1 --out " + b.string()) == 0 &&
                     run_cli_quiet(base + " --jobs 8 --out " + c.string()) == 0;
    bool same = ran;
    for (const char* name : {"cells.csv", "aggregate.csv"}) {
      const std::string ref = slurp(a / name);
      same = same && !ref.empty() && ref == slurp(b / name) && ref == slurp(c / name);
    }
    ok = ok && same;
    detail += " " + exp + (same ? "=identical" : "=DIFFERENT");
  }
  fs::remove_all(dir);
  report(9, ok, "sweep CSVs for repeated runs and --jobs 1 vs 8:" + detail);
}

void criterion10() {
  const TargetRange t{Interval(0, 10, true, false)};
  const TargetRange shrunk = shrink_target(t, 1.0, MarginSide::kUpper);
  const TargetRange expected{Interval(0, 9, true, false)};
  report(10, shrunk == expected,
         "shrink_target([0,10), 1.0) = " + shrunk.to_string() + " (expected [0, 9))");
}

}  // namespace

int main() {
  void (*criteria[])() = {criterion1, criterion2, criterion3, criterion4, criterion5,
                          criterion6, criterion7, criterion8, criterion9, criterion10};
  for (int i = 0; i < 10; ++i) {
    try {
      criteria[i]();
    } catch (const std::exception& e) {
      report(i + 1, false, std::string("exception: ") + e.what());
    }
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
