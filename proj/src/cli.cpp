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

#include "posdom/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "posdom/carve.hpp"
#include "posdom/config.hpp"
#include "posdom/error.hpp"
#include "posdom/eval.hpp"
#include "posdom/experiments.hpp"
#include "posdom/grid.hpp"
#include "posdom/json_io.hpp"

namespace posdom {

namespace {

namespace fs = std::filesystem;

struct Options {
  std::string config;
  std::string out;
  std::string apd;
  std::string tree_out;
  std::string grid_csv;
  bool json = false;
  std::optional<std::uint64_t> seed;
  unsigned jobs = 0;
  std::optional<double> inner_delta;
  std::optional<double> margin;
  std::optional<double> tpr_threshold;
  std::string experiment = "granularity";
};

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError(path.string() + ": cannot open for writing");
  f << text;
  if (!f) throw ValidationError(path.string() + ": write failed");
}

ProblemConfig load(const Options& o) {
  ProblemConfig c = load_config(o.config);
  if (o.seed) c.seed = *o.seed;
  if (o.margin) {
    if (!(*o.margin >= 0)) throw ValidationError("--margin: must be >= 0");
    c.margin = *o.margin;
    try {
      c.carving_target();
    } catch (const ValidationError& e) {
      throw ValidationError(std::string("--margin: ") + e.what());
    }
  }
  if (o.inner_delta) {
    if (!(*o.inner_delta > 0)) throw ValidationError("--inner-delta: must be positive");
    c.inner_delta = *o.inner_delta;
  }
  return c;
}

ApproxPositiveDomain load_apd(const std::string& path,
                              const ProblemConfig& config) {
  ApproxPositiveDomain apd = apd_from_json(read_json_file(path));
  if (apd.dim() != config.variables.size()) {
    throw ValidationError(path + ": APD has " + std::to_string(apd.dim()) +
                          " variables, config has " +
                          std::to_string(config.variables.size()));
  }
  return apd;
}

int cmd_carve(const Options& o, std::ostream& out) {
  const ProblemConfig c = load(o);
  auto model = make_model(c.model, c.variables);
  CarveOptions opts;
  opts.grid_cap = c.grid_cap;
  opts.jobs = Jobs{o.jobs};
  const CarveResult r =
      carve(c.variables, *model, c.carving_target(), c.granularity, opts);
  write_file(o.out, dump(to_json(r.apd)));
  if (!o.tree_out.empty()) write_file(o.tree_out, dump(to_json(r.tree)));
  if (!o.grid_csv.empty()) {
    std::ofstream f(o.grid_csv, std::ios::binary);
    if (!f) throw ValidationError(o.grid_csv + ": cannot open for writing");
    write_csv(f, r.dataset, c.variables);
  }
  out << "grid points: " << r.dataset.size()
      << " (Inside: " << r.dataset.count(Label::kInside) << ")\n";
  out << "boxes: " << r.apd.boxes().size() << '\n';
  out << r.apd.report();
  return kExitOk;
}

int cmd_eval(const Options& o, std::ostream& out) {
  const ProblemConfig c = load(o);
  const ApproxPositiveDomain apd = load_apd(o.apd, c);
  auto model = make_model(c.model, c.variables);
  const TestSet test = generate_test_set(c.variables, c.test_size, *model,
                                         c.seed, Jobs{o.jobs});
  const EvalReport report = evaluate(apd, test, c.target, Jobs{o.jobs});
  if (o.json) {
    out << dump(to_json(report));
  } else {
    out << report.table();
  }
  return kExitOk;
}

int cmd_refine(const Options& o, std::ostream& out) {
  const ProblemConfig c = load(o);
  const ApproxPositiveDomain apd = load_apd(o.apd, c);
  auto model = make_model(c.model, c.variables);
  const double inner = c.inner_delta ? *c.inner_delta : default_inner_delta(apd);
  RefineStats stats;
  const ApproxPositiveDomain refined =
      refine(apd, *model, c.carving_target(), inner, Jobs{o.jobs}, &stats);
  write_file(o.out, dump(to_json(refined)));
  out << "kept: " << stats.kept << '\n' << "dropped: " << stats.dropped << '\n';
  out << refined.report();
  return kExitOk;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  const ProblemConfig c = load(o);
  const ExperimentKind kind = parse_experiment(o.experiment);
  ExperimentConfig e;
  e.variables = c.variables;
  e.target = c.carving_target();
  e.functions = sweep_models(c);
  e.deltas = c.sweep.deltas;
  e.sigmas = c.sweep.sigmas;
  e.seeds = fold_seeds(c.seed, c.sweep.folds);
  e.test_size = c.test_size;
  e.refine = c.sweep.refine;
  e.inner_delta = c.inner_delta;
  e.grid_cap = c.grid_cap;
  e.jobs = Jobs{o.jobs};
  if (kind == ExperimentKind::kGranularity) e.sigmas = {0};

  const auto results = run_experiment(kind, e);
  const fs::path dir(o.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ValidationError(dir.string() + ": " + ec.message());
  {
    std::ofstream f(dir / "cells.csv", std::ios::binary);
    if (!f) throw ValidationError((dir / "cells.csv").string() + ": cannot open");
    write_cells_csv(f, results);
  }
  {
    std::ofstream f(dir / "aggregate.csv", std::ios::binary);
    if (!f) throw ValidationError((dir / "aggregate.csv").string() + ": cannot open");
    write_aggregate_csv(f, results);
  }
  out << "cells: " << results.size() << " written to " << dir.string() << '\n';

  if (o.tpr_threshold) {
    if (kind != ExperimentKind::kGranularity) {
      throw ValidationError("--tpr-threshold: only valid with --experiment granularity");
    }
    // Largest delta whose mean TPR reaches the threshold, per function.
    int code = kExitOk;
    for (const NamedModel& f : e.functions) {
      std::optional<double> best;
      std::string tried;
      for (const ExperimentResult& r : results) {
        if (r.function != f.id) continue;
        tried += " delta=" + format_number(r.delta) + " tpr=" +
                 (r.mean_tpr ? format_number(*r.mean_tpr) : "undefined");
        if (r.mean_tpr && *r.mean_tpr >= *o.tpr_threshold &&
            (!best || r.delta > *best)) {
          best = r.delta;
        }
      }
      if (best) {
        out << "selected granularity for " << f.id << ": " << format_number(*best)
            << '\n';
      } else {
        out << "no granularity for " << f.id << " reaches mean TPR "
            << format_number(*o.tpr_threshold) << ":" << tried << '\n';
        code = kExitNoGranularity;
      }
    }
    return code;
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Approximate the input region whose outputs hit a target range"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "Problem config (JSON)")->required();
    sub->add_option("--seed", o.seed, "Override the config seed");
    sub->add_option("--jobs", o.jobs, "Worker threads (0 = all cores)");
    sub->add_option("--margin", o.margin, "Override the target margin");
  };

  CLI::App* carve_cmd = app.add_subcommand("carve", "Build an APD from a config");
  common(carve_cmd);
  carve_cmd->add_option("--out", o.out, "APD JSON output")->required();
  carve_cmd->add_option("--tree", o.tree_out, "Also write the trained tree");
  carve_cmd->add_option("--grid-csv", o.grid_csv, "Also write the labeled grid");

  CLI::App* eval_cmd = app.add_subcommand("eval", "Evaluate an APD on a test set");
  common(eval_cmd);
  eval_cmd->add_option("apd", o.apd, "APD JSON")->required();
  eval_cmd->add_flag("--json", o.json, "Print the report as JSON");

  CLI::App* refine_cmd = app.add_subcommand("refine", "Keep boxes inside the positive domain");
  common(refine_cmd);
  refine_cmd->add_option("apd", o.apd, "APD JSON")->required();
  refine_cmd->add_option("--out", o.out, "Refined APD JSON output")->required();
  refine_cmd->add_option("--inner-delta", o.inner_delta,
                         "Inner grid granularity (default granularity/4)");

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Run a sensitivity experiment");
  common(sweep_cmd);
  sweep_cmd->add_option("--experiment", o.experiment,
                        "granularity | noisy-output | noisy-input");
  sweep_cmd->add_option("--out", o.out, "Output directory")->required();
  sweep_cmd->add_option("--inner-delta", o.inner_delta, "Inner grid granularity");
  sweep_cmd->add_option("--tpr-threshold", o.tpr_threshold,
                        "Select the largest granularity reaching this mean TPR");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*carve_cmd) return cmd_carve(o, out);
    if (*eval_cmd) return cmd_eval(o, out);
    if (*refine_cmd) return cmd_refine(o, out);
    if (*sweep_cmd) return cmd_sweep(o, out);
  } catch (const NoQualifyingGranularity& e) {
    err << "error: " << e.what() << '\n';
    return kExitNoGranularity;
  } catch (const ModelError& e) {
    err << "model error: " << e.what() << '\n';
    return kExitModel;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ArityMismatch& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace posdom
