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

#include <algorithm>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "posdom/error.hpp"
#include "posdom/eval.hpp"
#include "posdom/expression.hpp"
#include "posdom/json_io.hpp"

using namespace posdom;

namespace {

const std::vector<VariableSpec> kSquare{{"x1", -1, 1}, {"x2", -1, 1}};
const TargetRange kUnit{Interval::closed(0, 1)};

// Exact TPR of uniform sampling over the APD for f = x1 + x2.
double analytic_linear_tpr(const ApproxPositiveDomain& apd) {
  double inside = 0, total = 0;
  for (const Box& b : apd.boxes()) {
    total += (b[0].hi() - b[0].lo()) * (b[1].hi() - b[1].lo());
    inside += oracle::rect_band_area(b[0].lo(), b[0].hi(), b[1].lo(), b[1].hi(), 0, 1);
  }
  return inside / total;
}

}  // namespace

TEST_CASE("test sets are reproducible and uniform") {
  ExpressionModel f("x1 + x2", kSquare);
  const TestSet a = generate_test_set(kSquare, 10'000, f, 42);
  const TestSet b = generate_test_set(kSquare, 10'000, f, 42, Jobs{6});
  CHECK(a.points.coords() == b.points.coords());
  CHECK(a.outputs == b.outputs);
  CHECK(a.seed == 42);
  const TestSet c = generate_test_set(kSquare, 10'000, f, 43);
  CHECK(a.points.coords() != c.points.coords());

  double m0 = 0, m1 = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(std::fabs(a.points[k][0]) <= 1);
    CHECK(std::fabs(a.points[k][1]) <= 1);
    CHECK(a.outputs[k] == a.points[k][0] + a.points[k][1]);
    m0 += a.points[k][0];
    m1 += a.points[k][1];
  }
  // sigma/sqrt(n) = 0.577/100; 0.03 is > 5 standard errors.
  CHECK(std::fabs(m0 / 1e4) < 0.03);
  CHECK(std::fabs(m1 / 1e4) < 0.03);

  const TestSet one = generate_test_set({{"x", 2, 3}}, 1, *std::make_unique<ExpressionModel>("x", std::vector<VariableSpec>{{"x", 2, 3}}), 7);
  REQUIRE(one.size() == 1);
  CHECK(one.points[0][0] >= 2);
  CHECK(one.points[0][0] <= 3);
  CHECK_THROWS_AS(generate_test_set(kSquare, 0, f, 1), ValidationError);
}

TEST_CASE("linear example: TPR near 0.843 and no false negatives") {
  ExpressionModel f("x1 + x2", kSquare);
  const CarveResult r = carve(kSquare, f, kUnit, 0.2);
  const TestSet test = generate_test_set(kSquare, 10'000, f, 1);
  const EvalReport rep = evaluate(r.apd, test, kUnit);
  CHECK(rep.total() == 10'000);
  CHECK(rep.fn == 0);
  REQUIRE(rep.tpr());
  CHECK(std::fabs(*rep.tpr() - 0.843) <= 0.02);
  // Closed-form oracle: 0.8428...
  const double expected = analytic_linear_tpr(r.apd);
  CHECK(expected == doctest::Approx(0.84275).epsilon(1e-4));
  const double se = std::sqrt(expected * (1 - expected) / double(rep.tp + rep.fp));
  CHECK(std::fabs(*rep.tpr() - expected) <= 3 * se);
}

TEST_CASE("degenerate APDs") {
  ExpressionModel f("x1 + x2", kSquare);
  const TestSet test = generate_test_set(kSquare, 2'000, f, 3);
  const ApproxPositiveDomain full(kSquare, kUnit, 0.2, false,
                                  {Box({Interval::closed(-1, 1), Interval::closed(-1, 1)})});
  const EvalReport all = evaluate(full, test, kUnit);
  CHECK(all.fn == 0);
  CHECK(all.tn == 0);

  const ApproxPositiveDomain none(kSquare, kUnit, 0.2, false, {});
  const EvalReport nothing = evaluate(none, test, kUnit);
  CHECK(nothing.tp == 0);
  CHECK(nothing.fp == 0);
  CHECK_FALSE(nothing.tpr().has_value());
  CHECK(to_json(nothing)["tpr"].is_null());
  CHECK(nothing.table().find("tpr: undefined") != std::string::npos);
}

TEST_CASE("evaluate invariants") {
  ExpressionModel f("sin(x1) + cos(x2)", kSquare);
  const CarveResult r = carve(kSquare, f, kUnit, 0.275);
  TestSet test = generate_test_set(kSquare, 5'000, f, 11);
  const EvalReport rep = evaluate(r.apd, test, kUnit, Jobs{4});
  CHECK(rep == evaluate(r.apd, test, kUnit, Jobs{1}));

  std::size_t in_target = 0;
  for (double y : test.outputs) in_target += kUnit.contains(y);
  CHECK(rep.tp + rep.fn == in_target);
  CHECK(rep.total() == test.size());
  CHECK(rep.accuracy() == doctest::Approx(double(rep.tp + rep.tn) / 5000));

  // Permuting the test points does not change the table.
  std::vector<std::size_t> order(test.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), std::mt19937_64(8));
  TestSet shuffled;
  shuffled.points = PointSet(2);
  for (std::size_t i : order) {
    shuffled.points.push_back(test.points[i]);
    shuffled.outputs.push_back(test.outputs[i]);
  }
  CHECK(evaluate(r.apd, shuffled, kUnit) == rep);
}

TEST_CASE("report formats") {
  EvalReport r{3793, 708, 0, 5499};
  CHECK(*r.tpr() == doctest::Approx(0.8427).epsilon(1e-4));
  const std::string t = r.table();
  CHECK(t.find("INPUT Inside |    3793 |     708") != std::string::npos);
  CHECK(t.find("INPUT Outside |       0 |    5499") != std::string::npos);
  const Json j = to_json(r);
  CHECK(j["tp"] == 3793);
  CHECK(j["fn"] == 0);
  CHECK(j["accuracy"].get<double>() == doctest::Approx(0.9292));
}

TEST_CASE("mean TPR skips undefined folds") {
  CHECK_FALSE(mean_tpr({EvalReport{0, 0, 1, 1}}).has_value());
  CHECK(*mean_tpr({EvalReport{1, 1, 0, 0}, EvalReport{0, 0, 5, 5},
                   EvalReport{1, 0, 0, 0}}) == 0.75);
}

TEST_CASE("select_granularity") {
  ExpressionModel f("x1^2 + x2^2", kSquare);
  const std::vector<std::uint64_t> seeds{1, 2, 3};
  const auto pick = select_granularity({0.2, 0.7}, kSquare, f, kUnit, 0.99, seeds, 2'000);
  CHECK(pick.delta == 0.7);
  REQUIRE(pick.mean_tprs.size() == 1);
  CHECK(*pick.mean_tprs[0].second == 1.0);

  CHECK(select_granularity({0.1, 0.4}, kSquare, f, kUnit, 0, seeds, 500).delta == 0.4);

  try {
    select_granularity({0.7, 0.4}, kSquare, f, kUnit, 1.01, seeds, 500);
    FAIL("expected NoQualifyingGranularity");
  } catch (const NoQualifyingGranularity& e) {
    CHECK(e.candidates().size() == 2);
    CHECK(e.candidates()[0].first == 0.7);
  }
  CHECK_THROWS_AS(select_granularity({}, kSquare, f, kUnit, 0.5, seeds), ValidationError);
}
