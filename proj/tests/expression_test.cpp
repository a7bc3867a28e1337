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

#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "posdom/error.hpp"
#include "posdom/expression.hpp"

using namespace posdom;
using Kind = Expression::Node::Kind;

namespace {

const std::vector<VariableSpec> kVars{{"x1", -1, 1}, {"x2", -1, 1}};

double eval(const std::string& src, std::vector<double> p) {
  return Expression::parse(src, kVars).evaluate(p);
}

}  // namespace

TEST_CASE("x1 + x2 parses to add(var, var)") {
  const Expression e = Expression::parse("x1 + x2", kVars);
  REQUIRE(e.nodes().size() == 3);
  CHECK(e.nodes()[0].kind == Kind::kVar);
  CHECK(e.nodes()[0].index == 0);
  CHECK(e.nodes()[1].kind == Kind::kVar);
  CHECK(e.nodes()[1].index == 1);
  CHECK(e.nodes()[2].kind == Kind::kAdd);
  CHECK(e.to_string(kVars) == "(x1 + x2)");
}

TEST_CASE("log(abs(x1)+abs(x2)) parses to nested calls") {
  const Expression e = Expression::parse("log(abs(x1)+abs(x2))", kVars);
  CHECK(e.nodes().back().kind == Kind::kCall);
  CHECK(static_cast<Func>(e.nodes().back().index) == Func::kLog);
  CHECK(e.to_string(kVars) == "log((abs(x1) + abs(x2)))");
}

TEST_CASE("syntax errors carry byte offsets") {
  try {
    Expression::parse("x1 + ", kVars);
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.offset() == 5);
  }
  try {
    Expression::parse("(x1 + x2", kVars);
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.offset() == 8);
  }
  try {
    Expression::parse("x1 $ x2", kVars);
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.offset() == 3);
  }
  CHECK_THROWS_AS(Expression::parse("", kVars), SyntaxError);
  CHECK_THROWS_AS(Expression::parse("   ", kVars), SyntaxError);
  CHECK_THROWS_AS(Expression::parse("x1 x2", kVars), SyntaxError);
}

TEST_CASE("unknown names") {
  CHECK_THROWS_AS(Expression::parse("x3 + 1", kVars), UnknownVariable);
  CHECK_THROWS_AS(Expression::parse("x0", kVars), UnknownVariable);
  CHECK_THROWS_AS(Expression::parse("y", kVars), UnknownVariable);
  CHECK_THROWS_AS(Expression::parse("sinh(x1)", kVars), UnknownFunction);
}

TEST_CASE("named variables and positional aliases") {
  const std::vector<VariableSpec> vars{{"speed", 0, 1}, {"temp", 0, 1}};
  CHECK(Expression::parse("speed * 2 - temp", vars).evaluate(std::vector{3.0, 1.0}) == 5);
  CHECK(Expression::parse("x1 * 2 - x2", vars).evaluate(std::vector{3.0, 1.0}) == 5);
}

TEST_CASE("precedence and associativity") {
  CHECK(eval("2 ^ 3 ^ 2", {0, 0}) == 512);
  CHECK(eval("-2 ^ 2", {0, 0}) == -4);
  CHECK(eval("2 ^ -1", {0, 0}) == 0.5);
  CHECK(eval("1 - 2 - 3", {0, 0}) == -4);
  CHECK(eval("8 / 4 / 2", {0, 0}) == 1);
  CHECK(eval("1 + 2 * 3", {0, 0}) == 7);
  CHECK(eval("(1 + 2) * 3", {0, 0}) == 9);
  CHECK(eval("-x1 * x2", {2, 3}) == -6);
  CHECK(eval("--x1", {2, 0}) == 2);
  CHECK(eval("1.5e1 + .5", {0, 0}) == 15.5);
}

TEST_CASE("evaluate_expression examples") {
  CHECK(eval("x1 + x2", {0.85, -0.20}) == doctest::Approx(0.65).epsilon(1e-15));
  CHECK(eval("x1^2 + x2^2", {0, 0}) == 0);
  CHECK(eval("sin(x1) + cos(x2)", {0, 0}) == 1.0);
  CHECK(eval("sqrt(x1) + exp(x2) + tan(0)", {4, 0}) == 3);
}

TEST_CASE("non-finite values propagate") {
  CHECK(std::isinf(eval("log(abs(x1) + abs(x2))", {0, 0})));
  CHECK(eval("log(abs(x1) + abs(x2))", {0, 0}) < 0);
  CHECK(std::isnan(eval("sqrt(x1)", {-1, 0})));
  CHECK(std::isinf(eval("1 / x1", {0, 0})));
}

TEST_CASE("arity mismatch") {
  const Expression e = Expression::parse("x1", kVars);
  CHECK_THROWS_AS(e.evaluate(std::vector{1.0}), ArityMismatch);
}

TEST_CASE("parse -> print -> parse round-trips") {
  const char* sources[] = {
      "x1 + x2", "x1^2 + x2^2", "sin(x1) + cos(x2)", "log(abs(x1)+abs(x2))",
      "-x1 ^ -2 / (3.25e-3 - x2) * exp(-x1)", "2^3^2", "---x1", "0.1 + 0.2",
      "sqrt(abs(tan(x1 * 1e10)))", "1 / 3"};
  for (const char* src : sources) {
    const Expression first = Expression::parse(src, kVars);
    const Expression second = Expression::parse(first.to_string(kVars), kVars);
    CHECK_MESSAGE(first == second, src);
  }
}

TEST_CASE("benchmark expressions agree with hand-coded functions") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-1, 1);
  for (const Benchmark& b : benchmark_functions()) {
    const Expression e = Expression::parse(b.source, kVars);
    const auto f = oracle::by_id(b.id);
    for (int i = 0; i < 1000; ++i) {
      const double x1 = u(rng), x2 = u(rng);
      const double got = e.evaluate(std::vector{x1, x2});
      const double want = f(x1, x2);
      CHECK(std::fabs(got - want) <= 1e-12 * std::max(1.0, std::fabs(want)));
    }
  }
  CHECK_THROWS_AS(benchmark("cubic"), ValidationError);
}

TEST_CASE("expression model is concurrency-safe") {
  ExpressionModel m("x1 * x2", kVars);
  CHECK(m.concurrent_safe());
  CHECK(m.arity() == 2);
  CHECK(m.evaluate(std::vector{2.0, 3.0}) == 6);
}
