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

#ifndef POSDOM_EXPRESSION_HPP_
#define POSDOM_EXPRESSION_HPP_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "posdom/core.hpp"

namespace posdom {

enum class Func : std::uint8_t { kSin, kCos, kTan, kExp, kLog, kAbs, kSqrt };

// Arithmetic expression over real variables, stored as a flat node array in
// post-order: every child precedes its parent and the root is the last node.
//
// Grammar (tightest first): primary, ^ (right-assoc), unary -, * /, + -.
// Functions: sin cos tan exp log (natural) abs sqrt.
class Expression {
 public:
  struct Node {
    enum class Kind : std::uint8_t {
      kConst, kVar, kNeg, kAdd, kSub, kMul, kDiv, kPow, kCall
    };
    Kind kind = Kind::kConst;
    double value = 0;        // kConst
    std::uint32_t index = 0; // kVar: variable index; kCall: Func
    std::uint32_t lhs = 0;   // unary operand or left operand
    std::uint32_t rhs = 0;

    friend bool operator==(const Node&, const Node&) = default;
  };

  // Variable names resolve against `variables` first; "x1".."xm" also refer
  // to the variables by position unless shadowed by a declared name.
  static Expression parse(std::string_view source,
                          const std::vector<VariableSpec>& variables);

  std::size_t arity() const noexcept { return arity_; }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }

  // IEEE-754 evaluation; non-finite results propagate.
  double evaluate(std::span<const double> point) const;

  // Fully parenthesised source text that parses back to the same nodes.
  std::string to_string(const std::vector<VariableSpec>& variables) const;

  friend bool operator==(const Expression&, const Expression&) = default;

 private:
  friend class ExpressionParser;
  std::vector<Node> nodes_;
  std::size_t arity_ = 0;
};

inline double evaluate_expression(const Expression& e,
                                  std::span<const double> point) {
  return e.evaluate(point);
}

class ExpressionModel final : public OutputModel {
 public:
  explicit ExpressionModel(Expression expr) : expr_(std::move(expr)) {}
  ExpressionModel(std::string_view source,
                  const std::vector<VariableSpec>& variables)
      : expr_(Expression::parse(source, variables)) {}

  std::size_t arity() const override { return expr_.arity(); }
  double evaluate(std::span<const double> point) override {
    return expr_.evaluate(point);
  }
  bool concurrent_safe() const override { return true; }

  const Expression& expression() const noexcept { return expr_; }

 private:
  Expression expr_;
};

// The four benchmark functions of the sensitivity study, over two variables.
struct Benchmark {
  std::string id;
  std::string source;
};

const std::vector<Benchmark>& benchmark_functions();
// Throws ValidationError for an unknown id.
const Benchmark& benchmark(std::string_view id);

}  // namespace posdom

#endif  // POSDOM_EXPRESSION_HPP_
