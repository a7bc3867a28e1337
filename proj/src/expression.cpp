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

#include "posdom/expression.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <utility>

#include "posdom/error.hpp"

namespace posdom {

namespace {

using Node = Expression::Node;
using Kind = Node::Kind;

constexpr std::array<std::pair<std::string_view, Func>, 7> kFunctions{{
    {"sin", Func::kSin},
    {"cos", Func::kCos},
    {"tan", Func::kTan},
    {"exp", Func::kExp},
    {"log", Func::kLog},
    {"abs", Func::kAbs},
    {"sqrt", Func::kSqrt},
}};

std::string_view function_name(Func f) {
  for (const auto& [name, func] : kFunctions) {
    if (func == f) return name;
  }
  return "?";
}

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

}  // namespace

class ExpressionParser {
 public:
  ExpressionParser(std::string_view src, const std::vector<VariableSpec>& vars)
      : src_(src), vars_(vars) {}

  Expression run() {
    skip_space();
    if (pos_ == src_.size()) throw SyntaxError(pos_, "empty expression");
    parse_sum();
    skip_space();
    if (pos_ != src_.size()) {
      throw SyntaxError(pos_, "unexpected '" + std::string(1, src_[pos_]) + "'");
    }
    Expression e;
    e.nodes_ = std::move(nodes_);
    e.arity_ = vars_.size();
    return e;
  }

 private:
  void skip_space() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_]))) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::uint32_t push(Node n) {
    nodes_.push_back(n);
    return static_cast<std::uint32_t>(nodes_.size() - 1);
  }

  std::uint32_t binary(Kind k, std::uint32_t lhs, std::uint32_t rhs) {
    Node n;
    n.kind = k;
    n.lhs = lhs;
    n.rhs = rhs;
    return push(n);
  }

  std::uint32_t parse_sum() {
    std::uint32_t lhs = parse_product();
    for (;;) {
      if (accept('+')) {
        lhs = binary(Kind::kAdd, lhs, parse_product());
      } else if (accept('-')) {
        lhs = binary(Kind::kSub, lhs, parse_product());
      } else {
        return lhs;
      }
    }
  }

  std::uint32_t parse_product() {
    std::uint32_t lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = binary(Kind::kMul, lhs, parse_unary());
      } else if (accept('/')) {
        lhs = binary(Kind::kDiv, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  std::uint32_t parse_unary() {
    if (accept('-')) {
      std::uint32_t operand = parse_unary();
      Node n;
      n.kind = Kind::kNeg;
      n.lhs = operand;
      return push(n);
    }
    return parse_power();
  }

  // The exponent may carry its own unary minus: 2^-1.
  std::uint32_t parse_power() {
    std::uint32_t base = parse_primary();
    if (accept('^')) return binary(Kind::kPow, base, parse_unary());
    return base;
  }

  std::uint32_t parse_primary() {
    skip_space();
    if (pos_ == src_.size()) throw SyntaxError(pos_, "unexpected end of input");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      std::uint32_t inner = parse_sum();
      if (!accept(')')) throw SyntaxError(pos_, "expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return parse_number();
    }
    if (is_ident_start(c)) return parse_identifier();
    throw SyntaxError(pos_, "unexpected '" + std::string(1, c) + "'");
  }

  std::uint32_t parse_number() {
    const std::size_t start = pos_;
    double value = 0;
    auto [end, ec] = std::from_chars(src_.data() + pos_,
                                     src_.data() + src_.size(), value,
                                     std::chars_format::general);
    if (ec == std::errc::invalid_argument) {
      throw SyntaxError(start, "malformed number");
    }
    pos_ = static_cast<std::size_t>(end - src_.data());
    if (ec == std::errc::result_out_of_range) {
      throw SyntaxError(start, "number out of range");
    }
    Node n;
    n.kind = Kind::kConst;
    n.value = value;
    return push(n);
  }

  std::uint32_t parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && is_ident_char(src_[pos_])) ++pos_;
    const std::string_view name = src_.substr(start, pos_ - start);
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == '(') {
      ++pos_;
      const Func f = lookup_function(name);
      std::uint32_t arg = parse_sum();
      if (!accept(')')) throw SyntaxError(pos_, "expected ')'");
      Node n;
      n.kind = Kind::kCall;
      n.index = static_cast<std::uint32_t>(f);
      n.lhs = arg;
      return push(n);
    }
    Node n;
    n.kind = Kind::kVar;
    n.index = lookup_variable(name);
    return push(n);
  }

  Func lookup_function(std::string_view name) const {
    for (const auto& [fname, func] : kFunctions) {
      if (fname == name) return func;
    }
    throw UnknownFunction("unknown function '" + std::string(name) + "'");
  }

  std::uint32_t lookup_variable(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (vars_[i].name == name) return static_cast<std::uint32_t>(i);
    }
    if (name.size() > 1 && name[0] == 'x') {
      std::size_t k = 0;
      auto [end, ec] = std::from_chars(name.data() + 1,
                                       name.data() + name.size(), k);
      if (ec == std::errc() && end == name.data() + name.size() && k >= 1 &&
          k <= vars_.size() && name[1] != '0') {
        return static_cast<std::uint32_t>(k - 1);
      }
    }
    throw UnknownVariable("unknown variable '" + std::string(name) + "'");
  }

  std::string_view src_;
  const std::vector<VariableSpec>& vars_;
  std::size_t pos_ = 0;
  std::vector<Node> nodes_;
};

Expression Expression::parse(std::string_view source,
                             const std::vector<VariableSpec>& variables) {
  return ExpressionParser(source, variables).run();
}

namespace {

double eval_node(const std::vector<Node>& nodes, std::uint32_t i,
                 std::span<const double> x) {
  const Node& n = nodes[i];
  switch (n.kind) {
    case Kind::kConst:
      return n.value;
    case Kind::kVar:
      return x[n.index];
    case Kind::kNeg:
      return -eval_node(nodes, n.lhs, x);
    case Kind::kAdd:
      return eval_node(nodes, n.lhs, x) + eval_node(nodes, n.rhs, x);
    case Kind::kSub:
      return eval_node(nodes, n.lhs, x) - eval_node(nodes, n.rhs, x);
    case Kind::kMul:
      return eval_node(nodes, n.lhs, x) * eval_node(nodes, n.rhs, x);
    case Kind::kDiv:
      return eval_node(nodes, n.lhs, x) / eval_node(nodes, n.rhs, x);
    case Kind::kPow:
      return std::pow(eval_node(nodes, n.lhs, x), eval_node(nodes, n.rhs, x));
    case Kind::kCall: {
      const double a = eval_node(nodes, n.lhs, x);
      switch (static_cast<Func>(n.index)) {
        case Func::kSin: return std::sin(a);
        case Func::kCos: return std::cos(a);
        case Func::kTan: return std::tan(a);
        case Func::kExp: return std::exp(a);
        case Func::kLog: return std::log(a);
        case Func::kAbs: return std::fabs(a);
        case Func::kSqrt: return std::sqrt(a);
      }
      break;
    }
  }
  return std::nan("");
}

void print_node(const std::vector<Node>& nodes, std::uint32_t i,
                const std::vector<VariableSpec>& vars, std::string& out) {
  const Node& n = nodes[i];
  auto bin = [&](char op) {
    out += '(';
    print_node(nodes, n.lhs, vars, out);
    out += ' ';
    out += op;
    out += ' ';
    print_node(nodes, n.rhs, vars, out);
    out += ')';
  };
  switch (n.kind) {
    case Kind::kConst:
      out += format_number(n.value);
      return;
    case Kind::kVar:
      out += n.index < vars.size() ? vars[n.index].name
                                   : "x" + std::to_string(n.index + 1);
      return;
    case Kind::kNeg:
      out += "(-";
      print_node(nodes, n.lhs, vars, out);
      out += ')';
      return;
    case Kind::kAdd: bin('+'); return;
    case Kind::kSub: bin('-'); return;
    case Kind::kMul: bin('*'); return;
    case Kind::kDiv: bin('/'); return;
    case Kind::kPow: bin('^'); return;
    case Kind::kCall:
      out += function_name(static_cast<Func>(n.index));
      out += '(';
      print_node(nodes, n.lhs, vars, out);
      out += ')';
      return;
  }
}

}  // namespace

double Expression::evaluate(std::span<const double> point) const {
  if (point.size() != arity_) {
    throw ArityMismatch("expression takes " + std::to_string(arity_) +
                        " inputs, got " + std::to_string(point.size()));
  }
  return eval_node(nodes_, static_cast<std::uint32_t>(nodes_.size() - 1), point);
}

std::string Expression::to_string(
    const std::vector<VariableSpec>& variables) const {
  std::string out;
  print_node(nodes_, static_cast<std::uint32_t>(nodes_.size() - 1), variables,
             out);
  return out;
}

const std::vector<Benchmark>& benchmark_functions() {
  static const std::vector<Benchmark> kBenchmarks = {
      {"linear", "x1 + x2"},
      {"sum_of_squares", "x1^2 + x2^2"},
      {"sin_plus_cos", "sin(x1) + cos(x2)"},
      {"log_sum_abs", "log(abs(x1) + abs(x2))"},
  };
  return kBenchmarks;
}

const Benchmark& benchmark(std::string_view id) {
  for (const Benchmark& b : benchmark_functions()) {
    if (b.id == id) return b;
  }
  throw ValidationError("unknown benchmark function '" + std::string(id) + "'");
}

}  // namespace posdom
