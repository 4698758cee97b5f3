#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>

namespace gjw {

using ParamMap = std::map<std::string, double, std::less<>>;

enum class Op {
  Var,
  Const,
  Param,
  Neg,
  Abs,
  Sgn,
  Exp,
  Log,
  Sinh,
  Cosh,
  Tanh,
  Coth,
  Add,
  Sub,
  Mul,
  Div,
  Pow,
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  Op op;
  double value = 0.0;  // Const
  std::string name;    // Param
  NodePtr lhs;         // unary operand or left operand
  NodePtr rhs;         // right operand
};

// Immutable expression tree in one variable `x`.
//
// Grammar (loosest to tightest):
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' unary)?              right-associative
//   primary := number | 'x' | param | func '(' expr ')' | 'pow' '(' expr ',' expr ')' | '(' expr ')'
// with func in {abs, sgn, exp, log, sinh, cosh, tanh, coth}.
class PairAST {
 public:
  PairAST() = default;
  explicit PairAST(NodePtr root) : root_(std::move(root)) {}

  /// Identifiers other than `x` and function names must appear in `parameters`.
  static PairAST parse(std::string_view source, const std::set<std::string, std::less<>>& parameters);
  /// Accepts any identifier as a parameter name.
  static PairAST parse(std::string_view source);

  /// d/dx with d|u| = sgn(u) u' and d sgn(u) = 0; constants folded.
  PairAST differentiate() const;

  double evaluate(double x, const ParamMap& params) const;

  /// Minimal-parenthesis text that parses back to a structurally equal tree.
  std::string to_string() const;

  bool contains(Op op) const;
  std::set<std::string> parameters() const;
  const NodePtr& root() const noexcept { return root_; }
  bool empty() const noexcept { return !root_; }

  friend bool structurally_equal(const PairAST& a, const PairAST& b);

 private:
  NodePtr root_;
};

namespace ast {
NodePtr constant(double v);
NodePtr variable();
NodePtr parameter(std::string name);
NodePtr unary(Op op, NodePtr a);
NodePtr add(NodePtr a, NodePtr b);
NodePtr sub(NodePtr a, NodePtr b);
NodePtr mul(NodePtr a, NodePtr b);
NodePtr div(NodePtr a, NodePtr b);
NodePtr pow(NodePtr a, NodePtr b);
NodePtr neg(NodePtr a);
}  // namespace ast

}  // namespace gjw
