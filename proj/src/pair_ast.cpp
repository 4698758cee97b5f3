#include "gjw/pair_ast.hpp"

#include <charconv>
#include <cctype>
#include <cmath>

#include "gjw/errors.hpp"
#include "gjw/graph_io.hpp"

namespace gjw {

namespace ast {

namespace {
NodePtr make(Op op, NodePtr a = nullptr, NodePtr b = nullptr) {
  return std::make_shared<const Node>(Node{op, 0.0, {}, std::move(a), std::move(b)});
}
bool is_const(const NodePtr& n, double v) { return n->op == Op::Const && n->value == v; }
bool is_const(const NodePtr& n) { return n->op == Op::Const; }
}  // namespace

NodePtr constant(double v) { return std::make_shared<const Node>(Node{Op::Const, v, {}, nullptr, nullptr}); }
NodePtr variable() { return make(Op::Var); }
NodePtr parameter(std::string name) {
  return std::make_shared<const Node>(Node{Op::Param, 0.0, std::move(name), nullptr, nullptr});
}

NodePtr neg(NodePtr a) {
  if (is_const(a)) return constant(-a->value);
  if (a->op == Op::Neg) return a->lhs;
  return make(Op::Neg, std::move(a));
}

NodePtr unary(Op op, NodePtr a) {
  if (op == Op::Neg) return neg(std::move(a));
  return make(op, std::move(a));
}

NodePtr add(NodePtr a, NodePtr b) {
  if (is_const(a) && is_const(b)) return constant(a->value + b->value);
  if (is_const(a, 0.0)) return b;
  if (is_const(b, 0.0)) return a;
  return make(Op::Add, std::move(a), std::move(b));
}

NodePtr sub(NodePtr a, NodePtr b) {
  if (is_const(a) && is_const(b)) return constant(a->value - b->value);
  if (is_const(b, 0.0)) return a;
  if (is_const(a, 0.0)) return neg(std::move(b));
  return make(Op::Sub, std::move(a), std::move(b));
}

NodePtr mul(NodePtr a, NodePtr b) {
  if (is_const(a) && is_const(b)) return constant(a->value * b->value);
  if (is_const(a, 0.0) || is_const(b, 0.0)) return constant(0.0);
  if (is_const(a, 1.0)) return b;
  if (is_const(b, 1.0)) return a;
  return make(Op::Mul, std::move(a), std::move(b));
}

NodePtr div(NodePtr a, NodePtr b) {
  if (is_const(a) && is_const(b) && b->value != 0.0) return constant(a->value / b->value);
  if (is_const(a, 0.0)) return constant(0.0);
  if (is_const(b, 1.0)) return a;
  return make(Op::Div, std::move(a), std::move(b));
}

NodePtr pow(NodePtr a, NodePtr b) {
  if (is_const(a) && is_const(b)) return constant(std::pow(a->value, b->value));
  if (is_const(b, 1.0)) return a;
  if (is_const(b, 0.0)) return constant(1.0);
  return make(Op::Pow, std::move(a), std::move(b));
}

}  // namespace ast

namespace {

const char* function_name(Op op) {
  switch (op) {
    case Op::Abs: return "abs";
    case Op::Sgn: return "sgn";
    case Op::Exp: return "exp";
    case Op::Log: return "log";
    case Op::Sinh: return "sinh";
    case Op::Cosh: return "cosh";
    case Op::Tanh: return "tanh";
    case Op::Coth: return "coth";
    default: return nullptr;
  }
}

bool function_op(std::string_view name, Op& out) {
  static constexpr std::pair<std::string_view, Op> table[] = {
      {"abs", Op::Abs},   {"sgn", Op::Sgn},   {"exp", Op::Exp},   {"log", Op::Log},
      {"sinh", Op::Sinh}, {"cosh", Op::Cosh}, {"tanh", Op::Tanh}, {"coth", Op::Coth}};
  for (auto [n, op] : table) {
    if (n == name) {
      out = op;
      return true;
    }
  }
  return false;
}

class ExprParser {
 public:
  ExprParser(std::string_view src, const std::set<std::string, std::less<>>* params)
      : src_(src), params_(params) {}

  NodePtr parse() {
    skip_ws();
    if (pos_ == src_.size()) throw ParseError(pos_, "empty expression");
    NodePtr e = expr();
    skip_ws();
    if (pos_ != src_.size()) throw ParseError(pos_, "expected operator or end of input");
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) throw ParseError(pos_, std::string("expected '") + c + "'");
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) lhs = raw(Op::Add, lhs, term());
      else if (accept('-')) lhs = raw(Op::Sub, lhs, term());
      else return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) lhs = raw(Op::Mul, lhs, unary());
      else if (accept('/')) lhs = raw(Op::Div, lhs, unary());
      else return lhs;
    }
  }

  NodePtr unary() {
    if (accept('-')) return ast::neg(unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return raw(Op::Pow, base, unary());
    return base;
  }

  NodePtr primary() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError(pos_, "expected operand (number, x, parameter, call or '(')");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t at = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      const std::string_view name = src_.substr(at, pos_ - at);
      skip_ws();
      const bool call = pos_ < src_.size() && src_[pos_] == '(';
      Op fn;
      if (call && function_op(name, fn)) {
        ++pos_;
        NodePtr arg = expr();
        expect(')');
        return ast::unary(fn, arg);
      }
      if (call && name == "pow") {
        ++pos_;
        NodePtr a = expr();
        expect(',');
        NodePtr b = expr();
        expect(')');
        return raw(Op::Pow, a, b);
      }
      if (call) throw UnknownIdentifierError(at, std::string(name));
      if (name == "x") return ast::variable();
      if (params_ && !params_->contains(name)) throw UnknownIdentifierError(at, std::string(name));
      return ast::parameter(std::string(name));
    }
    throw ParseError(pos_, std::string("unexpected character '") + c + "'");
  }

  NodePtr number() {
    const std::size_t at = pos_;
    std::size_t end = pos_;
    while (end < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[end])) || src_[end] == '.')) ++end;
    if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
      std::size_t k = end + 1;
      if (k < src_.size() && (src_[k] == '+' || src_[k] == '-')) ++k;
      if (k < src_.size() && std::isdigit(static_cast<unsigned char>(src_[k]))) {
        end = k;
        while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end]))) ++end;
      }
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(src_.data() + at, src_.data() + end, v);
    if (ec != std::errc{} || ptr != src_.data() + end) throw ParseError(at, "malformed number");
    pos_ = end;
    return ast::constant(v);
  }

  // Parsed trees keep their written shape; only negated literals are folded.
  static NodePtr raw(Op op, NodePtr a, NodePtr b) {
    return std::make_shared<const Node>(Node{op, 0.0, {}, std::move(a), std::move(b)});
  }

  std::string_view src_;
  const std::set<std::string, std::less<>>* params_;
  std::size_t pos_ = 0;
};

bool depends_on_x(const NodePtr& n) {
  if (!n) return false;
  if (n->op == Op::Var) return true;
  return depends_on_x(n->lhs) || depends_on_x(n->rhs);
}

NodePtr derive(const NodePtr& n) {
  using namespace ast;
  const NodePtr& u = n->lhs;
  switch (n->op) {
    case Op::Var: return constant(1.0);
    case Op::Const:
    case Op::Param:
    case Op::Sgn: return constant(0.0);
    case Op::Neg: return neg(derive(u));
    case Op::Abs: return mul(unary(Op::Sgn, u), derive(u));
    case Op::Exp: return mul(derive(u), n);
    case Op::Log: return div(derive(u), u);
    case Op::Sinh: return mul(derive(u), unary(Op::Cosh, u));
    case Op::Cosh: return mul(derive(u), unary(Op::Sinh, u));
    case Op::Tanh: return mul(derive(u), sub(constant(1.0), pow(n, constant(2.0))));
    case Op::Coth: return neg(div(derive(u), pow(unary(Op::Sinh, u), constant(2.0))));
    case Op::Add: return add(derive(n->lhs), derive(n->rhs));
    case Op::Sub: return sub(derive(n->lhs), derive(n->rhs));
    case Op::Mul:
      return add(mul(derive(n->lhs), n->rhs), mul(n->lhs, derive(n->rhs)));
    case Op::Div:
      return sub(div(derive(n->lhs), n->rhs),
                 div(mul(n->lhs, derive(n->rhs)), pow(n->rhs, constant(2.0))));
    case Op::Pow: {
      const NodePtr& base = n->lhs;
      const NodePtr& expo = n->rhs;
      if (!depends_on_x(expo))
        return mul(mul(expo, derive(base)), pow(base, sub(expo, constant(1.0))));
      return mul(n, add(mul(derive(expo), unary(Op::Log, base)),
                        div(mul(expo, derive(base)), base)));
    }
  }
  return constant(0.0);
}

double eval(const NodePtr& n, double x, const ParamMap& p) {
  switch (n->op) {
    case Op::Var: return x;
    case Op::Const: return n->value;
    case Op::Param: {
      auto it = p.find(n->name);
      if (it == p.end()) throw ParameterError("unbound parameter '" + n->name + "'");
      return it->second;
    }
    case Op::Neg: return -eval(n->lhs, x, p);
    case Op::Abs: return std::fabs(eval(n->lhs, x, p));
    case Op::Sgn: {
      const double v = eval(n->lhs, x, p);
      return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0);
    }
    case Op::Exp: return std::exp(eval(n->lhs, x, p));
    case Op::Log: return std::log(eval(n->lhs, x, p));
    case Op::Sinh: return std::sinh(eval(n->lhs, x, p));
    case Op::Cosh: return std::cosh(eval(n->lhs, x, p));
    case Op::Tanh: return std::tanh(eval(n->lhs, x, p));
    case Op::Coth: return 1.0 / std::tanh(eval(n->lhs, x, p));
    case Op::Add: return eval(n->lhs, x, p) + eval(n->rhs, x, p);
    case Op::Sub: return eval(n->lhs, x, p) - eval(n->rhs, x, p);
    case Op::Mul: return eval(n->lhs, x, p) * eval(n->rhs, x, p);
    case Op::Div: return eval(n->lhs, x, p) / eval(n->rhs, x, p);
    case Op::Pow: return std::pow(eval(n->lhs, x, p), eval(n->rhs, x, p));
  }
  return 0.0;
}

// Printing precedence: 1 additive, 2 multiplicative, 3 unary, 4 power, 5 primary.
int precedence(const NodePtr& n) {
  switch (n->op) {
    case Op::Add:
    case Op::Sub: return 1;
    case Op::Mul:
    case Op::Div: return 2;
    case Op::Neg: return 3;
    case Op::Const: return n->value < 0.0 || std::signbit(n->value) ? 3 : 5;
    case Op::Pow: return 4;
    default: return 5;
  }
}

void print(const NodePtr& n, int min_prec, std::string& out) {
  const bool paren = precedence(n) < min_prec;
  if (paren) out += '(';
  switch (n->op) {
    case Op::Var: out += 'x'; break;
    case Op::Const: out += format_number(n->value); break;
    case Op::Param: out += n->name; break;
    case Op::Neg:
      out += '-';
      print(n->lhs, 3, out);
      break;
    case Op::Add:
    case Op::Sub:
      print(n->lhs, 1, out);
      out += n->op == Op::Add ? '+' : '-';
      print(n->rhs, 2, out);
      break;
    case Op::Mul:
    case Op::Div:
      print(n->lhs, 2, out);
      out += n->op == Op::Mul ? '*' : '/';
      print(n->rhs, 3, out);
      break;
    case Op::Pow:
      print(n->lhs, 5, out);
      out += '^';
      print(n->rhs, 3, out);
      break;
    default:
      out += function_name(n->op);
      out += '(';
      print(n->lhs, 0, out);
      out += ')';
      break;
  }
  if (paren) out += ')';
}

bool same(const NodePtr& a, const NodePtr& b) {
  if (!a || !b) return !a && !b;
  if (a->op != b->op) return false;
  if (a->op == Op::Const && a->value != b->value) return false;
  if (a->op == Op::Param && a->name != b->name) return false;
  return same(a->lhs, b->lhs) && same(a->rhs, b->rhs);
}

bool has(const NodePtr& n, Op op) {
  if (!n) return false;
  return n->op == op || has(n->lhs, op) || has(n->rhs, op);
}

void collect(const NodePtr& n, std::set<std::string>& out) {
  if (!n) return;
  if (n->op == Op::Param) out.insert(n->name);
  collect(n->lhs, out);
  collect(n->rhs, out);
}

}  // namespace

PairAST PairAST::parse(std::string_view source, const std::set<std::string, std::less<>>& parameters) {
  return PairAST(ExprParser(source, &parameters).parse());
}

PairAST PairAST::parse(std::string_view source) { return PairAST(ExprParser(source, nullptr).parse()); }

PairAST PairAST::differentiate() const { return PairAST(derive(root_)); }

double PairAST::evaluate(double x, const ParamMap& params) const { return eval(root_, x, params); }

std::string PairAST::to_string() const {
  std::string out;
  if (root_) print(root_, 0, out);
  return out;
}

bool PairAST::contains(Op op) const { return has(root_, op); }

std::set<std::string> PairAST::parameters() const {
  std::set<std::string> out;
  collect(root_, out);
  return out;
}

bool structurally_equal(const PairAST& a, const PairAST& b) { return same(a.root_, b.root_); }

}  // namespace gjw
