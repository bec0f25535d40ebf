#include "pxlap/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <vector>

namespace pxlap {

namespace {

enum class Op { Num, VarX, VarY, Add, Sub, Mul, Div, Pow, Neg };

}  // namespace

struct Expression::Node {
  Op op = Op::Num;
  double value = 0.0;
  std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

struct Parser {
  const std::string& s;
  size_t pos = 0;

  explicit Parser(const std::string& text) : s(text) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw ExpressionError("expression error at position " + std::to_string(pos) + ": " + what +
                          " in \"" + s + "\"");
  }

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  bool consume(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  static NodePtr make(Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr, double v = 0.0) {
    auto n = std::make_shared<Expression::Node>();
    n->op = op;
    n->value = v;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
  }

  NodePtr parse_sum() {
    NodePtr lhs = parse_product();
    for (;;) {
      if (consume('+'))
        lhs = make(Op::Add, lhs, parse_product());
      else if (consume('-'))
        lhs = make(Op::Sub, lhs, parse_product());
      else
        return lhs;
    }
  }

  NodePtr parse_product() {
    NodePtr lhs = parse_unary();
    for (;;) {
      if (consume('*'))
        lhs = make(Op::Mul, lhs, parse_unary());
      else if (consume('/'))
        lhs = make(Op::Div, lhs, parse_unary());
      else
        return lhs;
    }
  }

  NodePtr parse_unary() {
    if (consume('-')) return make(Op::Neg, parse_unary());
    return parse_power();
  }

  // '^' binds tighter than unary minus and associates to the right.
  NodePtr parse_power() {
    NodePtr base = parse_atom();
    if (consume('^')) {
      NodePtr exp = consume('-') ? make(Op::Neg, parse_power()) : parse_power();
      return make(Op::Pow, base, exp);
    }
    return base;
  }

  NodePtr parse_atom() {
    skip_ws();
    if (pos >= s.size()) fail("unexpected end of input");
    char c = s[pos];
    if (c == '(') {
      ++pos;
      NodePtr inner = parse_sum();
      if (!consume(')')) fail("missing ')'");
      return inner;
    }
    if (c == 'x') {
      ++pos;
      return make(Op::VarX);
    }
    if (c == 'y') {
      ++pos;
      return make(Op::VarY);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s.c_str() + pos;
      char* end = nullptr;
      double v = std::strtod(begin, &end);
      if (end == begin) fail("bad numeric literal");
      pos += static_cast<size_t>(end - begin);
      return make(Op::Num, nullptr, nullptr, v);
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

double eval_node(const Expression::Node& n, double x, double y) {
  switch (n.op) {
    case Op::Num: return n.value;
    case Op::VarX: return x;
    case Op::VarY: return y;
    case Op::Add: return eval_node(*n.lhs, x, y) + eval_node(*n.rhs, x, y);
    case Op::Sub: return eval_node(*n.lhs, x, y) - eval_node(*n.rhs, x, y);
    case Op::Mul: return eval_node(*n.lhs, x, y) * eval_node(*n.rhs, x, y);
    case Op::Div: return eval_node(*n.lhs, x, y) / eval_node(*n.rhs, x, y);
    case Op::Pow: return std::pow(eval_node(*n.lhs, x, y), eval_node(*n.rhs, x, y));
    case Op::Neg: return -eval_node(*n.lhs, x, y);
  }
  return 0.0;
}

}  // namespace

Expression Expression::parse(const std::string& text) {
  Parser p(text);
  NodePtr root = p.parse_sum();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  Expression e;
  e.text_ = text;
  e.root_ = std::move(root);
  return e;
}

double Expression::eval(double x, double y) const {
  return eval_node(*root_, x, y);
}

}  // namespace pxlap
