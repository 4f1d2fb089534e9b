#include "wcs/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace wcs {

namespace {
enum class Op { constant, var, add, sub, mul, div, neg, pow_, sin_, cos_, sinh_, cosh_, exp_, log_ };
}

struct Expr::Node {
  Op op = Op::constant;
  double value = 0.0;
  std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

NodePtr make(Op op, NodePtr a = nullptr, NodePtr b = nullptr) {
  auto n = std::make_shared<Expr::Node>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

NodePtr make_const(double v) {
  auto n = std::make_shared<Expr::Node>();
  n->op = Op::constant;
  n->value = v;
  return n;
}

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodePtr run() {
    NodePtr e = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return e;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("expression parse error at position " +
                                std::to_string(pos_) + ": " + what + " in '" + s_ + "'");
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (eat('+')) lhs = make(Op::add, lhs, term());
      else if (eat('-')) lhs = make(Op::sub, lhs, term());
      else return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    for (;;) {
      if (eat('*')) lhs = make(Op::mul, lhs, factor());
      else if (eat('/')) lhs = make(Op::div, lhs, factor());
      else return lhs;
    }
  }

  NodePtr factor() {
    if (eat('-')) return make(Op::neg, factor());
    if (eat('+')) return factor();
    return power();
  }

  NodePtr power() {
    NodePtr base = atom();
    if (eat('^')) return make(Op::pow_, base, factor());
    return base;
  }

  NodePtr atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return name();
    fail(std::string("unexpected character '") + c + "'");
  }

  NodePtr number() {
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) fail("bad number");
    pos_ += static_cast<std::size_t>(end - begin);
    return make_const(v);
  }

  NodePtr name() {
    std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    std::string id = s_.substr(start, pos_ - start);
    if (id == "t") return make(Op::var);
    if (id == "pi") return make_const(M_PI);
    Op op;
    int arity = 1;
    if (id == "sin") op = Op::sin_;
    else if (id == "cos") op = Op::cos_;
    else if (id == "sinh") op = Op::sinh_;
    else if (id == "cosh") op = Op::cosh_;
    else if (id == "exp") op = Op::exp_;
    else if (id == "log") op = Op::log_;
    else if (id == "pow") { op = Op::pow_; arity = 2; }
    else fail("unknown identifier '" + id + "'");
    if (!eat('(')) fail("expected '(' after '" + id + "'");
    NodePtr a = expr();
    NodePtr b;
    if (arity == 2) {
      if (!eat(',')) fail("pow takes two arguments");
      b = expr();
    }
    if (!eat(')')) fail("expected ')'");
    return arity == 2 ? make(op, a, b) : make(op, a);
  }
};

double eval_node(const Expr::Node& n, double t) {
  switch (n.op) {
    case Op::constant: return n.value;
    case Op::var: return t;
    case Op::add: return eval_node(*n.a, t) + eval_node(*n.b, t);
    case Op::sub: return eval_node(*n.a, t) - eval_node(*n.b, t);
    case Op::mul: return eval_node(*n.a, t) * eval_node(*n.b, t);
    case Op::div: return eval_node(*n.a, t) / eval_node(*n.b, t);
    case Op::neg: return -eval_node(*n.a, t);
    case Op::pow_: return std::pow(eval_node(*n.a, t), eval_node(*n.b, t));
    case Op::sin_: return std::sin(eval_node(*n.a, t));
    case Op::cos_: return std::cos(eval_node(*n.a, t));
    case Op::sinh_: return std::sinh(eval_node(*n.a, t));
    case Op::cosh_: return std::cosh(eval_node(*n.a, t));
    case Op::exp_: return std::exp(eval_node(*n.a, t));
    case Op::log_: return std::log(eval_node(*n.a, t));
  }
  throw std::logic_error("expr: bad op");
}

}  // namespace

Expr Expr::parse(const std::string& src) {
  Expr e;
  e.root_ = Parser(src).run();
  e.src_ = src;
  return e;
}

double Expr::eval(double t) const {
  if (!root_) throw std::invalid_argument("expr: evaluating empty expression");
  return eval_node(*root_, t);
}

}  // namespace wcs
