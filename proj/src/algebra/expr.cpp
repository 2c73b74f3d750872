#include "nhlab/algebra/expr.hpp"

#include <cmath>
#include <sstream>

#include "nhlab/errors.hpp"

namespace nhlab::algebra {

namespace {
enum class Op { Const, Var, Add, Mul, Neg, Sin, Cos, Sinh, Cosh, Exp };
}  // namespace

struct Expr::Node {
  Op op = Op::Const;
  Complex value{0.0, 0.0};
  int index = 0;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;

  static Expr wrap(std::shared_ptr<const Node> n) { return Expr(std::move(n)); }
  static const std::shared_ptr<const Node>& raw(const Expr& e) { return e.node_; }

  static Expr make(Op op, const Expr& a, const Expr& b = Expr()) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->lhs = raw(a);
    n->rhs = raw(b);
    return wrap(std::move(n));
  }
};

using Node = Expr::Node;

Expr::Expr() : Expr(Complex{0.0, 0.0}) {}

Expr::Expr(Complex c) {
  auto n = std::make_shared<Node>();
  n->value = c;
  node_ = std::move(n);
}

Expr::Expr(double c) : Expr(Complex{c, 0.0}) {}

Expr::Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expr Expr::var(int index) {
  if (index < 0) throw InvalidArgument("Expr::var: negative index");
  auto n = std::make_shared<Node>();
  n->op = Op::Var;
  n->index = index;
  return Expr(std::move(n));
}

bool Expr::is_constant() const { return node_->op == Op::Const; }

bool Expr::is_zero() const {
  return is_constant() && node_->value == Complex{0.0, 0.0};
}

Complex Expr::constant_value() const {
  if (!is_constant()) throw InvalidArgument("Expr: not a constant");
  return node_->value;
}

Complex Expr::operator()(std::span<const double> coords) const {
  const Node& n = *node_;
  auto l = [&] { return Node::wrap(n.lhs)(coords); };
  auto r = [&] { return Node::wrap(n.rhs)(coords); };
  switch (n.op) {
    case Op::Const: return n.value;
    case Op::Var:
      if (static_cast<std::size_t>(n.index) >= coords.size())
        throw InvalidArgument("Expr: coordinate index out of range");
      return coords[static_cast<std::size_t>(n.index)];
    case Op::Add: return l() + r();
    case Op::Mul: return l() * r();
    case Op::Neg: return -l();
    case Op::Sin: return std::sin(l());
    case Op::Cos: return std::cos(l());
    case Op::Sinh: return std::sinh(l());
    case Op::Cosh: return std::cosh(l());
    case Op::Exp: return std::exp(l());
  }
  return {};
}

Expr Expr::diff(int index) const {
  const Node& n = *node_;
  const Expr a = n.lhs ? Node::wrap(n.lhs) : Expr();
  const Expr b = n.rhs ? Node::wrap(n.rhs) : Expr();
  switch (n.op) {
    case Op::Const: return Expr(0.0);
    case Op::Var: return Expr(n.index == index ? 1.0 : 0.0);
    case Op::Add: return a.diff(index) + b.diff(index);
    case Op::Mul: return a.diff(index) * b + a * b.diff(index);
    case Op::Neg: return -a.diff(index);
    case Op::Sin: return cos(a) * a.diff(index);
    case Op::Cos: return -(sin(a) * a.diff(index));
    case Op::Sinh: return cosh(a) * a.diff(index);
    case Op::Cosh: return sinh(a) * a.diff(index);
    case Op::Exp: return *this * a.diff(index);
  }
  return Expr(0.0);
}

std::string Expr::str() const {
  const Node& n = *node_;
  std::ostringstream os;
  auto sub = [](const std::shared_ptr<const Node>& p) { return Node::wrap(p).str(); };
  switch (n.op) {
    case Op::Const:
      if (n.value.imag() == 0.0) os << n.value.real();
      else os << "(" << n.value.real() << (n.value.imag() < 0 ? "" : "+")
              << n.value.imag() << "i)";
      break;
    case Op::Var:
      if (n.index == 0) os << "t";
      else os << "x" << n.index;
      break;
    case Op::Add: os << "(" << sub(n.lhs) << " + " << sub(n.rhs) << ")"; break;
    case Op::Mul: os << sub(n.lhs) << "*" << sub(n.rhs); break;
    case Op::Neg: os << "-" << sub(n.lhs); break;
    case Op::Sin: os << "sin(" << sub(n.lhs) << ")"; break;
    case Op::Cos: os << "cos(" << sub(n.lhs) << ")"; break;
    case Op::Sinh: os << "sinh(" << sub(n.lhs) << ")"; break;
    case Op::Cosh: os << "cosh(" << sub(n.lhs) << ")"; break;
    case Op::Exp: os << "exp(" << sub(n.lhs) << ")"; break;
  }
  return os.str();
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant())
    return Expr(a.constant_value() + b.constant_value());
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return Node::make(Op::Add, a, b);
}

Expr operator-(const Expr& a) {
  if (a.is_constant()) return Expr(-a.constant_value());
  if (a.node_->op == Op::Neg) return Node::wrap(a.node_->lhs);
  return Node::make(Op::Neg, a);
}

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant())
    return Expr(a.constant_value() * b.constant_value());
  if (a.is_zero() || b.is_zero()) return Expr(0.0);
  if (a.is_constant() && a.constant_value() == Complex{1.0, 0.0}) return b;
  if (b.is_constant() && b.constant_value() == Complex{1.0, 0.0}) return a;
  return Node::make(Op::Mul, a, b);
}

Expr sin(const Expr& a) {
  return a.is_constant() ? Expr(std::sin(a.constant_value())) : Node::make(Op::Sin, a);
}
Expr cos(const Expr& a) {
  return a.is_constant() ? Expr(std::cos(a.constant_value())) : Node::make(Op::Cos, a);
}
Expr sinh(const Expr& a) {
  return a.is_constant() ? Expr(std::sinh(a.constant_value())) : Node::make(Op::Sinh, a);
}
Expr cosh(const Expr& a) {
  return a.is_constant() ? Expr(std::cosh(a.constant_value())) : Node::make(Op::Cosh, a);
}
Expr exp(const Expr& a) {
  return a.is_constant() ? Expr(std::exp(a.constant_value())) : Node::make(Op::Exp, a);
}

}  // namespace nhlab::algebra
