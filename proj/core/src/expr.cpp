#include "backlund/expr.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "backlund/errors.hpp"

namespace backlund {

struct Expr::Node {
  Op op = Op::Constant;
  double parameter = 0.0;
  std::vector<Expr> children;
  std::string name;
  JetFunction fn;
  bool has_variable = false;
};

Expr::Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expr::Expr(double value) {
  auto node = std::make_shared<Node>();
  node->op = Op::Constant;
  node->parameter = value;
  node_ = std::move(node);
}

Expr Expr::make(Op op, double parameter, std::vector<Expr> children) {
  auto node = std::make_shared<Node>();
  node->op = op;
  node->parameter = parameter;
  bool has_variable = false;
  for (const auto& c : children) has_variable = has_variable || c.depends_on_variable();
  node->has_variable = has_variable;
  node->children = std::move(children);
  Expr e{std::shared_ptr<const Node>(std::move(node))};
  if (!has_variable) {
    // Fold constant sub-trees; an invalid constant (ln(-1)) stays symbolic and
    // raises at evaluation time instead.
    try {
      const double v = e.jet(0.0, 0).value();
      if (std::isfinite(v)) return Expr(v);
    } catch (const Error&) {
    }
  }
  return e;
}

Expr Expr::variable() {
  auto node = std::make_shared<Node>();
  node->op = Op::Variable;
  node->has_variable = true;
  return Expr{std::shared_ptr<const Node>(std::move(node))};
}

Expr Expr::named(std::string name, JetFunction fn) { return named(std::move(name), std::move(fn), variable()); }

Expr Expr::named(std::string name, JetFunction fn, const Expr& argument) {
  if (!fn) raise(ErrorKind::InvalidInput, "named function '" + name + "' has no evaluator");
  auto node = std::make_shared<Node>();
  node->op = Op::Named;
  node->name = std::move(name);
  node->fn = std::move(fn);
  node->children = {argument};
  node->has_variable = true;
  return Expr{std::shared_ptr<const Node>(std::move(node))};
}

Expr::Op Expr::op() const noexcept { return node_->op; }

bool Expr::depends_on_variable() const noexcept { return node_->has_variable; }

double Expr::parameter() const noexcept { return node_->parameter; }

Jet Expr::jet(double z, int order) const {
  const Node& n = *node_;
  switch (n.op) {
    case Op::Constant: return Jet::constant(z, order, n.parameter);
    case Op::Variable: return Jet::variable(z, order);
    case Op::Add: return n.children[0].jet(z, order) + n.children[1].jet(z, order);
    case Op::Sub: return n.children[0].jet(z, order) - n.children[1].jet(z, order);
    case Op::Mul: return n.children[0].jet(z, order) * n.children[1].jet(z, order);
    case Op::Div: return n.children[0].jet(z, order) / n.children[1].jet(z, order);
    case Op::Neg: return -n.children[0].jet(z, order);
    case Op::Pow: return pow(n.children[0].jet(z, order), n.parameter);
    case Op::Exp: return exp(n.children[0].jet(z, order));
    case Op::Log: return log(n.children[0].jet(z, order));
    case Op::Sin: return sin(n.children[0].jet(z, order));
    case Op::Cos: return cos(n.children[0].jet(z, order));
    case Op::OddRoot: return odd_root(n.children[0].jet(z, order), static_cast<int>(n.parameter));
    case Op::Named: {
      const Expr& arg = n.children[0];
      if (arg.op() == Op::Variable) return n.fn(z, order);
      const Jet inner = arg.jet(z, order);
      return compose(n.fn(inner.value(), order), inner);
    }
  }
  raise(ErrorKind::InvalidInput, "corrupt expression node");
}

double Expr::operator()(double z) const { return jet(z, 0).value(); }

Expr Expr::substitute(const Expr& inner) const {
  const Node& n = *node_;
  switch (n.op) {
    case Op::Constant: return *this;
    case Op::Variable: return inner;
    case Op::Named: return named(n.name, n.fn, n.children[0].substitute(inner));
    default: break;
  }
  std::vector<Expr> children;
  children.reserve(n.children.size());
  for (const auto& c : n.children) children.push_back(c.substitute(inner));
  return make(n.op, n.parameter, std::move(children));
}

std::string Expr::to_string() const {
  const Node& n = *node_;
  std::ostringstream out;
  out.precision(17);
  auto child = [&](std::size_t i) { return n.children[i].to_string(); };
  switch (n.op) {
    case Op::Constant:
      if (n.parameter < 0) {
        out << '(' << n.parameter << ')';
      } else {
        out << n.parameter;
      }
      break;
    case Op::Variable: out << 'z'; break;
    case Op::Add: out << '(' << child(0) << " + " << child(1) << ')'; break;
    case Op::Sub: out << '(' << child(0) << " - " << child(1) << ')'; break;
    case Op::Mul: out << '(' << child(0) << " * " << child(1) << ')'; break;
    case Op::Div: out << '(' << child(0) << " / " << child(1) << ')'; break;
    case Op::Neg: out << "(-" << child(0) << ')'; break;
    case Op::Pow: {
      out << '(' << child(0) << " ^ ";
      if (n.parameter < 0) {
        out << '(' << n.parameter << ')';
      } else {
        out << n.parameter;
      }
      out << ')';
      break;
    }
    case Op::Exp: out << "exp(" << child(0) << ')'; break;
    case Op::Log: out << "ln(" << child(0) << ')'; break;
    case Op::Sin: out << "sin(" << child(0) << ')'; break;
    case Op::Cos: out << "cos(" << child(0) << ')'; break;
    case Op::OddRoot: out << "root(" << child(0) << ", " << static_cast<int>(n.parameter) << ')'; break;
    case Op::Named: out << n.name << '(' << child(0) << ')'; break;
  }
  return out.str();
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::make(Expr::Op::Add, 0.0, {a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::make(Expr::Op::Sub, 0.0, {a, b}); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::make(Expr::Op::Mul, 0.0, {a, b}); }
Expr operator/(const Expr& a, const Expr& b) { return Expr::make(Expr::Op::Div, 0.0, {a, b}); }
Expr operator-(const Expr& a) { return Expr::make(Expr::Op::Neg, 0.0, {a}); }

Expr pow(const Expr& base, double exponent) {
  if (!std::isfinite(exponent)) raise(ErrorKind::InvalidInput, "non-finite exponent");
  if (exponent == 1.0) return base;
  return Expr::make(Expr::Op::Pow, exponent, {base});
}

Expr pow(const Expr& base, const Expr& exponent) {
  if (!exponent.depends_on_variable()) return pow(base, exponent(0.0));
  return exp(exponent * log(base));
}

Expr exp(const Expr& a) { return Expr::make(Expr::Op::Exp, 0.0, {a}); }
Expr log(const Expr& a) { return Expr::make(Expr::Op::Log, 0.0, {a}); }
Expr sin(const Expr& a) { return Expr::make(Expr::Op::Sin, 0.0, {a}); }
Expr cos(const Expr& a) { return Expr::make(Expr::Op::Cos, 0.0, {a}); }
Expr sqrt(const Expr& a) { return pow(a, 0.5); }

Expr odd_root(const Expr& a, int q) {
  if (q <= 0 || q % 2 == 0) raise(ErrorKind::InvalidInput, "root index must be a positive odd integer");
  if (q == 1) return a;
  return Expr::make(Expr::Op::OddRoot, static_cast<double>(q), {a});
}

Jet jet_eval(const Expr& expr, double z, int order) { return expr.jet(z, order); }

}  // namespace backlund
