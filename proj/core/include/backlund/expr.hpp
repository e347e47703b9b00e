#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "backlund/jet.hpp"

namespace backlund {

/// A user evaluator bound into an expression: returns the jet of the
/// function at `z` to the requested order.
using JetFunction = std::function<Jet(double z, int order)>;
using NamedFunctions = std::map<std::string, JetFunction, std::less<>>;

/// Immutable expression tree in one variable.
///
/// Nodes are shared, so copying an Expr is cheap and sub-trees can be reused
/// across families. Evaluation goes through jets: `jet(z, n)` returns the
/// exact derivatives 0..n propagated by truncated Taylor arithmetic.
class Expr {
 public:
  enum class Op {
    Constant,
    Variable,
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Pow,
    Exp,
    Log,
    Sin,
    Cos,
    OddRoot,
    Named,
  };

  Expr(double value);  // NOLINT(google-explicit-constructor): constants mix freely into arithmetic
  Expr() : Expr(0.0) {}

  static Expr variable();
  /// Leaf bound to a user evaluator; the optional argument composes it.
  static Expr named(std::string name, JetFunction fn);
  static Expr named(std::string name, JetFunction fn, const Expr& argument);

  Op op() const noexcept;
  bool depends_on_variable() const noexcept;
  /// Value of a Constant node (or exponent / root index for Pow and OddRoot).
  double parameter() const noexcept;

  Jet jet(double z, int order = kDefaultJetOrder) const;
  double operator()(double z) const;

  /// this(inner(z)): every occurrence of the variable replaced by `inner`.
  Expr substitute(const Expr& inner) const;

  std::string to_string() const;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);
  friend Expr pow(const Expr& base, double exponent);
  friend Expr pow(const Expr& base, const Expr& exponent);
  friend Expr exp(const Expr& a);
  friend Expr log(const Expr& a);
  friend Expr sin(const Expr& a);
  friend Expr cos(const Expr& a);
  friend Expr sqrt(const Expr& a);
  friend Expr odd_root(const Expr& a, int q);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node);
  static Expr make(Op op, double parameter, std::vector<Expr> children);

  std::shared_ptr<const Node> node_;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& base, double exponent);
Expr pow(const Expr& base, const Expr& exponent);
Expr exp(const Expr& a);
Expr log(const Expr& a);
Expr sin(const Expr& a);
Expr cos(const Expr& a);
Expr sqrt(const Expr& a);
/// Real odd root sign(x)|x|^(1/q).
Expr odd_root(const Expr& a, int q);

/// Jet of `expr` at z to `order`, propagated exactly (no differencing).
Jet jet_eval(const Expr& expr, double z, int order = kDefaultJetOrder);

/// Parses the infix grammar documented in docs/expressions.md:
/// numbers, `z`, `pi`, + - * / ^, unary minus, exp ln log sin cos sqrt,
/// root(x, q) for odd q, and any name registered in `functions`.
Expr parse_expr(std::string_view text, const NamedFunctions& functions = {});

}  // namespace backlund
