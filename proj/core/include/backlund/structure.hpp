#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "backlund/expr.hpp"

namespace backlund {

/// Right-hand side F(z, v) of y y'' = F(z, y^2).
using StructureFunction = std::function<double(double z, double v)>;

/// One power-law term a_n (G_n'(z))^(n+1) v^n.
struct PowerTerm {
  int n = 0;
  double coefficient = 0.0;
  Expr g;
};

/// F(z, v) = sum_n a_n (G_n')^(n+1) v^n - 1/2 {w, z} v as a finite term list.
class StructureF {
 public:
  StructureF() = default;

  const std::vector<PowerTerm>& terms() const noexcept { return terms_; }
  const std::optional<Expr>& w() const noexcept { return w_; }

  double operator()(double z, double v) const;
  /// -1/2 {w, z}; zero when w is absent.
  double linear_coefficient(double z) const;

  StructureFunction as_function() const;

 private:
  friend StructureF build_structure_F(std::vector<PowerTerm> terms, std::optional<Expr> w);

  std::vector<PowerTerm> terms_;
  std::optional<Expr> w_;
};

/// DuplicateExponent when two terms share n.
StructureF build_structure_F(std::vector<PowerTerm> terms, std::optional<Expr> w = std::nullopt);

}  // namespace backlund
