#pragma once

#include "backlund/expr.hpp"
#include "backlund/moebius.hpp"
#include "backlund/solution.hpp"

namespace backlund {

inline constexpr double kLinearResidualTol = 1e-9;
inline constexpr int kLinearCheckPoints = 64;

/// Two solutions g0, g1 of g'' = 2 P' g' + Q g together with the frame
/// (A, B, C, D) that defines G = (A w + B) / (C w + D), w = g0 / g1.
///
/// Construction checks both ODE residuals (relative, kLinearResidualTol) and
/// the non-vanishing of g1 and C g0 + D g1 on a grid over `domain`, then
/// fixes the Wronskian constant C1 = W e^{-2P}.
class LinearPair {
 public:
  LinearPair(Expr P, Expr Q, Expr g0, Expr g1, MoebiusMap frame, Interval domain);

  const Expr& P() const noexcept { return P_; }
  const Expr& Q() const noexcept { return Q_; }
  const Expr& g0() const noexcept { return g0_; }
  const Expr& g1() const noexcept { return g1_; }
  const MoebiusMap& frame() const noexcept { return frame_; }
  const Interval& domain() const noexcept { return domain_; }
  double wronskian_constant() const noexcept { return c1_; }

  /// w = g0 / g1.
  Expr w() const { return g0_ / g1_; }
  /// G = (A w + B) / (C w + D).
  Expr G() const { return frame_.apply(w()); }

  /// Relative residual of g'' = 2P'g' + Qg for g at z.
  double linear_residual(const Expr& g, double z) const;

 private:
  Expr P_;
  Expr Q_;
  Expr g0_;
  Expr g1_;
  MoebiusMap frame_;
  Interval domain_;
  double c1_ = 0.0;
};

/// {g0/g1, z} - 2 (P'' - P'^2 - Q).
double ratio_schwarzian_check(const LinearPair& pair, double z);

/// Delta C1 (e^P / (C g0 + D g1))^2, which equals G'(z) when C1 is the
/// pair's Wronskian constant.
double wronskian_G_prime(const LinearPair& pair, double c1, double z);

}  // namespace backlund
