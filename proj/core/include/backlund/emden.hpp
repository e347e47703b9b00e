#pragma once

#include <utility>
#include <vector>

#include "backlund/expr.hpp"
#include "backlund/linear_pair.hpp"
#include "backlund/moebius.hpp"
#include "backlund/solution.hpp"
#include "backlund/structure.hpp"

namespace backlund {

/// Parameters of the Emden-Fowler examples in canonical form
///   y'' + beta/(alpha-1)^2 * y^{2m-1} / s(z)^{2m+2} = 0,
/// with s(z) = z (first example) or s(z) = eta + gamma z (second example).
/// The first example is (eta, gamma) = (0, 1).
struct EmdenParams {
  double alpha = 2.0;
  double beta = -2.0;
  int m = 2;
  double eta = 0.0;
  double gamma = 1.0;
  /// a0 b1 - a1 b0 of the linear-equation solutions (second example only).
  double delta = 1.0;

  /// InvalidInput unless alpha != 1, m != 1, (eta, gamma) != (0, 0), delta != 0.
  void validate() const;
  double coupling() const { return beta / ((alpha - 1.0) * (alpha - 1.0)); }
  double seed_exponent() const { return static_cast<double>(m) / (m - 1); }
};

enum class EmdenVariant { First = 1, Second = 2 };

struct SeedConstant {
  double p;
  /// Remaining real roots of the constraint (the negative mirror of p).
  std::vector<double> other_real_roots;
};

/// Smallest positive real p with beta (m-1)^2 p^{2m-2} + m g^2 (alpha-1)^2 = 0,
/// g = 1 (first) or gamma (second). NoRealSeed when none exists.
SeedConstant ef_seed_constant(const EmdenParams& params, EmdenVariant variant);

/// (x, q) -> (z, y) with z = x^{alpha-1}, y = q z.
std::pair<double, double> ef_to_canonical(double x, double q, double alpha);
/// (z, y) -> (x, q).
std::pair<double, double> ef_from_canonical(double z, double y, double alpha);

/// y0 = p z^{m/(m-1)} on (0, inf).
SolutionEvaluator ef1_seed(const EmdenParams& params);

/// f(z) = Delta z / (K z + Delta).
Expr ef1_f(double delta_step, double k_step);

/// y1 = y0(f(z)) |K z + Delta| / |Delta|, on the largest sub-interval of
/// `requested` with K z + Delta > 0 and f(z) inside y0's domain.
SolutionEvaluator ef1_backlund(const SolutionEvaluator& y0, double delta_step, double k_step, Interval requested);

struct LadderState {
  double R = 1.0;
  double S = 0.0;
  std::vector<std::pair<double, double>> steps;

  /// R <- Delta R, S <- Delta S + K R.
  void apply(double delta_step, double k_step);
};

LadderState ladder_fold(const std::vector<std::pair<double, double>>& steps);

struct LadderResult {
  LadderState state;
  SolutionEvaluator solution;
};

/// Folds the step list and returns the closed-form n-th solution
///   y_n = p (R z / (S z + R))^{m/(m-1)} |S z + R| / |R|.
LadderResult ef1_ladder(const EmdenParams& params, const std::vector<std::pair<double, double>>& steps,
                        Interval requested);

/// ((K eta gamma + Delta delta) z + K eta^2) / ((Delta delta - K eta gamma) - K gamma^2 z)
MoebiusMap ef2_moebius(const EmdenParams& params, double delta_step, double k_step);
Expr ef2_f(const EmdenParams& params, double delta_step, double k_step);

/// y0 = p (eta + gamma z)^{m/(m-1)} where eta + gamma z > 0 and z > 0.
SolutionEvaluator ef2_seed(const EmdenParams& params);

/// y1 = y0(f(z)) |den| / |Delta delta| with den = (Delta delta - K eta gamma) - K gamma^2 z.
SolutionEvaluator ef2_backlund(const SolutionEvaluator& y0, const EmdenParams& params, double delta_step,
                               double k_step, Interval requested);

/// Closed form of ef2_backlund applied to the seed:
///   y1^2 = p^2 (Delta delta s(z) / den)^{2m/(m-1)} (den / (Delta delta))^2.
SolutionEvaluator ef2_transformed(const EmdenParams& params, double delta_step, double k_step,
                                  Interval requested);

/// y'' + beta/(alpha-1)^2 y^{2m-1} / s(z)^{2m+2} at y.point().
double ef_residual(const Jet& y, const EmdenParams& params, EmdenVariant variant);
/// Magnitude of the nonlinear term.
double ef_residual_scale(const Jet& y, const EmdenParams& params, EmdenVariant variant);

/// x q'' + alpha q' + beta x^{1-2 alpha} r(x) q^{2m-1} at x = q.point(), with
/// r = 1 (first) or (x^{alpha-1} / (eta + gamma x^{alpha-1}))^{2m+2} (second).
double ef_original_residual(const Jet& q, const EmdenParams& params, EmdenVariant variant);
/// |x q''| + |alpha q'| + |nonlinear term|.
double ef_original_residual_scale(const Jet& q, const EmdenParams& params, EmdenVariant variant);

/// q(x) = y(x^{alpha-1}) / x^{alpha-1} as a solution in the original variable.
SolutionEvaluator to_original_coordinates(const SolutionEvaluator& y, double alpha);

/// G with G' = 1 / s(z)^2: -1/z, -1/(gamma (eta + gamma z)), or z/eta^2 when gamma = 0.
Expr ef_G(const EmdenParams& params, EmdenVariant variant);

/// The constant K_G with G(f(z)) = G(z) + K_G for the variant's f.
double ef_G_shift(const EmdenParams& params, EmdenVariant variant, double delta_step, double k_step);

/// F(z, v) = -beta/(alpha-1)^2 (G')^{m+1} v^m (no Schwarzian term).
StructureF ef_structure(const EmdenParams& params, EmdenVariant variant);

/// The variant's Backlund f as an expression.
Expr ef_f(const EmdenParams& params, EmdenVariant variant, double delta_step, double k_step);

/// g0 = e^P (a0 z + b0), g1 = e^P (gamma z + eta) with Q = P'' - P'^2 and frame
/// (Delta, 0, 0, 1), realising the given delta. Then G = Delta g0/g1 obeys
/// G(f) = G + K for the second-example f.
LinearPair ef_linear_pair(const EmdenParams& params, double delta_step, const Expr& P, Interval domain);

}  // namespace backlund
