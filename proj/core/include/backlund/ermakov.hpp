#pragma once

#include "backlund/expr.hpp"
#include "backlund/linear_pair.hpp"
#include "backlund/moebius.hpp"
#include "backlund/solution.hpp"
#include "backlund/structure.hpp"

namespace backlund {

/// y'' = Q(z) y - alpha / y^3 with Q(z) = p^2 (2k+1)^2 z^{4k} / 4 + k(k+1) / z^2.
struct ErmakovParams {
  double alpha = 1.0;
  int k = 0;
  double p = 1.0;
  MoebiusMap moebius = MoebiusMap::identity();

  /// InvalidInput unless alpha > 0, p > 0, k >= 0.
  void validate() const;
  /// Positive real fourth root of 4 alpha / (p^2 (2k+1)^2).
  double beta() const;
};

double ep_Q(const ErmakovParams& params, double z);

/// w(z) = exp(p z^{2k+1}); -1/2 {w, z} reproduces ep_Q.
Expr ep_w(const ErmakovParams& params);

/// f(z) = [ln((a w + b) / (c w + d)) / p]^{1/(2k+1)}, real odd root, so that
/// w(f(z)) is the Moebius image of w(z).
Expr ep_f(const ErmakovParams& params);

/// The seed beta / z^k on its natural domain ((0, inf), or the real line for k = 0).
SolutionEvaluator ep_seed(const ErmakovParams& params);

/// y1^2 = beta^2 z^{-2k} (a w + b)(c w + d) / (w (ad - bc)).
/// The domain is the largest sub-interval of `requested` where y1^2 > 0
/// (and z > 0 when k > 0).
SolutionEvaluator ep_general(const ErmakovParams& params, Interval requested);

/// Largest sub-interval of `requested` on which ep_f is defined, increasing,
/// and maps into the seed domain, i.e. where B2(seed, f) is admissible.
Interval ep_f_domain(const ErmakovParams& params, Interval requested);

/// y'' - Q y + alpha / y^3 at y.point().
double ep_residual(const Jet& y, const ErmakovParams& params);
/// |Q y| + |alpha / y^3|.
double ep_residual_scale(const Jet& y, const ErmakovParams& params);

/// F(z, v) = -alpha / v - 1/2 {w, z} v, i.e. the single term n = -1 with
/// coefficient -alpha (G is irrelevant there since (G')^0 = 1).
StructureF ep_structure(const ErmakovParams& params);

/// g0 = z^{-k} e^{s}, g1 = z^{-k} e^{-s} with s = p z^{2k+1} / 2: solutions
/// of g'' = Q g whose ratio is w. `frame` is the (A, B, C, D) used for G.
LinearPair ep_linear_pair(const ErmakovParams& params, const MoebiusMap& frame, Interval domain);

}  // namespace backlund
