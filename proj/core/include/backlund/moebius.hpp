#pragma once

#include "backlund/expr.hpp"
#include "backlund/jet.hpp"

namespace backlund {

inline constexpr double kMinDeterminant = 1e-12;

/// Fractional linear map x -> (a x + b) / (c x + d) with ad - bc != 0.
class MoebiusMap {
 public:
  /// DegenerateMap when |ad - bc| < kMinDeterminant.
  MoebiusMap(double a, double b, double c, double d);

  static MoebiusMap identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static MoebiusMap translation(double k) { return {1.0, k, 0.0, 1.0}; }

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double c() const noexcept { return c_; }
  double d() const noexcept { return d_; }
  double determinant() const noexcept { return a_ * d_ - b_ * c_; }

  /// PoleError at c x + d = 0.
  double apply(double x) const;
  Jet apply(const Jet& x) const;
  Expr apply(const Expr& x) const;

  /// Adjugate (d, -b, -c, a): the inverse up to scale.
  MoebiusMap inverse() const;

  /// True when both maps agree pointwise, i.e. coefficients are proportional.
  bool equivalent(const MoebiusMap& other, double tol = 1e-12) const;

 private:
  double a_;
  double b_;
  double c_;
  double d_;
};

/// outer o inner: apply(result, x) == apply(outer, apply(inner, x)).
MoebiusMap moebius_compose(const MoebiusMap& outer, const MoebiusMap& inner);

inline double moebius_apply(const MoebiusMap& m, double x) { return m.apply(x); }

}  // namespace backlund
