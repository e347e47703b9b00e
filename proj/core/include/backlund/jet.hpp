#pragma once

#include <array>
#include <span>
#include <vector>

namespace backlund {

inline constexpr int kMaxJetOrder = 8;
inline constexpr int kDefaultJetOrder = 4;
/// Below this |f'| the Schwarzian is reported as a critical point.
inline constexpr double kCriticalThreshold = 1e-12;

/// Truncated Taylor expansion of a scalar map about `point`.
///
/// Coefficients are stored normalised (c_k = f^(k)/k!) so that products are
/// plain Cauchy convolutions; `derivative(k)` converts back. Two jets may only
/// be combined when they share both point and order.
class Jet {
 public:
  Jet() = default;
  Jet(double point, int order);

  static Jet constant(double point, int order, double value);
  /// The identity map z -> z.
  static Jet variable(double point, int order);
  static Jet from_derivatives(double point, std::span<const double> derivatives);
  static Jet from_taylor(double point, std::span<const double> taylor);

  double point() const noexcept { return point_; }
  int order() const noexcept { return order_; }
  double value() const noexcept { return c_[0]; }
  double taylor(int k) const noexcept { return c_[static_cast<std::size_t>(k)]; }
  double derivative(int k) const;
  /// (f, f', f'', ...) up to the jet order.
  std::vector<double> derivatives() const;

  /// Jet of f' at the same point, one order lower.
  Jet differentiated() const;
  Jet truncated(int order) const;
  bool all_finite() const;

  Jet& operator+=(const Jet& rhs);
  Jet& operator-=(const Jet& rhs);
  Jet& operator*=(const Jet& rhs);
  Jet& operator/=(const Jet& rhs);
  Jet& operator+=(double rhs);
  Jet& operator-=(double rhs);
  Jet& operator*=(double rhs);
  Jet& operator/=(double rhs);

  Jet operator-() const;

  friend Jet operator+(Jet lhs, const Jet& rhs) { return lhs += rhs; }
  friend Jet operator-(Jet lhs, const Jet& rhs) { return lhs -= rhs; }
  friend Jet operator*(Jet lhs, const Jet& rhs) { return lhs *= rhs; }
  friend Jet operator/(Jet lhs, const Jet& rhs) { return lhs /= rhs; }
  friend Jet operator+(Jet lhs, double rhs) { return lhs += rhs; }
  friend Jet operator-(Jet lhs, double rhs) { return lhs -= rhs; }
  friend Jet operator*(Jet lhs, double rhs) { return lhs *= rhs; }
  friend Jet operator/(Jet lhs, double rhs) { return lhs /= rhs; }
  friend Jet operator+(double lhs, Jet rhs) { return rhs += lhs; }
  friend Jet operator*(double lhs, Jet rhs) { return rhs *= lhs; }
  friend Jet operator-(double lhs, const Jet& rhs) { return -rhs + lhs; }
  friend Jet operator/(double lhs, const Jet& rhs);

 private:
  void require_compatible(const Jet& rhs) const;

  double point_ = 0.0;
  int order_ = 0;
  std::array<double, kMaxJetOrder + 1> c_{};
};

Jet exp(const Jet& x);
/// Natural logarithm; DomainError for non-positive values.
Jet log(const Jet& x);
Jet sin(const Jet& x);
Jet cos(const Jet& x);
Jet sqrt(const Jet& x);
/// Real power. Integer exponents accept any base (zero only when
/// non-negative); fractional exponents need a positive base.
Jet pow(const Jet& x, double exponent);
/// Real odd root sign(x)|x|^(1/q); q must be a positive odd integer.
Jet odd_root(const Jet& x, int q);

/// Chain rule: jet of g(psi(t)) at t, given g's jet at psi(t) and psi's jet
/// at t. Throws PointMismatch when outer.point() != inner.value().
Jet compose(const Jet& outer, const Jet& inner);

/// {f,z} = f'''/f' - 3/2 (f''/f')^2 from a jet of order >= 3.
double schwarzian(const Jet& f, double threshold = kCriticalThreshold);

}  // namespace backlund
