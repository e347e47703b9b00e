#include "backlund/jet.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "backlund/errors.hpp"

namespace backlund {
namespace {

constexpr std::array<double, kMaxJetOrder + 1> kFactorial = [] {
  std::array<double, kMaxJetOrder + 1> f{};
  f[0] = 1.0;
  for (std::size_t k = 1; k < f.size(); ++k) f[k] = f[k - 1] * static_cast<double>(k);
  return f;
}();

void check_order(int order) {
  if (order < 0 || order > kMaxJetOrder) {
    std::ostringstream msg;
    msg << "jet order " << order << " outside [0, " << kMaxJetOrder << "]";
    raise(ErrorKind::InvalidInput, msg.str());
  }
}

bool is_integer(double x) { return std::isfinite(x) && std::floor(x) == x; }

Jet integer_power(const Jet& x, long long n) {
  Jet result = Jet::constant(x.point(), x.order(), 1.0);
  Jet base = x;
  auto e = static_cast<unsigned long long>(n < 0 ? -n : n);
  while (e != 0) {
    if (e & 1ULL) result *= base;
    e >>= 1U;
    if (e != 0) base *= base;
  }
  if (n < 0) {
    if (x.value() == 0.0) raise(ErrorKind::Domain, "negative power of zero");
    return 1.0 / result;
  }
  return result;
}

// Recurrence for a^r from a' p = r a p' with p_0 supplied by the caller, so
// odd roots of negative numbers reuse it with the real branch.
Jet power_recurrence(const Jet& a, double r, double p0) {
  std::array<double, kMaxJetOrder + 1> p{};
  p[0] = p0;
  const double a0 = a.value();
  for (int k = 1; k <= a.order(); ++k) {
    double acc = 0.0;
    for (int j = 1; j <= k; ++j) {
      acc += ((r + 1.0) * j - k) * a.taylor(j) * p[static_cast<std::size_t>(k - j)];
    }
    p[static_cast<std::size_t>(k)] = acc / (k * a0);
  }
  return Jet::from_taylor(a.point(), std::span<const double>(p.data(), a.order() + 1));
}

// Coupled recurrences s' = a' c, c' = -a' s.
void sin_cos_series(const Jet& a, std::array<double, kMaxJetOrder + 1>& s,
                    std::array<double, kMaxJetOrder + 1>& c) {
  s[0] = std::sin(a.value());
  c[0] = std::cos(a.value());
  for (int k = 1; k <= a.order(); ++k) {
    double as = 0.0;
    double ac = 0.0;
    for (int j = 1; j <= k; ++j) {
      as += j * a.taylor(j) * c[static_cast<std::size_t>(k - j)];
      ac -= j * a.taylor(j) * s[static_cast<std::size_t>(k - j)];
    }
    s[static_cast<std::size_t>(k)] = as / k;
    c[static_cast<std::size_t>(k)] = ac / k;
  }
}

}  // namespace

Jet::Jet(double point, int order) : point_(point), order_(order) { check_order(order); }

Jet Jet::constant(double point, int order, double value) {
  Jet j(point, order);
  j.c_[0] = value;
  return j;
}

Jet Jet::variable(double point, int order) {
  Jet j(point, order);
  j.c_[0] = point;
  if (order >= 1) j.c_[1] = 1.0;
  return j;
}

Jet Jet::from_derivatives(double point, std::span<const double> derivatives) {
  if (derivatives.empty()) raise(ErrorKind::InvalidInput, "empty derivative list");
  Jet j(point, static_cast<int>(derivatives.size()) - 1);
  for (std::size_t k = 0; k < derivatives.size(); ++k) j.c_[k] = derivatives[k] / kFactorial[k];
  return j;
}

Jet Jet::from_taylor(double point, std::span<const double> taylor) {
  if (taylor.empty()) raise(ErrorKind::InvalidInput, "empty coefficient list");
  Jet j(point, static_cast<int>(taylor.size()) - 1);
  for (std::size_t k = 0; k < taylor.size(); ++k) j.c_[k] = taylor[k];
  return j;
}

double Jet::derivative(int k) const {
  if (k < 0 || k > order_) raise(ErrorKind::InvalidInput, "derivative index beyond jet order");
  return c_[static_cast<std::size_t>(k)] * kFactorial[static_cast<std::size_t>(k)];
}

std::vector<double> Jet::derivatives() const {
  std::vector<double> out(static_cast<std::size_t>(order_) + 1);
  for (int k = 0; k <= order_; ++k) out[static_cast<std::size_t>(k)] = derivative(k);
  return out;
}

Jet Jet::differentiated() const {
  if (order_ == 0) raise(ErrorKind::InvalidInput, "cannot differentiate an order-0 jet");
  Jet d(point_, order_ - 1);
  for (int k = 0; k < order_; ++k) {
    d.c_[static_cast<std::size_t>(k)] = (k + 1) * c_[static_cast<std::size_t>(k + 1)];
  }
  return d;
}

Jet Jet::truncated(int order) const {
  if (order > order_) raise(ErrorKind::OrderMismatch, "cannot raise jet order by truncation");
  Jet t(point_, order);
  for (int k = 0; k <= order; ++k) t.c_[static_cast<std::size_t>(k)] = c_[static_cast<std::size_t>(k)];
  return t;
}

bool Jet::all_finite() const {
  for (int k = 0; k <= order_; ++k) {
    if (!std::isfinite(c_[static_cast<std::size_t>(k)])) return false;
  }
  return true;
}

void Jet::require_compatible(const Jet& rhs) const {
  if (point_ != rhs.point_) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "jets at different points " << point_ << " and " << rhs.point_;
    raise(ErrorKind::PointMismatch, msg.str());
  }
  if (order_ != rhs.order_) raise(ErrorKind::OrderMismatch, "jets of different order");
}

Jet& Jet::operator+=(const Jet& rhs) {
  require_compatible(rhs);
  for (int k = 0; k <= order_; ++k) c_[static_cast<std::size_t>(k)] += rhs.c_[static_cast<std::size_t>(k)];
  return *this;
}

Jet& Jet::operator-=(const Jet& rhs) {
  require_compatible(rhs);
  for (int k = 0; k <= order_; ++k) c_[static_cast<std::size_t>(k)] -= rhs.c_[static_cast<std::size_t>(k)];
  return *this;
}

Jet& Jet::operator*=(const Jet& rhs) {
  require_compatible(rhs);
  std::array<double, kMaxJetOrder + 1> out{};
  for (int k = 0; k <= order_; ++k) {
    double acc = 0.0;
    for (int j = 0; j <= k; ++j) {
      acc += c_[static_cast<std::size_t>(j)] * rhs.c_[static_cast<std::size_t>(k - j)];
    }
    out[static_cast<std::size_t>(k)] = acc;
  }
  c_ = out;
  return *this;
}

Jet& Jet::operator/=(const Jet& rhs) {
  require_compatible(rhs);
  const double b0 = rhs.c_[0];
  if (b0 == 0.0) raise(ErrorKind::Domain, "division by zero");
  std::array<double, kMaxJetOrder + 1> q{};
  for (int k = 0; k <= order_; ++k) {
    double acc = c_[static_cast<std::size_t>(k)];
    for (int j = 1; j <= k; ++j) {
      acc -= rhs.c_[static_cast<std::size_t>(j)] * q[static_cast<std::size_t>(k - j)];
    }
    q[static_cast<std::size_t>(k)] = acc / b0;
  }
  c_ = q;
  return *this;
}

Jet& Jet::operator+=(double rhs) {
  c_[0] += rhs;
  return *this;
}

Jet& Jet::operator-=(double rhs) {
  c_[0] -= rhs;
  return *this;
}

Jet& Jet::operator*=(double rhs) {
  for (int k = 0; k <= order_; ++k) c_[static_cast<std::size_t>(k)] *= rhs;
  return *this;
}

Jet& Jet::operator/=(double rhs) {
  if (rhs == 0.0) raise(ErrorKind::Domain, "division by zero");
  for (int k = 0; k <= order_; ++k) c_[static_cast<std::size_t>(k)] /= rhs;
  return *this;
}

Jet Jet::operator-() const {
  Jet n = *this;
  for (int k = 0; k <= order_; ++k) n.c_[static_cast<std::size_t>(k)] = -n.c_[static_cast<std::size_t>(k)];
  return n;
}

Jet operator/(double lhs, const Jet& rhs) {
  return Jet::constant(rhs.point(), rhs.order(), lhs) / rhs;
}

Jet exp(const Jet& x) {
  std::array<double, kMaxJetOrder + 1> e{};
  e[0] = std::exp(x.value());
  for (int k = 1; k <= x.order(); ++k) {
    double acc = 0.0;
    for (int j = 1; j <= k; ++j) acc += j * x.taylor(j) * e[static_cast<std::size_t>(k - j)];
    e[static_cast<std::size_t>(k)] = acc / k;
  }
  return Jet::from_taylor(x.point(), std::span<const double>(e.data(), x.order() + 1));
}

Jet log(const Jet& x) {
  const double a0 = x.value();
  if (!(a0 > 0.0)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "logarithm of non-positive value " << a0;
    raise(ErrorKind::Domain, msg.str());
  }
  std::array<double, kMaxJetOrder + 1> l{};
  l[0] = std::log(a0);
  for (int k = 1; k <= x.order(); ++k) {
    double acc = k * x.taylor(k);
    for (int j = 1; j < k; ++j) acc -= x.taylor(j) * (k - j) * l[static_cast<std::size_t>(k - j)];
    l[static_cast<std::size_t>(k)] = acc / (k * a0);
  }
  return Jet::from_taylor(x.point(), std::span<const double>(l.data(), x.order() + 1));
}

Jet sin(const Jet& x) {
  std::array<double, kMaxJetOrder + 1> s{};
  std::array<double, kMaxJetOrder + 1> c{};
  sin_cos_series(x, s, c);
  return Jet::from_taylor(x.point(), std::span<const double>(s.data(), x.order() + 1));
}

Jet cos(const Jet& x) {
  std::array<double, kMaxJetOrder + 1> s{};
  std::array<double, kMaxJetOrder + 1> c{};
  sin_cos_series(x, s, c);
  return Jet::from_taylor(x.point(), std::span<const double>(c.data(), x.order() + 1));
}

Jet sqrt(const Jet& x) { return pow(x, 0.5); }

Jet pow(const Jet& x, double exponent) {
  if (!std::isfinite(exponent)) raise(ErrorKind::Domain, "non-finite exponent");
  if (is_integer(exponent) && std::fabs(exponent) <= 1e9) {
    return integer_power(x, static_cast<long long>(exponent));
  }
  const double a0 = x.value();
  if (!(a0 > 0.0)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "fractional power " << exponent << " of non-positive base " << a0;
    raise(ErrorKind::Domain, msg.str());
  }
  return power_recurrence(x, exponent, std::pow(a0, exponent));
}

Jet odd_root(const Jet& x, int q) {
  if (q <= 0 || q % 2 == 0) raise(ErrorKind::InvalidInput, "odd_root needs a positive odd index");
  if (q == 1) return x;
  const double a0 = x.value();
  if (a0 == 0.0) raise(ErrorKind::Domain, "odd root is not differentiable at zero");
  const double r = 1.0 / q;
  const double p0 = std::copysign(std::pow(std::fabs(a0), r), a0);
  return power_recurrence(x, r, p0);
}

Jet compose(const Jet& outer, const Jet& inner) {
  if (outer.point() != inner.value()) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "outer jet at " << outer.point() << " but inner value is " << inner.value();
    raise(ErrorKind::PointMismatch, msg.str());
  }
  const int order = std::min(outer.order(), inner.order());
  Jet delta = inner.truncated(order);
  delta -= delta.value();
  Jet result = Jet::constant(inner.point(), order, outer.taylor(order));
  for (int k = order - 1; k >= 0; --k) {
    result *= delta;
    result += outer.taylor(k);
  }
  return result;
}

double schwarzian(const Jet& f, double threshold) {
  if (f.order() < 3) raise(ErrorKind::OrderMismatch, "Schwarzian needs a jet of order >= 3");
  const double d1 = f.taylor(1);
  if (!(std::fabs(d1) >= threshold)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "|f'| = " << std::fabs(d1) << " at z = " << f.point();
    raise(ErrorKind::CriticalPoint, msg.str());
  }
  // With c_k = f^(k)/k!: f'''/f' = 6 c3/c1 and f''/f' = 2 c2/c1.
  const double ratio2 = f.taylor(2) / d1;
  return 6.0 * f.taylor(3) / d1 - 6.0 * ratio2 * ratio2;
}

}  // namespace backlund
