#include "backlund/moebius.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "backlund/errors.hpp"

namespace backlund {

MoebiusMap::MoebiusMap(double a, double b, double c, double d) : a_(a), b_(b), c_(c), d_(d) {
  if (!(std::fabs(determinant()) >= kMinDeterminant)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "Moebius map (" << a << ", " << b << ", " << c << ", " << d << ") has determinant " << determinant();
    raise(ErrorKind::DegenerateMap, msg.str());
  }
}

double MoebiusMap::apply(double x) const {
  const double den = c_ * x + d_;
  if (den == 0.0) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "Moebius pole at x = " << x;
    raise(ErrorKind::Pole, msg.str());
  }
  return (a_ * x + b_) / den;
}

Jet MoebiusMap::apply(const Jet& x) const {
  if (c_ * x.value() + d_ == 0.0) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "Moebius pole at x = " << x.value();
    raise(ErrorKind::Pole, msg.str());
  }
  return (a_ * x + b_) / (c_ * x + d_);
}

Expr MoebiusMap::apply(const Expr& x) const {
  if (c_ == 0.0) return (a_ / d_) * x + b_ / d_;
  return (a_ * x + b_) / (c_ * x + d_);
}

MoebiusMap MoebiusMap::inverse() const { return {d_, -b_, -c_, a_}; }

bool MoebiusMap::equivalent(const MoebiusMap& other, double tol) const {
  // Proportional coefficient vectors have vanishing 2x2 minors.
  const double p[4] = {a_, b_, c_, d_};
  const double q[4] = {other.a_, other.b_, other.c_, other.d_};
  double np = 0.0;
  double nq = 0.0;
  for (int i = 0; i < 4; ++i) {
    np = std::max(np, std::fabs(p[i]));
    nq = std::max(nq, std::fabs(q[i]));
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (std::fabs(p[i] * q[j] - p[j] * q[i]) > tol * np * nq) return false;
    }
  }
  return true;
}

MoebiusMap moebius_compose(const MoebiusMap& outer, const MoebiusMap& inner) {
  return {outer.a() * inner.a() + outer.b() * inner.c(), outer.a() * inner.b() + outer.b() * inner.d(),
          outer.c() * inner.a() + outer.d() * inner.c(), outer.c() * inner.b() + outer.d() * inner.d()};
}

}  // namespace backlund
