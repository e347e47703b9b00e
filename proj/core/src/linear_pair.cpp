#include "backlund/linear_pair.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "backlund/errors.hpp"

namespace backlund {

LinearPair::LinearPair(Expr P, Expr Q, Expr g0, Expr g1, MoebiusMap frame, Interval domain)
    : P_(std::move(P)), Q_(std::move(Q)), g0_(std::move(g0)), g1_(std::move(g1)), frame_(frame), domain_(domain) {
  double prev_g1 = 0.0;
  double prev_den = 0.0;
  for (double z : scan_points(domain_, kLinearCheckPoints)) {
    for (const Expr* g : {&g0_, &g1_}) {
      const double r = linear_residual(*g, z);
      if (!(r <= kLinearResidualTol)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << (g == &g0_ ? "g0" : "g1") << " misses g'' = 2P'g' + Qg by " << r << " at z = " << z;
        raise(ErrorKind::InvalidInput, msg.str());
      }
    }
    const double g1 = g1_(z);
    const double den = frame_.c() * g0_(z) + frame_.d() * g1;
    if (g1 == 0.0 || g1 * prev_g1 < 0.0) raise(ErrorKind::Pole, "g1 vanishes on the domain");
    if (den == 0.0 || den * prev_den < 0.0) raise(ErrorKind::Pole, "C g0 + D g1 vanishes on the domain");
    prev_g1 = g1;
    prev_den = den;
  }
  const double z0 = domain_.lo;
  const Jet a = g0_.jet(z0, 1);
  const Jet b = g1_.jet(z0, 1);
  const double wronskian = a.taylor(1) * b.value() - a.value() * b.taylor(1);
  c1_ = wronskian * std::exp(-2.0 * P_(z0));
  if (c1_ == 0.0) raise(ErrorKind::InvalidInput, "g0 and g1 are linearly dependent");
}

double LinearPair::linear_residual(const Expr& g, double z) const {
  const Jet gj = g.jet(z, 2);
  const double dp = P_.jet(z, 1).taylor(1);
  const double q = Q_(z);
  const double g2 = gj.derivative(2);
  const double drift = 2.0 * dp * gj.taylor(1);
  const double react = q * gj.value();
  return std::fabs(g2 - drift - react) / (1.0 + std::fabs(g2) + std::fabs(drift) + std::fabs(react));
}

double ratio_schwarzian_check(const LinearPair& pair, double z) {
  const double g1 = pair.g1()(z);
  if (g1 == 0.0) raise(ErrorKind::Pole, "g1 vanishes");
  const double s = schwarzian(pair.w().jet(z, 3));
  const Jet p = pair.P().jet(z, 2);
  const double dp = p.taylor(1);
  return s - 2.0 * (p.derivative(2) - dp * dp - pair.Q()(z));
}

double wronskian_G_prime(const LinearPair& pair, double c1, double z) {
  const MoebiusMap& m = pair.frame();
  const double den = m.c() * pair.g0()(z) + m.d() * pair.g1()(z);
  if (den == 0.0) raise(ErrorKind::Pole, "C g0 + D g1 vanishes");
  const double ratio = std::exp(pair.P()(z)) / den;
  return m.determinant() * c1 * ratio * ratio;
}

}  // namespace backlund
