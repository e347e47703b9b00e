#include "backlund/ermakov.hpp"

#include <cmath>
#include <sstream>

#include "backlund/errors.hpp"

namespace backlund {

void ErmakovParams::validate() const {
  std::ostringstream msg;
  msg.precision(17);
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    msg << "alpha = " << alpha << " must be positive";
  } else if (!(p > 0.0) || !std::isfinite(p)) {
    msg << "p = " << p << " must be positive";
  } else if (k < 0) {
    msg << "k = " << k << " must be non-negative";
  } else {
    return;
  }
  raise(ErrorKind::InvalidInput, msg.str());
}

double ErmakovParams::beta() const {
  const double odd = 2.0 * k + 1.0;
  return std::pow(4.0 * alpha / (p * p * odd * odd), 0.25);
}

double ep_Q(const ErmakovParams& params, double z) {
  if (params.k > 0 && !(z > 0.0)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "Q needs z > 0 for k > 0, got " << z;
    raise(ErrorKind::Domain, msg.str());
  }
  const double odd = 2.0 * params.k + 1.0;
  const double kk = static_cast<double>(params.k);
  return params.p * params.p * odd * odd * std::pow(z, 4 * params.k) / 4.0 + kk * (kk + 1.0) / (z * z);
}

Expr ep_w(const ErmakovParams& params) {
  return exp(params.p * pow(Expr::variable(), 2.0 * params.k + 1.0));
}

Expr ep_f(const ErmakovParams& params) {
  params.validate();
  const Expr w = ep_w(params);
  const Expr log_ratio = log(params.moebius.apply(w)) / params.p;
  return odd_root(log_ratio, 2 * params.k + 1);
}

SolutionEvaluator ep_seed(const ErmakovParams& params) {
  params.validate();
  const Expr y = params.beta() * pow(Expr::variable(), -static_cast<double>(params.k));
  const Interval domain = params.k == 0 ? Interval{} : Interval::positive_axis();
  return SolutionEvaluator::from_expr("ermakov-seed", y, domain);
}

namespace {

Expr general_expr(const ErmakovParams& params) {
  const MoebiusMap& m = params.moebius;
  const Expr w = ep_w(params);
  const Expr ratio = (m.a() * w + m.b()) * (m.c() * w + m.d()) / (w * m.determinant());
  return params.beta() * pow(Expr::variable(), -static_cast<double>(params.k)) * sqrt(ratio);
}

}  // namespace

SolutionEvaluator ep_general(const ErmakovParams& params, Interval requested) {
  params.validate();
  const Expr y = general_expr(params);
  const MoebiusMap m = params.moebius;
  const Expr w = ep_w(params);
  const int k = params.k;
  auto guard = [w, m, k](double z) {
    if (k > 0 && !(z > 0.0)) return false;
    const double wz = w(z);
    const double y2 = (m.a() * wz + m.b()) * (m.c() * wz + m.d()) / (wz * m.determinant());
    return y2 > 0.0 && std::isfinite(y2);
  };
  return SolutionEvaluator::from_expr("ermakov-general", y, admissible_subinterval(requested, guard));
}

Interval ep_f_domain(const ErmakovParams& params, Interval requested) {
  const Expr f = ep_f(params);
  const Interval seed_domain = ep_seed(params).domain();
  const int k = params.k;
  auto guard = [f, seed_domain, k](double z) {
    if (k > 0 && !(z > 0.0)) return false;
    const Jet fj = f.jet(z, 1);
    return fj.taylor(1) > 0.0 && seed_domain.contains(fj.value()) && (k == 0 || fj.value() > 0.0);
  };
  return admissible_subinterval(requested, guard);
}

double ep_residual(const Jet& y, const ErmakovParams& params) {
  const double v = y.value();
  if (!(v > 0.0)) raise(ErrorKind::Domain, "Ermakov-Pinney residual needs y > 0");
  return y.derivative(2) - ep_Q(params, y.point()) * v + params.alpha / (v * v * v);
}

double ep_residual_scale(const Jet& y, const ErmakovParams& params) {
  const double v = y.value();
  return std::fabs(ep_Q(params, y.point()) * v) + std::fabs(params.alpha / (v * v * v));
}

StructureF ep_structure(const ErmakovParams& params) {
  params.validate();
  return build_structure_F({PowerTerm{-1, -params.alpha, Expr::variable()}}, ep_w(params));
}

LinearPair ep_linear_pair(const ErmakovParams& params, const MoebiusMap& frame, Interval domain) {
  params.validate();
  const Expr z = Expr::variable();
  const Expr s = 0.5 * params.p * pow(z, 2.0 * params.k + 1.0);
  const Expr prefactor = pow(z, -static_cast<double>(params.k));
  const Expr k = static_cast<double>(params.k);
  const Expr Q = params.p * params.p * (2.0 * params.k + 1.0) * (2.0 * params.k + 1.0) / 4.0 *
                     pow(z, 4.0 * params.k) +
                 k * (k + 1.0) / (z * z);
  return LinearPair(Expr(0.0), Q, prefactor * exp(s), prefactor * exp(-s), frame, domain);
}

}  // namespace backlund
