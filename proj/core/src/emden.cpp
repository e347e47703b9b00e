#include "backlund/emden.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "backlund/chart.hpp"
#include "backlund/errors.hpp"

namespace backlund {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// s(z) = z or eta + gamma z.
double shape(const EmdenParams& params, EmdenVariant variant, double z) {
  return variant == EmdenVariant::First ? z : params.eta + params.gamma * z;
}

Expr shape_expr(const EmdenParams& params, EmdenVariant variant) {
  const Expr z = Expr::variable();
  if (variant == EmdenVariant::First) return z;
  return params.eta + params.gamma * z;
}

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(17);
  out << x;
  return out.str();
}

// Positive branch of y0(f(z)) * factor(z) where factor is affine in z.
Jet scaled_composition(const SolutionEvaluator& y0, const Jet& f, const Jet& factor) {
  Jet y = compose(y0.jet(f.value(), f.order()), f) * factor;
  return y.value() < 0.0 ? -y : y;
}

}  // namespace

void EmdenParams::validate() const {
  std::string problem;
  if (!std::isfinite(alpha) || alpha == 1.0) {
    problem = "alpha = " + fmt(alpha) + " must be finite and different from 1";
  } else if (!std::isfinite(beta)) {
    problem = "beta must be finite";
  } else if (m == 1) {
    problem = "m must differ from 1";
  } else if (eta == 0.0 && gamma == 0.0) {
    problem = "eta and gamma cannot both vanish";
  } else if (!std::isfinite(delta) || delta == 0.0) {
    problem = "delta must be finite and non-zero";
  } else {
    return;
  }
  raise(ErrorKind::InvalidInput, problem);
}

SeedConstant ef_seed_constant(const EmdenParams& params, EmdenVariant variant) {
  params.validate();
  const double g = variant == EmdenVariant::First ? 1.0 : params.gamma;
  const double am1 = params.alpha - 1.0;
  const double mm1 = static_cast<double>(params.m - 1);
  const double rhs = -params.m * g * g * am1 * am1 / (params.beta * mm1 * mm1);
  if (!(rhs > 0.0) || !std::isfinite(rhs)) {
    raise(ErrorKind::NoRealSeed, "beta (m-1)^2 p^{2m-2} + m g^2 (alpha-1)^2 = 0 has no real root (beta = " +
                                     fmt(params.beta) + ", m = " + std::to_string(params.m) + ")");
  }
  const double p = std::pow(rhs, 1.0 / (2.0 * mm1));
  return {p, {-p}};
}

std::pair<double, double> ef_to_canonical(double x, double q, double alpha) {
  if (!(x > 0.0)) raise(ErrorKind::Domain, "canonical change of variables needs x > 0, got " + fmt(x));
  if (alpha == 1.0) raise(ErrorKind::InvalidInput, "alpha must differ from 1");
  const double z = std::pow(x, alpha - 1.0);
  return {z, q * z};
}

std::pair<double, double> ef_from_canonical(double z, double y, double alpha) {
  if (!(z > 0.0)) raise(ErrorKind::Domain, "inverse change of variables needs z > 0, got " + fmt(z));
  if (alpha == 1.0) raise(ErrorKind::InvalidInput, "alpha must differ from 1");
  return {std::pow(z, 1.0 / (alpha - 1.0)), y / z};
}

SolutionEvaluator ef1_seed(const EmdenParams& params) {
  const SeedConstant seed = ef_seed_constant(params, EmdenVariant::First);
  const Expr y = seed.p * pow(Expr::variable(), params.seed_exponent());
  return SolutionEvaluator::from_expr("emden1-seed", y, Interval::positive_axis());
}

Expr ef1_f(double delta_step, double k_step) {
  if (delta_step == 0.0) raise(ErrorKind::DegenerateMap, "Delta must be non-zero");
  const Expr z = Expr::variable();
  return delta_step * z / (k_step * z + delta_step);
}

SolutionEvaluator ef1_backlund(const SolutionEvaluator& y0, double delta_step, double k_step, Interval requested) {
  const MoebiusMap f(delta_step, 0.0, k_step, delta_step);
  const std::string label = "emden1-BT[" + y0.label() + "]";
  auto fn = [y0, f, delta_step, k_step, label](double z, int order) {
    const double den = k_step * z + delta_step;
    if (den == 0.0) raise(ErrorKind::Pole, label + ": K z + Delta = 0 at z = " + fmt(z));
    const Jet fz = f.apply(Jet::variable(z, order));
    if (!y0.domain().contains(fz.value())) {
      raise(ErrorKind::DomainEscape, label + ": f(" + fmt(z) + ") = " + fmt(fz.value()) + " leaves the seed domain");
    }
    const Jet factor = (k_step * Jet::variable(z, order) + delta_step) / delta_step;
    return scaled_composition(y0, fz, factor);
  };
  auto guard = [y0, f, delta_step, k_step](double z) {
    if (!(k_step * z + delta_step > 0.0)) return false;
    const double fz = f.apply(z);
    return y0.domain().contains(fz) && y0(fz) > 0.0;
  };
  return SolutionEvaluator(label, std::move(fn), admissible_subinterval(requested, guard));
}

void LadderState::apply(double delta_step, double k_step) {
  if (delta_step == 0.0) raise(ErrorKind::DegenerateMap, "ladder step with Delta = 0");
  S = delta_step * S + k_step * R;
  R = delta_step * R;
  steps.emplace_back(delta_step, k_step);
}

LadderState ladder_fold(const std::vector<std::pair<double, double>>& steps) {
  LadderState state;
  for (const auto& [d, k] : steps) state.apply(d, k);
  return state;
}

LadderResult ef1_ladder(const EmdenParams& params, const std::vector<std::pair<double, double>>& steps,
                        Interval requested) {
  LadderState state = ladder_fold(steps);
  const SeedConstant seed = ef_seed_constant(params, EmdenVariant::First);
  const double R = state.R;
  const double S = state.S;
  const Expr z = Expr::variable();
  const Expr y = seed.p * pow(R * z / (S * z + R), params.seed_exponent()) * ((S * z + R) / R);
  auto guard = [R, S, y](double zz) {
    if (!((S * zz + R) / R > 0.0)) return false;
    if (!(R * zz / (S * zz + R) > 0.0)) return false;
    const double v = y(zz);
    return v > 0.0 && std::isfinite(v);
  };
  const Interval domain = admissible_subinterval(requested, guard);
  SolutionEvaluator solution =
      SolutionEvaluator::from_expr("emden1-ladder-" + std::to_string(steps.size()), y, domain);
  return {std::move(state), std::move(solution)};
}

MoebiusMap ef2_moebius(const EmdenParams& params, double delta_step, double k_step) {
  params.validate();
  const double dd = delta_step * params.delta;
  if (dd == 0.0) raise(ErrorKind::DegenerateMap, "Delta * delta must be non-zero");
  const double eta = params.eta;
  const double gamma = params.gamma;
  return {k_step * eta * gamma + dd, k_step * eta * eta, -k_step * gamma * gamma, dd - k_step * eta * gamma};
}

Expr ef2_f(const EmdenParams& params, double delta_step, double k_step) {
  return ef2_moebius(params, delta_step, k_step).apply(Expr::variable());
}

SolutionEvaluator ef2_seed(const EmdenParams& params) {
  const SeedConstant seed = ef_seed_constant(params, EmdenVariant::Second);
  const Expr y = seed.p * pow(shape_expr(params, EmdenVariant::Second), params.seed_exponent());
  Interval domain = Interval::positive_axis();
  if (params.gamma > 0.0) {
    domain.lo = std::max(0.0, -params.eta / params.gamma);
  } else if (params.gamma < 0.0) {
    domain.hi = -params.eta / params.gamma;
  } else if (!(params.eta > 0.0)) {
    raise(ErrorKind::Domain, "eta + gamma z is never positive");
  }
  if (!(domain.lo < domain.hi)) raise(ErrorKind::Domain, "eta + gamma z > 0 has no positive z");
  return SolutionEvaluator::from_expr("emden2-seed", y, domain);
}

SolutionEvaluator ef2_backlund(const SolutionEvaluator& y0, const EmdenParams& params, double delta_step,
                               double k_step, Interval requested) {
  const MoebiusMap f = ef2_moebius(params, delta_step, k_step);
  const double dd = delta_step * params.delta;
  const std::string label = "emden2-BT[" + y0.label() + "]";
  auto fn = [y0, f, dd, label](double z, int order) {
    const Jet var = Jet::variable(z, order);
    const Jet den = f.c() * var + f.d();
    if (den.value() == 0.0) raise(ErrorKind::Pole, label + ": pole of f at z = " + fmt(z));
    const Jet fz = f.apply(var);
    if (!y0.domain().contains(fz.value())) {
      raise(ErrorKind::DomainEscape, label + ": f(" + fmt(z) + ") = " + fmt(fz.value()) + " leaves the seed domain");
    }
    return scaled_composition(y0, fz, den / dd);
  };
  auto guard = [y0, f, dd](double z) {
    if (!((f.c() * z + f.d()) / dd > 0.0)) return false;
    const double fz = f.apply(z);
    return y0.domain().contains(fz) && y0(fz) > 0.0;
  };
  return SolutionEvaluator(label, std::move(fn), admissible_subinterval(requested, guard));
}

SolutionEvaluator ef2_transformed(const EmdenParams& params, double delta_step, double k_step,
                                  Interval requested) {
  const SeedConstant seed = ef_seed_constant(params, EmdenVariant::Second);
  const MoebiusMap f = ef2_moebius(params, delta_step, k_step);
  const double dd = delta_step * params.delta;
  const Expr z = Expr::variable();
  const Expr den = f.c() * z + f.d();
  const Expr y = seed.p * pow(dd * shape_expr(params, EmdenVariant::Second) / den, params.seed_exponent()) * (den / dd);
  auto guard = [y, den, dd](double zz) {
    if (!(zz > 0.0) || !(den(zz) / dd > 0.0)) return false;
    const double v = y(zz);
    return v > 0.0 && std::isfinite(v);
  };
  return SolutionEvaluator::from_expr("emden2-transformed", y, admissible_subinterval(requested, guard));
}

double ef_residual(const Jet& y, const EmdenParams& params, EmdenVariant variant) {
  const double v = y.value();
  if (!(v > 0.0)) raise(ErrorKind::Domain, "Emden-Fowler residual needs y > 0");
  const double s = shape(params, variant, y.point());
  if (s == 0.0) raise(ErrorKind::Domain, "Emden-Fowler residual at s(z) = 0");
  return y.derivative(2) + params.coupling() * std::pow(v, 2 * params.m - 1) / std::pow(s, 2 * params.m + 2);
}

double ef_residual_scale(const Jet& y, const EmdenParams& params, EmdenVariant variant) {
  const double s = shape(params, variant, y.point());
  return std::fabs(params.coupling() * std::pow(y.value(), 2 * params.m - 1) / std::pow(s, 2 * params.m + 2));
}

namespace {

struct OriginalTerms {
  double second;
  double first;
  double nonlinear;
};

OriginalTerms original_terms(const Jet& q, const EmdenParams& params, EmdenVariant variant) {
  const double x = q.point();
  if (!(x > 0.0)) raise(ErrorKind::Domain, "original-coordinate residual needs x > 0");
  double r = 1.0;
  if (variant == EmdenVariant::Second) {
    const double zx = std::pow(x, params.alpha - 1.0);
    r = std::pow(zx / (params.eta + params.gamma * zx), 2 * params.m + 2);
  }
  return {x * q.derivative(2), params.alpha * q.derivative(1),
          params.beta * std::pow(x, 1.0 - 2.0 * params.alpha) * r * std::pow(q.value(), 2 * params.m - 1)};
}

}  // namespace

double ef_original_residual(const Jet& q, const EmdenParams& params, EmdenVariant variant) {
  const OriginalTerms t = original_terms(q, params, variant);
  return t.second + t.first + t.nonlinear;
}

double ef_original_residual_scale(const Jet& q, const EmdenParams& params, EmdenVariant variant) {
  const OriginalTerms t = original_terms(q, params, variant);
  return std::fabs(t.second) + std::fabs(t.first) + std::fabs(t.nonlinear);
}

SolutionEvaluator to_original_coordinates(const SolutionEvaluator& y, double alpha) {
  if (alpha == 1.0) raise(ErrorKind::InvalidInput, "alpha must differ from 1");
  const double inv = 1.0 / (alpha - 1.0);
  auto map_end = [inv](double z) { return z <= 0.0 ? (inv > 0 ? 0.0 : kInf) : std::pow(z, inv); };
  double lo = map_end(y.domain().lo);
  double hi = map_end(y.domain().hi);
  if (lo > hi) std::swap(lo, hi);
  // x -> x^{alpha-1} does not round-trip the endpoints exactly.
  constexpr double kInset = 1e-14;
  lo *= 1.0 + kInset;
  if (std::isfinite(hi)) hi *= 1.0 - kInset;
  auto fn = [y, alpha](double x, int order) {
    if (!(x > 0.0)) raise(ErrorKind::Domain, "q(x) needs x > 0");
    const Jet zx = pow(Jet::variable(x, order), alpha - 1.0);
    return compose(y.jet(zx.value(), order), zx) / zx;
  };
  return SolutionEvaluator("q[" + y.label() + "]", std::move(fn), Interval{lo, hi});
}

Expr ef_G(const EmdenParams& params, EmdenVariant variant) {
  const Expr z = Expr::variable();
  if (variant == EmdenVariant::First) return -1.0 / z;
  if (params.gamma == 0.0) return z / (params.eta * params.eta);
  return -1.0 / (params.gamma * (params.eta + params.gamma * z));
}

double ef_G_shift(const EmdenParams& params, EmdenVariant variant, double delta_step, double k_step) {
  if (variant == EmdenVariant::First) return -k_step / delta_step;
  return k_step / (delta_step * params.delta);
}

StructureF ef_structure(const EmdenParams& params, EmdenVariant variant) {
  params.validate();
  return build_structure_F({PowerTerm{params.m, -params.coupling(), ef_G(params, variant)}});
}

Expr ef_f(const EmdenParams& params, EmdenVariant variant, double delta_step, double k_step) {
  return variant == EmdenVariant::First ? ef1_f(delta_step, k_step) : ef2_f(params, delta_step, k_step);
}

LinearPair ef_linear_pair(const EmdenParams& params, double delta_step, const Expr& P, Interval domain) {
  params.validate();
  double a0 = 0.0;
  double b0 = 0.0;
  if (params.eta != 0.0) {
    a0 = params.delta / params.eta;
  } else {
    b0 = -params.delta / params.gamma;
  }
  const Expr z = Expr::variable();
  const Expr Q = Expr::named(
      "P''-P'^2",
      [P](double x, int order) {
        const Jet dp = P.jet(x, order + 2).differentiated();
        const Jet d1 = dp.truncated(order);
        return dp.differentiated() - d1 * d1;
      });
  const Expr eP = exp(P);
  return LinearPair(P, Q, eP * (a0 * z + b0), eP * (params.gamma * z + params.eta),
                    MoebiusMap(delta_step, 0.0, 0.0, 1.0), domain);
}

}  // namespace backlund
