#include "backlund/integrate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "backlund/errors.hpp"

namespace backlund {
namespace {

// Dormand-Prince tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;

struct State {
  double y;
  double dy;
};

State operator+(State a, State b) { return {a.y + b.y, a.dy + b.dy}; }
State operator*(double s, State a) { return {s * a.y, s * a.dy}; }

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(17);
  out << x;
  return out.str();
}

}  // namespace

SecondOrderRhs structure_rhs(const StructureFunction& F) {
  return [F](double z, double y, double) { return F(z, y * y) / y; };
}

SecondOrderRhs structure_rhs(const StructureF& F) { return structure_rhs(F.as_function()); }

Trajectory rk_integrate(const SecondOrderRhs& rhs, double y0, double dy0, double z0, double z1, double tol) {
  if (!(tol >= kMinRkTolerance && tol <= kMaxRkTolerance)) {
    raise(ErrorKind::InvalidInput, "rk tolerance " + fmt(tol) + " outside [1e-12, 1e-3]");
  }
  if (!(y0 > 0.0)) raise(ErrorKind::InvalidInput, "rk initial value must be positive, got " + fmt(y0));
  if (!std::isfinite(dy0) || !std::isfinite(z0) || !std::isfinite(z1) || z0 == z1) {
    raise(ErrorKind::InvalidInput, "rk needs finite initial data and z0 != z1");
  }

  const double span = std::fabs(z1 - z0);
  const double dir = z1 > z0 ? 1.0 : -1.0;
  const double min_step = 1e-14 * span;
  auto deriv = [&rhs](double z, State s) { return State{s.dy, rhs(z, s.y, s.dy)}; };

  Trajectory traj;
  traj.tolerance = tol;
  traj.samples.push_back({z0, y0, dy0});

  double z = z0;
  State s{y0, dy0};
  State k1 = deriv(z, s);
  double h = std::min(span, 0.01 * span + std::pow(tol, 0.2) * 0.1);

  while (dir * (z1 - z) > 0.0) {
    if (h < min_step) {
      raise(ErrorKind::StepUnderflow, "step " + fmt(h) + " below 1e-14 * span at z = " + fmt(z));
    }
    const bool last = h >= std::fabs(z1 - z);
    const double step = last ? std::fabs(z1 - z) : h;
    const double hs = dir * step;

    const State k2 = deriv(z + c2 * hs, s + hs * (a21 * k1));
    const State k3 = deriv(z + c3 * hs, s + hs * (a31 * k1 + a32 * k2));
    const State k4 = deriv(z + c4 * hs, s + hs * (a41 * k1 + a42 * k2 + a43 * k3));
    const State k5 = deriv(z + c5 * hs, s + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const State k6 = deriv(z + hs, s + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const State next = s + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const State k7 = deriv(z + hs, next);
    const State err = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    const double err_norm = std::max(std::fabs(err.y), std::fabs(err.dy));
    if (!std::isfinite(err_norm) || !std::isfinite(next.y) || !std::isfinite(next.dy)) {
      ++traj.rejected_steps;
      h = 0.25 * step;
      continue;
    }
    if (err_norm <= tol) {
      z = last ? z1 : z + hs;
      s = next;
      k1 = k7;
      ++traj.accepted_steps;
      if (!(s.y > 0.0)) raise(ErrorKind::SolutionEscape, "y = " + fmt(s.y) + " at z = " + fmt(z));
      traj.samples.push_back({z, s.y, s.dy});
    } else {
      ++traj.rejected_steps;
    }
    const double factor = err_norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(tol / err_norm, 0.2), 0.2, 5.0);
    h = step * factor;
  }
  return traj;
}

Trajectory rk_integrate(const StructureF& F, double y0, double dy0, double z0, double z1, double tol) {
  return rk_integrate(structure_rhs(F), y0, dy0, z0, z1, tol);
}

double crosscheck(const SolutionEvaluator& sol, const Trajectory& traj) {
  double worst = 0.0;
  for (const auto& sample : traj.samples) worst = std::max(worst, std::fabs(sol(sample.z) - sample.y));
  return worst;
}

double crosscheck_from_initial_data(const SolutionEvaluator& sol, const StructureF& F, double z0, double z1,
                                    double tol) {
  const Jet j = sol.jet(z0, 1);
  return crosscheck(sol, rk_integrate(F, j.value(), j.derivative(1), z0, z1, tol));
}

}  // namespace backlund
