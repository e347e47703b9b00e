#include "backlund/chart.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "backlund/errors.hpp"

namespace backlund {
namespace {

std::string at(double z) {
  std::ostringstream out;
  out.precision(17);
  out << " at z = " << z;
  return out.str();
}

void check_b2_point(const SolutionEvaluator& y0, const Jet& f, const std::string& label) {
  const double fp = f.taylor(1);
  if (!(fp > 0.0)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << label << ": f' = " << fp << at(f.point());
    raise(ErrorKind::NegativeDerivative, msg.str());
  }
  if (!y0.domain().contains(f.value())) {
    std::ostringstream msg;
    msg.precision(17);
    msg << label << ": f = " << f.value() << at(f.point()) << " leaves the domain of " << y0.label();
    raise(ErrorKind::DomainEscape, msg.str());
  }
}

}  // namespace

double fde_residual(const StructureFunction& F, const Expr& f, double z, double v) {
  if (!(v > 0.0)) raise(ErrorKind::Domain, "fde residual needs v > 0");
  const Jet fj = f.jet(z, 3);
  const double fp = fj.taylor(1);
  const double s = schwarzian(fj);
  return F(z, v) - fp * F(fj.value(), fp * v) + 0.5 * s * v;
}

double fde_residual(const StructureF& F, const Expr& f, double z, double v) {
  return fde_residual(F.as_function(), f, z, v);
}

SolutionEvaluator backlund_B2(const SolutionEvaluator& y0, const Expr& f, Interval domain) {
  const std::string label = "B2[" + y0.label() + "]";
  if (domain.finite()) {
    for (double z : scan_points(Interval{domain.lo, domain.hi}, kDomainSamples)) {
      check_b2_point(y0, f.jet(z, 1), label);
    }
  }
  auto fn = [y0, f, label](double z, int order) {
    if (order + 1 > kMaxJetOrder) raise(ErrorKind::OrderMismatch, "B2 needs one spare jet order");
    const Jet fj = f.jet(z, order + 1);
    check_b2_point(y0, fj, label);
    const Jet outer = y0.jet(fj.value(), order);
    const Jet inner = fj.truncated(order);
    return compose(outer, inner) / sqrt(fj.differentiated());
  };
  return SolutionEvaluator(label, std::move(fn), domain);
}

SolutionEvaluator backlund_B2(const SolutionEvaluator& y0, const Expr& f) {
  return backlund_B2(y0, f, y0.domain());
}

Lemma1Residuals lemma1_residuals(const Jet& y, const StructureFunction& F) {
  if (y.order() < 2) raise(ErrorKind::OrderMismatch, "v = y^2 residuals need y'' in the jet");
  const double y0 = y.derivative(0);
  const double y1 = y.derivative(1);
  const double y2 = y.derivative(2);
  const double v = y0 * y0;
  const double v1 = 2.0 * y0 * y1;
  const double v2 = 2.0 * y1 * y1 + 2.0 * y0 * y2;
  const double Fv = F(y.point(), v);
  return {y0 * y2 - Fv, v2 * v - 0.5 * v1 * v1 - 2.0 * v * Fv};
}

double schwarzian_form_residual(const Jet& phi, const StructureFunction& F) {
  const double s = schwarzian(phi);
  const double phi_t = phi.taylor(1);
  return s - 2.0 * phi_t * F(phi.value(), phi_t);
}

StructureFunction transported_structure(const StructureFunction& F, const Expr& g) {
  return [F, g](double psi, double psi_t) {
    const Jet gj = g.jet(psi, 3);
    const double gp = gj.taylor(1);
    return gp * F(gj.value(), gp * psi_t) - 0.5 * psi_t * schwarzian(gj);
  };
}

FunctionalResiduals functional_residuals(const Expr& G, const Expr& w, const Expr& f, const MoebiusMap& M,
                                         double K, double z) {
  const double fz = f(z);
  return {G(fz) - G(z) - K, w(fz) - M.apply(w(z))};
}

Expr periodic_extension_G(const Expr& G0, double amplitude, double K) {
  if (K == 0.0) raise(ErrorKind::InvalidInput, "periodic extension needs a non-zero period K");
  if (amplitude == 0.0) return G0;
  return G0 + amplitude * sin((2.0 * std::numbers::pi / K) * G0);
}

Expr frame_w(const Expr& G, const MoebiusMap& frame) { return frame.inverse().apply(G); }

MoebiusMap frame_translation_map(const MoebiusMap& frame, double K) {
  const double delta = frame.determinant();
  const double C = frame.c();
  const double D = frame.d();
  return {delta + D * C * K, D * D * K, -C * C * K, delta - D * C * K};
}

}  // namespace backlund
