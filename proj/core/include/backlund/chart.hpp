#pragma once

#include "backlund/expr.hpp"
#include "backlund/jet.hpp"
#include "backlund/moebius.hpp"
#include "backlund/solution.hpp"
#include "backlund/structure.hpp"

namespace backlund {

/// F(z,v) - f' F(f, f' v) + 1/2 {f,z} v. Vanishes identically in (z, v)
/// exactly when Y^2 = y^2(f)/f' maps solutions of y y'' = F(z, y^2) back
/// into the same equation.
double fde_residual(const StructureFunction& F, const Expr& f, double z, double v);
double fde_residual(const StructureF& F, const Expr& f, double z, double v);

/// Y(z) = y0(f(z)) / sqrt(f'(z)), positive branch.
///
/// When `domain` is finite it is sampled up front: NegativeDerivative if
/// f' <= 0 somewhere, DomainEscape if f leaves y0's domain. The same checks
/// run pointwise on every evaluation.
SolutionEvaluator backlund_B2(const SolutionEvaluator& y0, const Expr& f, Interval domain);
SolutionEvaluator backlund_B2(const SolutionEvaluator& y0, const Expr& f);

struct Lemma1Residuals {
  double r_eq;  ///< y y'' - F(z, y^2)
  double r_v;   ///< v'' v - (v')^2 / 2 - 2 v F(z, v) with v = y^2
};

/// Residuals of the y-equation and of its v = y^2 image from one y jet.
/// Algebraically r_v = 2 y^2 r_eq.
Lemma1Residuals lemma1_residuals(const Jet& y, const StructureFunction& F);

/// {phi, t} - 2 phi_t F(phi, phi_t).
double schwarzian_form_residual(const Jet& phi, const StructureFunction& F);

/// F~(psi, psi_t) = g'(psi) F(g(psi), g'(psi) psi_t) - psi_t/2 {g, psi}: the
/// structure function seen by psi when phi = g(psi).
StructureFunction transported_structure(const StructureFunction& F, const Expr& g);

struct FunctionalResiduals {
  double r_g;  ///< G(f(z)) - G(z) - K
  double r_w;  ///< w(f(z)) - M(w(z))
};

FunctionalResiduals functional_residuals(const Expr& G, const Expr& w, const Expr& f, const MoebiusMap& M,
                                         double K, double z);

/// G0 + amplitude * sin(2 pi G0 / K); keeps G(f) = G + K whenever G0 does.
Expr periodic_extension_G(const Expr& G0, double amplitude, double K);

/// w = (D G - B) / (A - C G) for the frame (A, B, C, D).
Expr frame_w(const Expr& G, const MoebiusMap& frame);

/// The map carrying w to w(f) when G(f) = G + K and w = frame_w(G, frame):
/// ((Delta + DCK) w + D^2 K) / ((Delta - DCK) - C^2 K w).
MoebiusMap frame_translation_map(const MoebiusMap& frame, double K);

}  // namespace backlund
