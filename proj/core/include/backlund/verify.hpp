#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "backlund/emden.hpp"
#include "backlund/ermakov.hpp"
#include "backlund/solution.hpp"
#include "backlund/structure.hpp"

namespace backlund {

/// Residual of an equation at one point together with the magnitude of its
/// dominant term; the relative residual is |residual| / (1 + scale).
struct ResidualSample {
  double residual = 0.0;
  double scale = 0.0;
};

/// Evaluates an equation residual from a solution jet (order >= 2).
using ResidualForm = std::function<ResidualSample(const Jet& y)>;

ResidualForm pinney_form(const ErmakovParams& params);
ResidualForm emden_form(const EmdenParams& params, EmdenVariant variant);
/// y y'' - F(z, y^2), scaled by |F|.
ResidualForm structure_form(const StructureFunction& F);

struct GridReport {
  int n_points = 0;
  double tolerance = 0.0;
  double max_abs_residual = 0.0;
  double max_rel_residual = 0.0;
  double argmax_z = 0.0;
  /// Points whose relative residual exceeds the tolerance.
  std::vector<std::pair<double, double>> failures;

  bool pass() const noexcept { return failures.empty(); }
};

/// Scans `interval` (log-spaced when it lies in (0, inf)) with n points.
/// DomainError from the solution or the form is re-raised with z attached.
/// Points are evaluated on `threads` threads (0: one per core once n is
/// large); the report does not depend on the thread count.
GridReport grid_scan(const SolutionEvaluator& sol, const ResidualForm& form, Interval interval, int n, double tol,
                     unsigned threads = 0);

}  // namespace backlund
