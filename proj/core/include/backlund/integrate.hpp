#pragma once

#include <functional>
#include <vector>

#include "backlund/solution.hpp"
#include "backlund/structure.hpp"

namespace backlund {

/// y'' as a function of (z, y, y').
using SecondOrderRhs = std::function<double(double z, double y, double dy)>;

/// y'' = F(z, y^2) / y.
SecondOrderRhs structure_rhs(const StructureFunction& F);
SecondOrderRhs structure_rhs(const StructureF& F);

struct TrajectorySample {
  double z;
  double y;
  double dy;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  double tolerance = 0.0;
  int accepted_steps = 0;
  int rejected_steps = 0;
};

constexpr double kMinRkTolerance = 1e-12;
constexpr double kMaxRkTolerance = 1e-3;

/// Dormand-Prince 5(4) with local error control on (y, y'). One sample per
/// accepted step, starting at z0 and ending exactly at z1 (z1 < z0 integrates
/// backwards). SolutionEscape if y <= 0, StepUnderflow if the step falls
/// below 1e-14 |z1 - z0|.
Trajectory rk_integrate(const SecondOrderRhs& rhs, double y0, double dy0, double z0, double z1, double tol);
Trajectory rk_integrate(const StructureF& F, double y0, double dy0, double z0, double z1, double tol);

/// max |sol(z) - y| over the trajectory samples.
double crosscheck(const SolutionEvaluator& sol, const Trajectory& traj);

/// Integrates from sol's own value and slope at z0 and cross-checks.
double crosscheck_from_initial_data(const SolutionEvaluator& sol, const StructureF& F, double z0, double z1,
                                    double tol);

}  // namespace backlund
