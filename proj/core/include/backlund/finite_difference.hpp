#pragma once

#include <functional>

#include "backlund/jet.hpp"

namespace backlund {

using ScalarFunction = std::function<double(double)>;

inline constexpr double kDefaultFdStep = 1e-3;

/// Central-difference estimates of f, f', f'', f''' at z (3/5/7-point
/// stencils, one Richardson refinement with h/2 for f' and f''). Independent of the jet
/// arithmetic; used only as a cross-check oracle.
Jet fd_derivatives(const ScalarFunction& fn, double z, double h = kDefaultFdStep);

}  // namespace backlund
