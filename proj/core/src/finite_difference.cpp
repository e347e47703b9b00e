#include "backlund/finite_difference.hpp"

#include <array>

#include "backlund/errors.hpp"

namespace backlund {
namespace {

struct Stencil {
  double d1;
  double d2;
  double d3;
};

Stencil central(const ScalarFunction& fn, double z, double h) {
  const double fm3 = fn(z - 3 * h);
  const double fm2 = fn(z - 2 * h);
  const double fm1 = fn(z - h);
  const double f0 = fn(z);
  const double fp1 = fn(z + h);
  const double fp2 = fn(z + 2 * h);
  const double fp3 = fn(z + 3 * h);
  Stencil s{};
  s.d1 = (fp1 - fm1) / (2 * h);
  s.d2 = (-fp2 + 16 * fp1 - 30 * f0 + 16 * fm1 - fm2) / (12 * h * h);
  s.d3 = (-fp3 + 8 * fp2 - 13 * fp1 + 13 * fm1 - 8 * fm2 + fm3) / (8 * h * h * h);
  return s;
}

}  // namespace

Jet fd_derivatives(const ScalarFunction& fn, double z, double h) {
  if (!(h > 0.0)) raise(ErrorKind::InvalidInput, "finite-difference step must be positive");
  const Stencil coarse = central(fn, z, h);
  const Stencil fine = central(fn, z, h / 2);
  // d3 is left unrefined: its h^-3 roundoff dominates at h/2.
  const std::array<double, 4> d{
      fn(z),
      (4 * fine.d1 - coarse.d1) / 3,
      (16 * fine.d2 - coarse.d2) / 15,
      coarse.d3,
  };
  return Jet::from_derivatives(z, d);
}

}  // namespace backlund
