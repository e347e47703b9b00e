#include <doctest.h>

#include <cmath>

#include "backlund/errors.hpp"
#include "backlund/ermakov.hpp"
#include "backlund/structure.hpp"

using namespace backlund;

TEST_CASE("Pinney structure function") {
  // F = -alpha/v + Q v, so y y'' = F(z, y^2) is y'' = Q y - alpha / y^3
  for (auto [k, p, alpha] : {std::tuple{0, 2.0, 1.0}, {1, 1.0, 0.5}, {2, 0.5, 3.0}}) {
    const ErmakovParams params{alpha, k, p, MoebiusMap::identity()};
    const StructureF F = ep_structure(params);
    for (double z : {0.5, 1.0, 2.3}) {
      for (double v : {0.25, 1.0, 4.0}) {
        const double expected = -alpha / v + ep_Q(params, z) * v;
        CHECK(F(z, v) == doctest::Approx(expected).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("build_structure_F edge cases") {
  const Expr z = Expr::variable();
  const StructureF zero = build_structure_F({}, (2.0 * z + 1.0) / (z + 3.0));
  CHECK(std::fabs(zero(0.7, 2.0)) <= 1e-12);

  const StructureF square = build_structure_F({PowerTerm{2, 1.0, z}});
  CHECK(square(0.3, 1.5) == doctest::Approx(2.25));
  CHECK(square.linear_coefficient(0.3) == 0.0);

  try {
    build_structure_F({PowerTerm{2, 1.0, z}, PowerTerm{2, 3.0, z * z}});
    FAIL("duplicate accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DuplicateExponent);
  }

  const StructureF inv = build_structure_F({PowerTerm{-1, 1.0, z}});
  CHECK_THROWS_AS(inv(1.0, 0.0), Error);
  CHECK_THROWS_AS(square(1.0, -1.0), Error);
}

TEST_CASE("power term uses (G')^(n+1)") {
  const Expr z = Expr::variable();
  const StructureF F = build_structure_F({PowerTerm{2, -3.0, -1.0 / z}});
  const double zz = 1.7, v = 0.8;
  CHECK(F(zz, v) == doctest::Approx(-3.0 * std::pow(1.0 / (zz * zz), 3) * v * v));
}
