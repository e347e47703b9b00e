#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "backlund/chart.hpp"
#include "backlund/emden.hpp"
#include "backlund/errors.hpp"

using namespace backlund;

namespace {

const Expr z = Expr::variable();
const Interval kGrid{0.5, 5.0};

double relative_emden(const SolutionEvaluator& y, const EmdenParams& params, EmdenVariant variant, double x) {
  const Jet j = y.jet(x, 3);
  return std::fabs(ef_residual(j, params, variant)) / (1.0 + ef_residual_scale(j, params, variant));
}

}  // namespace

TEST_CASE("canonical change of variables") {
  auto [z2, y2] = ef_to_canonical(1.7, 0.3, 2.0);
  CHECK(z2 == 1.7);
  CHECK(y2 == doctest::Approx(0.51));
  auto [z3, y3] = ef_to_canonical(2.0, 5.0, 3.0);
  CHECK(z3 == 4.0);
  CHECK(y3 == 20.0);

  std::mt19937 rng(8);
  std::uniform_real_distribution<double> ux(0.1, 5.0), uq(-3.0, 3.0), ua(1.2, 4.0);
  for (int i = 0; i < 100; ++i) {
    const double x = ux(rng), q = uq(rng), alpha = ua(rng);
    auto [zz, yy] = ef_to_canonical(x, q, alpha);
    auto [xb, qb] = ef_from_canonical(zz, yy, alpha);
    CHECK(xb == doctest::Approx(x).epsilon(1e-14));
    CHECK(qb == doctest::Approx(q).epsilon(1e-14));
  }
  CHECK_THROWS_AS(ef_to_canonical(0.0, 1.0, 2.0), Error);
}

TEST_CASE("ef1_seed") {
  const EmdenParams params;
  const SolutionEvaluator y0 = ef1_seed(params);
  CHECK(ef_seed_constant(params, EmdenVariant::First).p == 1.0);
  CHECK(y0(3.0) == 9.0);
  CHECK(ef_residual(y0.jet(2.0, 3), params, EmdenVariant::First) == 0.0);
  CHECK(std::fabs(ef_residual(y0.jet(1.3, 3), params, EmdenVariant::First)) <= 1e-15);
  CHECK(ef_residual(z.jet(2.0, 3) * z.jet(2.0, 3), params, EmdenVariant::First) == 0.0);

  try {
    ef1_seed({2.0, 2.0, 2, 0.0, 1.0, 1.0});
    FAIL("complex seed accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoRealSeed);
  }
  CHECK(ef_seed_constant({3.0, -8.0, 2, 0.0, 1.0, 1.0}, EmdenVariant::First).p == doctest::Approx(1.0));

  const EmdenParams m3{2.5, -1.5, 3, 0.0, 1.0, 1.0};
  for (double x : scan_points(kGrid, 50)) CHECK(relative_emden(ef1_seed(m3), m3, EmdenVariant::First, x) <= 1e-12);
}

TEST_CASE("ef1_backlund") {
  const EmdenParams params;
  const SolutionEvaluator y0 = ef1_seed(params);
  const SolutionEvaluator same = ef1_backlund(y0, 1.0, 0.0, kGrid);
  for (double x : {0.5, 2.0, 5.0}) CHECK(same(x) == doctest::Approx(y0(x)));

  const SolutionEvaluator y1 = ef1_backlund(y0, 1.0, 1.0, kGrid);
  CHECK(y1(1.0) == 0.5);
  const SolutionEvaluator b2 = backlund_B2(y0, ef1_f(1.0, 1.0), kGrid);
  for (double x : scan_points(kGrid, 40)) {
    CHECK(y1(x) == doctest::Approx(x * x / (x + 1.0)).epsilon(1e-15));
    CHECK(std::fabs(y1(x) - b2(x)) <= 1e-12);
    CHECK(std::fabs(ef_residual(y1.jet(x, 3), params, EmdenVariant::First)) <= 1e-12);
  }
  // y1'' = 2 / (z + 1)^3 exactly
  CHECK(y1.jet(1.0, 3).derivative(2) == doctest::Approx(0.25).epsilon(1e-14));

  const SolutionEvaluator clipped = ef1_backlund(y0, 1.0, -1.0, {0.1, 3.0});
  CHECK(clipped.domain().hi == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(clipped.domain().hi < 1.0);
}

TEST_CASE("ladder") {
  const EmdenParams params;
  const LadderResult empty = ef1_ladder(params, {}, kGrid);
  CHECK(empty.state.R == 1.0);
  CHECK(empty.state.S == 0.0);
  for (double x : {0.5, 2.0}) CHECK(empty.solution(x) == doctest::Approx(x * x));

  const LadderResult two = ef1_ladder(params, {{1, 1}, {1, 1}}, kGrid);
  CHECK(two.state.R == 1.0);
  CHECK(two.state.S == 2.0);
  const SolutionEvaluator once = ef1_backlund(ef1_seed(params), 1.0, 2.0, kGrid);
  for (double x : scan_points(kGrid, 20)) CHECK(two.solution(x) == doctest::Approx(once(x)).epsilon(1e-14));

  std::mt19937 rng(2718);
  std::uniform_real_distribution<double> ud(0.5, 2.0), uk(0.0, 1.0);
  std::uniform_int_distribution<int> ulen(1, 5);
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<std::pair<double, double>> steps(ulen(rng));
    for (auto& s : steps) s = {ud(rng), uk(rng)};
    SolutionEvaluator iterated = ef1_seed(params);
    for (const auto& [d, k] : steps) iterated = ef1_backlund(iterated, d, k, {0.01, 5.0});
    const LadderResult closed = ef1_ladder(params, steps, iterated.domain());
    CHECK(iterated.domain().lo < 0.5);
    for (double x : scan_points(iterated.domain(), 50)) {
      CHECK(std::fabs(closed.solution(x) - iterated(x)) <= 1e-11 * (1.0 + closed.solution(x)));
    }
  }
  CHECK_THROWS_AS(ladder_fold({{0.0, 1.0}}), Error);
}

TEST_CASE("ef2_f") {
  const EmdenParams params{2.0, -2.0, 2, 1.0, 1.0, 1.0};
  const Expr f = ef2_f(params, 2.0, 1.0);
  for (double x : {0.0, 0.5, 3.0}) CHECK(f(x) == doctest::Approx((3.0 * x + 1.0) / (1.0 - x)));
  try {
    f(1.0);
    FAIL("pole not flagged");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Domain);
  }
  try {
    ef2_moebius(params, 2.0, 1.0).apply(1.0);
    FAIL("pole not flagged");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Pole);
  }
  for (double x : {0.3, 2.0}) CHECK(ef2_f(params, 2.0, 0.0)(x) == doctest::Approx(x));

  // (eta, gamma) = (0, 1) gives the first-example map with K -> -K
  const EmdenParams first{2.0, -2.0, 2, 0.0, 1.0, 1.0};
  for (double x : {0.3, 2.0}) CHECK(ef2_f(first, 1.5, -0.4)(x) == doctest::Approx(ef1_f(1.5, 0.4)(x)).epsilon(1e-15));
}

TEST_CASE("ef2_seed and ef2_backlund") {
  const EmdenParams shifted{2.0, -2.0, 2, 3.0, 1.0, 1.0};
  const SolutionEvaluator y0 = ef2_seed(shifted);
  CHECK(y0(1.0) == doctest::Approx(16.0));
  CHECK(ef_residual(y0.jet(1.0, 3), shifted, EmdenVariant::Second) == doctest::Approx(0.0).scale(1e-14));

  const EmdenParams first;
  for (double x : {0.5, 2.0}) CHECK(ef2_seed(first)(x) == doctest::Approx(ef1_seed(first)(x)).epsilon(1e-15));
  for (double x : {0.5, 2.0}) {
    CHECK(ef2_backlund(ef2_seed(first), first, 1.0, -1.0, kGrid)(x) ==
          doctest::Approx(ef1_backlund(ef1_seed(first), 1.0, 1.0, kGrid)(x)).epsilon(1e-13));
  }
  for (double x : {0.5, 2.0}) CHECK(ef2_backlund(y0, shifted, 1.0, 0.0, kGrid)(x) == doctest::Approx(y0(x)));

  const double delta_step = 1.0, k_step = 0.05;
  const SolutionEvaluator y1 = ef2_backlund(y0, shifted, delta_step, k_step, kGrid);
  const SolutionEvaluator closed = ef2_transformed(shifted, delta_step, k_step, kGrid);
  const double dd = delta_step * shifted.delta;
  for (double x : scan_points(y1.domain(), 60)) {
    const double den = (dd - k_step * 3.0) - k_step * x;
    const double expected2 = std::pow(dd * (3.0 + x) / den, 4.0) * std::pow(den / dd, 2.0);
    CHECK(y1(x) * y1(x) == doctest::Approx(expected2).epsilon(1e-12));
    CHECK(closed(x) == doctest::Approx(y1(x)).epsilon(1e-12));
    CHECK(relative_emden(y1, shifted, EmdenVariant::Second, x) <= 1e-10);
  }
}

TEST_CASE("random admissible second-example parameters") {
  std::mt19937 rng(1618);
  std::uniform_real_distribution<double> ueta(0.2, 2.0), ugamma(0.3, 1.5), ualpha(1.5, 3.0), ubeta(-3.0, -0.5);
  std::uniform_int_distribution<int> um(2, 4);
  for (int trial = 0; trial < 5; ++trial) {
    const EmdenParams params{ualpha(rng), ubeta(rng), um(rng), ueta(rng), ugamma(rng), 1.0};
    const SolutionEvaluator y0 = ef2_seed(params);
    for (double x : scan_points({0.5, 3.0}, 30)) CHECK(relative_emden(y0, params, EmdenVariant::Second, x) <= 1e-11);
    const SolutionEvaluator y1 = ef2_backlund(y0, params, 1.0, 0.02, {0.5, 3.0});
    for (double x : scan_points(y1.domain(), 30)) {
      CHECK(relative_emden(y1, params, EmdenVariant::Second, x) <= 1e-10);
    }
  }
}

TEST_CASE("original coordinates") {
  const EmdenParams params{2.5, -1.0, 2, 0.0, 1.0, 1.0};
  const SolutionEvaluator y1 = ef1_backlund(ef1_seed(params), 1.0, 0.5, {0.5, 4.0});
  const SolutionEvaluator q = to_original_coordinates(y1, params.alpha);
  for (double x : scan_points(q.domain(), 40)) {
    const Jet j = q.jet(x, 3);
    CHECK(std::fabs(ef_original_residual(j, params, EmdenVariant::First)) <= 1e-9 * (1.0 + std::fabs(j.value())));
  }

  const EmdenParams second{3.0, -2.0, 3, 0.5, 1.2, 1.0};
  const SolutionEvaluator y2 = ef2_backlund(ef2_seed(second), second, 1.0, 0.03, {0.5, 4.0});
  const SolutionEvaluator q2 = to_original_coordinates(y2, second.alpha);
  for (double x : scan_points(q2.domain(), 40)) {
    const Jet j = q2.jet(x, 3);
    CHECK(std::fabs(ef_original_residual(j, second, EmdenVariant::Second)) <= 1e-9 * (1.0 + std::fabs(j.value())));
  }
}

TEST_CASE("G and shifts") {
  for (const EmdenParams& params : {EmdenParams{}, EmdenParams{2.0, -2.0, 2, 0.7, 1.3, 1.0},
                                    EmdenParams{2.0, -2.0, 2, 2.0, 0.0, 1.0}}) {
    for (EmdenVariant variant : {EmdenVariant::First, EmdenVariant::Second}) {
      const Expr G = ef_G(params, variant);
      const Expr f = ef_f(params, variant, 1.0, 0.1);
      const double K = ef_G_shift(params, variant, 1.0, 0.1);
      for (double x : {0.6, 1.0, 2.0}) CHECK(std::fabs(functional_residuals(G, z, f, MoebiusMap::identity(), K, x).r_g) <= 1e-12);
    }
  }
}

TEST_CASE("fde certificates for the Emden structures") {
  std::mt19937 rng(12);
  std::uniform_real_distribution<double> uz(0.5, 3.0), uv(0.1, 4.0);
  const EmdenParams params{2.0, -2.0, 2, 0.4, 1.1, 1.0};
  for (EmdenVariant variant : {EmdenVariant::First, EmdenVariant::Second}) {
    const StructureF F = ef_structure(params, variant);
    const Expr f = ef_f(params, variant, 1.0, 0.05);
    for (int i = 0; i < 20; ++i) {
      const double x = uz(rng), v = uv(rng);
      CHECK(std::fabs(fde_residual(F, f, x, v)) <= 1e-9 * (1.0 + std::fabs(F(x, v))));
    }
  }
}

TEST_CASE("Emden linear pair realises the second-example G") {
  const EmdenParams params{2.0, -2.0, 2, 0.8, 1.2, 1.0};
  const LinearPair pair = ef_linear_pair(params, 1.0, 0.2 * z * z, {0.5, 2.0});
  const Expr f = ef2_f(params, 1.0, 0.1);
  for (double x : scan_points({0.5, 2.0}, 10)) {
    CHECK(std::fabs(functional_residuals(pair.G(), z, f, MoebiusMap::identity(), 0.1, x).r_g) <= 1e-10);
    CHECK(std::fabs(ratio_schwarzian_check(pair, x)) <= 1e-9);
  }
}
