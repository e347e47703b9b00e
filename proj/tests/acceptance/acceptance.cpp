// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "backlund/chart.hpp"
#include "backlund/emden.hpp"
#include "backlund/ermakov.hpp"
#include "backlund/errors.hpp"
#include "backlund/integrate.hpp"
#include "backlund/linear_pair.hpp"
#include "backlund/verify.hpp"

using namespace backlund;

namespace {

const Expr z = Expr::variable();

struct Outcome {
  bool pass = true;
  std::string detail;

  // Records value <= tol under `what`; keeps the first failing detail.
  void bound(const std::string& what, double value, double tol) {
    char buf[160];
    const bool ok = value <= tol;
    std::snprintf(buf, sizeof buf, "%s %.3g <= %.0e%s", what.c_str(), value, tol, ok ? "" : " FAILED");
    if (!detail.empty()) detail += "; ";
    detail += buf;
    pass = pass && ok;
  }
  void require(const std::string& what, bool ok) {
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " FAILED");
    pass = pass && ok;
  }
};

int failures = 0;

void run(int id, const char* name, const std::function<Outcome()>& body) {
  Outcome out;
  try {
    out = body();
  } catch (const Error& e) {
    out.pass = false;
    out.detail = std::string("unexpected ") + e.what();
  }
  if (!out.pass) ++failures;
  std::printf("[%s] %2d %s: %s\n", out.pass ? "PASS" : "FAIL", id, name, out.detail.c_str());
  std::fflush(stdout);
}

double rel(double r, double scale) { return std::fabs(r) / (1.0 + std::fabs(scale)); }

Outcome schwarzian_axioms() {
  Outcome out;
  std::mt19937 rng(101);
  std::uniform_real_distribution<double> coef(-2.0, 2.0), pt(-1.0, 1.0);
  double moebius = 0.0;
  int maps = 0;
  while (maps < 20) {
    const double a = coef(rng), b = coef(rng), c = coef(rng), d = coef(rng);
    if (std::fabs(a * d - b * c) < 0.5) continue;
    ++maps;
    const Expr m = (a * z + b) / (c * z + d);
    int points = 0;
    while (points < 100) {
      const double x = pt(rng);
      if (std::fabs(c * x + d) < 0.25) continue;
      ++points;
      moebius = std::max(moebius, std::fabs(schwarzian(m.jet(x, 3))) / (1.0 + std::fabs(x)));
    }
  }
  out.bound("max |{M,z}|/(1+|z|) over 20 maps x 100 points", moebius, 1e-12);

  // {g o h, z} = ({g, .} o h) h'^2 + {h, z}
  std::uniform_real_distribution<double> u(0.3, 1.5);
  double cocycle = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double a = u(rng), b = u(rng), c = u(rng);
    const Expr h = a * z + 0.2 * b * sin(c * z) + 0.1 * z * z * z;
    const Expr g = exp(c * z) + a * z + b * log(2.0 + z * z);
    const double x = pt(rng);
    const Jet hj = h.jet(x, 3);
    const double lhs = schwarzian(g.substitute(h).jet(x, 3));
    const double rhs = schwarzian(g.jet(hj.value(), 3)) * hj.taylor(1) * hj.taylor(1) + schwarzian(hj);
    cocycle = std::max(cocycle, rel(lhs - rhs, lhs));
  }
  out.bound("composition rule over 100 pairs", cocycle, 1e-10);
  return out;
}

Outcome ratio_schwarzian() {
  Outcome out;
  const Interval grid{0.5, 2.0};
  const std::vector<std::pair<std::string, LinearPair>> pairs = {
      {"P=0,Q=0", LinearPair(Expr(0.0), Expr(0.0), z, Expr(1.0), MoebiusMap::identity(), grid)},
      {"P=0,Q=1", LinearPair(Expr(0.0), Expr(1.0), exp(z), exp(-z), MoebiusMap::identity(), grid)},
      {"P=z,Q=0", LinearPair(z, Expr(0.0), exp(2.0 * z), Expr(1.0), MoebiusMap::identity(), grid)},
  };
  for (const auto& [name, pair] : pairs) {
    double worst = 0.0;
    for (double x : scan_points(grid, 50)) worst = std::max(worst, std::fabs(ratio_schwarzian_check(pair, x)));
    out.bound(name, worst, 1e-10);
  }
  return out;
}

Outcome ermakov_bridge() {
  Outcome out;
  for (auto [k, p] : {std::pair{0, 2.0}, {1, 1.0}, {2, 0.5}}) {
    const ErmakovParams params{1.0, k, p, MoebiusMap::identity()};
    double worst = 0.0;
    for (double x : scan_points({0.5, 3.0}, 100)) {
      const double q = ep_Q(params, x);
      worst = std::max(worst, std::fabs(-0.5 * schwarzian(ep_w(params).jet(x, 3)) - q) / std::fabs(q));
    }
    out.bound("(k,p)=(" + std::to_string(k) + "," + std::to_string(p).substr(0, 3) + ")", worst, 1e-9);
  }
  return out;
}

Outcome ermakov_solutions() {
  Outcome out;
  std::mt19937 rng(404);
  std::uniform_real_distribution<double> ua(0.2, 3.0), up(0.5, 2.0), um(0.2, 2.0);
  std::uniform_int_distribution<int> uk(0, 2);
  double seed_worst = 0.0;
  double general_worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    MoebiusMap m = MoebiusMap::identity();
    for (;;) {
      const double a = um(rng), b = um(rng), c = um(rng), d = um(rng);
      if (a * d - b * c > 0.2) {
        m = MoebiusMap(a, b, c, d);
        break;
      }
    }
    const ErmakovParams params{ua(rng), uk(rng), up(rng), m};
    const Interval grid{0.2, 1.5};
    seed_worst = std::max(seed_worst, grid_scan(ep_seed(params), pinney_form(params), grid, 200, 1e-10).max_rel_residual);
    const SolutionEvaluator general = ep_general(params, grid);
    general_worst =
        std::max(general_worst, grid_scan(general, pinney_form(params), general.domain(), 200, 1e-10).max_rel_residual);
  }
  out.bound("seed, 5 random (alpha,k,p,M)", seed_worst, 1e-10);
  out.bound("general", general_worst, 1e-10);

  const ErmakovParams analytic{1.0, 0, 2.0, MoebiusMap(1, 1, 0, 1)};
  const SolutionEvaluator y1 = ep_general(analytic, {-1.0, 4.0});
  double closed = 0.0;
  for (double x : scan_points(y1.domain(), 200)) {
    closed = std::max(closed, std::fabs(y1(x) * y1(x) - (1.0 + std::exp(-2.0 * x))) / (1.0 + std::exp(-2.0 * x)));
  }
  out.bound("y1^2 vs 1+e^{-2z}", closed, 1e-14);
  out.bound("analytic case residual", grid_scan(y1, pinney_form(analytic), y1.domain(), 200, 1e-12).max_rel_residual,
            1e-12);
  return out;
}

Outcome emden_example1() {
  Outcome out;
  const EmdenParams params;
  const Interval grid{0.5, 5.0};
  const SolutionEvaluator y0 = ef1_seed(params);
  const SolutionEvaluator y1 = ef1_backlund(y0, 1.0, 1.0, grid);
  const ResidualForm form = emden_form(params, EmdenVariant::First);
  out.bound("seed z^2 max|r|", grid_scan(y0, form, grid, 200, 1e-12).max_abs_residual, 1e-12);
  out.bound("z^2/(z+1) max|r|", grid_scan(y1, form, grid, 200, 1e-12).max_abs_residual, 1e-12);
  double shape = 0.0;
  for (double x : scan_points(grid, 200)) shape = std::max(shape, std::fabs(y1(x) - x * x / (x + 1.0)));
  out.bound("y1 vs z^2/(z+1)", shape, 1e-15);
  out.require("y1(1) == 0.5", y1(1.0) == 0.5);
  return out;
}

Outcome ladder_algebra() {
  Outcome out;
  const EmdenParams params;
  std::mt19937 rng(606);
  std::uniform_real_distribution<double> ud(0.5, 2.0), uk(0.0, 1.0);
  std::uniform_int_distribution<int> ulen(1, 5);
  double worst = 0.0;
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<std::pair<double, double>> steps(ulen(rng));
    for (auto& s : steps) s = {ud(rng), uk(rng)};
    SolutionEvaluator iterated = ef1_seed(params);
    for (const auto& [d, k] : steps) iterated = ef1_backlund(iterated, d, k, {0.05, 5.0});
    const LadderResult closed = ef1_ladder(params, steps, iterated.domain());
    for (double x : scan_points(iterated.domain(), 100)) {
      worst = std::max(worst, std::fabs(closed.solution(x) - iterated(x)));
    }
  }
  out.bound("closed form vs n-fold application", worst, 1e-11);

  const LadderResult two = ef1_ladder(params, {{1, 1}, {1, 1}}, {0.5, 5.0});
  out.require("(R,S)=(1,2)", two.state.R == 1.0 && two.state.S == 2.0);
  const SolutionEvaluator once = ef1_backlund(ef1_seed(params), 1.0, 2.0, {0.5, 5.0});
  double diff = 0.0;
  for (double x : scan_points({0.5, 5.0}, 100)) diff = std::max(diff, std::fabs(two.solution(x) - once(x)));
  out.bound("two steps vs K/Delta=2", diff, 1e-11);
  return out;
}

Outcome emden_example2() {
  Outcome out;
  const Interval grid{0.5, 5.0};

  // (eta, gamma) = (0, 1), delta = 1: the second-example step (Delta, K) is the
  // first-example step (Delta, -K).
  const EmdenParams first;
  double match = 0.0;
  for (auto [d, k] : {std::pair{1.0, 1.0}, {2.0, 0.5}, {0.7, 0.3}}) {
    const SolutionEvaluator a = ef2_backlund(ef2_seed(first), first, d, -k, grid);
    const SolutionEvaluator b = ef1_backlund(ef1_seed(first), d, k, grid);
    for (double x : scan_points(grid, 100)) match = std::max(match, std::fabs(a(x) - b(x)));
  }
  out.bound("ef2(eta=0,gamma=1) vs ef1", match, 1e-13);

  std::mt19937 rng(707);
  std::uniform_real_distribution<double> ueta(0.2, 2.0), ugamma(0.3, 1.5), ualpha(1.5, 3.0), ubeta(-3.0, -0.5),
      uK(0.0, 0.05);
  std::uniform_int_distribution<int> um(2, 4);
  double yr = 0.0;
  double efmq = 0.0;
  for (int i = 0; i < 5; ++i) {
    const EmdenParams params{ualpha(rng), ubeta(rng), um(rng), ueta(rng), ugamma(rng), 1.0};
    const SolutionEvaluator y1 = ef2_backlund(ef2_seed(params), params, 1.0, uK(rng), {0.5, 3.0});
    yr = std::max(yr, grid_scan(y1, emden_form(params, EmdenVariant::Second), y1.domain(), 200, 1e-10).max_rel_residual);
    const SolutionEvaluator q = to_original_coordinates(y1, params.alpha);
    for (double x : scan_points(q.domain(), 100)) {
      const Jet j = q.jet(x, 3);
      efmq = std::max(efmq, rel(ef_original_residual(j, params, EmdenVariant::Second),
                                ef_original_residual_scale(j, params, EmdenVariant::Second)));
    }
  }
  out.bound("canonical residual, 5 random (eta,gamma,...)", yr, 1e-10);
  out.bound("x-coordinate residual", efmq, 1e-9);
  return out;
}

Outcome fde_certificates() {
  Outcome out;
  struct Family {
    std::string name;
    StructureF F;
    Expr f;
    Interval z;
  };
  const ErmakovParams ep{0.7, 1, 1.3, MoebiusMap(2.0, 1.0, 0.5, 1.5)};
  const EmdenParams ef1;
  const EmdenParams ef2{2.0, -2.0, 2, 0.4, 1.1, 1.0};
  const std::vector<Family> families = {
      {"ermakov", ep_structure(ep), ep_f(ep), ep_f_domain(ep, {0.2, 1.5})},
      {"emden1", ef_structure(ef1, EmdenVariant::First), ef1_f(1.0, 1.0), {0.5, 3.0}},
      {"emden2", ef_structure(ef2, EmdenVariant::Second), ef2_f(ef2, 1.0, 0.05), {0.5, 3.0}},
  };
  std::mt19937 rng(808);
  for (const Family& fam : families) {
    std::uniform_real_distribution<double> uz(fam.z.lo, fam.z.hi), uv(0.1, 5.0);
    const Expr perturbed = (1.0 + 1e-3) * fam.f;
    double exact = 0.0;
    double control = 0.0;
    for (int i = 0; i < 50; ++i) {
      const double x = uz(rng), v = uv(rng);
      exact = std::max(exact, rel(fde_residual(fam.F, fam.f, x, v), fam.F(x, v)));
      control = std::max(control, std::fabs(fde_residual(fam.F, perturbed, x, v)));
    }
    out.bound(fam.name, exact, 1e-9);
    out.require(fam.name + " perturbed > 1e-5", control > 1e-5);
  }
  return out;
}

Outcome functional_equations() {
  Outcome out;
  const std::vector<double> xs = scan_points({0.5, 2.0}, 50);
  auto worst_over = [&](const Expr& G, const Expr& w, const Expr& f, const MoebiusMap& M, double K) {
    double rg = 0.0;
    double rw = 0.0;
    for (double x : xs) {
      const FunctionalResiduals r = functional_residuals(G, w, f, M, K, x);
      rg = std::max(rg, rel(r.r_g, G(x)));
      rw = std::max(rw, rel(r.r_w, w(x)));
    }
    return std::pair{rg, rw};
  };

  // Ermakov: w(f) = M(w); with a translation M, G = w itself satisfies G(f) = G + K.
  const ErmakovParams ep{0.9, 1, 0.8, MoebiusMap(1.0, 0.5, 0.0, 1.0)};
  auto [erg, erw] = worst_over(ep_w(ep), ep_w(ep), ep_f(ep), ep.moebius, 0.5);
  out.bound("ermakov rG", erg, 1e-10);
  out.bound("ermakov rw", erw, 1e-10);

  const MoebiusMap frame(1.5, -0.5, 0.4, 2.0);
  for (EmdenVariant variant : {EmdenVariant::First, EmdenVariant::Second}) {
    const EmdenParams params{2.0, -2.0, 2, 0.7, 1.3, 1.0};
    const Expr G = ef_G(params, variant);
    const Expr f = ef_f(params, variant, 1.0, 0.1);
    const double K = ef_G_shift(params, variant, 1.0, 0.1);
    auto [rg, rw] = worst_over(G, frame_w(G, frame), f, frame_translation_map(frame, K), K);
    const std::string tag = variant == EmdenVariant::First ? "emden1" : "emden2";
    out.bound(tag + " rG", rg, 1e-10);
    out.bound(tag + " rw (frame map)", rw, 1e-10);

    const Expr periodic = periodic_extension_G(G, 0.3, K);
    auto [prg, prw] = worst_over(periodic, frame_w(periodic, frame), f, frame_translation_map(frame, K), K);
    out.bound(tag + " periodic rG", prg, 1e-10);
  }

  // The frame map coefficients equal frame^{-1} o (x + K) o frame up to scale.
  const double K = 0.37;
  const MoebiusMap conj = moebius_compose(frame.inverse(), moebius_compose(MoebiusMap::translation(K), frame));
  const MoebiusMap M = frame_translation_map(frame, K);
  const double s = conj.d() != 0.0 ? M.d() / conj.d() : M.a() / conj.a();
  const double coeff = std::max({std::fabs(M.a() - s * conj.a()), std::fabs(M.b() - s * conj.b()),
                                 std::fabs(M.c() - s * conj.c()), std::fabs(M.d() - s * conj.d())});
  out.bound("frame map coefficients", coeff, 1e-10);
  return out;
}

Outcome independent_oracle() {
  Outcome out;
  struct Case {
    std::string name;
    SolutionEvaluator sol;
    StructureF F;
    double z0;
  };
  const ErmakovParams unit{1.0, 0, 2.0, MoebiusMap::identity()};
  const ErmakovParams general{1.0, 0, 2.0, MoebiusMap(1, 1, 0, 1)};
  const ErmakovParams k1{0.8, 1, 0.7, MoebiusMap(1.0, 0.5, 0.2, 1.0)};
  const EmdenParams ef;
  const EmdenParams ef2{2.0, -2.0, 2, 3.0, 1.0, 1.0};
  const std::vector<Case> cases = {
      {"ermakov seed", ep_seed(unit), ep_structure(unit), 0.0},
      {"ermakov k=1 seed", ep_seed(k1), ep_structure(k1), 0.5},
      {"ermakov general", ep_general(general, {0.0, 1.0}), ep_structure(general), 0.0},
      {"ermakov k=1 general", ep_general(k1, {0.5, 1.5}), ep_structure(k1), 0.5},
      {"emden1 seed", ef1_seed(ef), ef_structure(ef, EmdenVariant::First), 1.0},
      {"emden1 y1", ef1_backlund(ef1_seed(ef), 1.0, 1.0, {1.0, 2.0}), ef_structure(ef, EmdenVariant::First), 1.0},
      {"emden1 ladder", ef1_ladder(ef, {{1, 1}, {1, 1}}, {1.0, 2.0}).solution, ef_structure(ef, EmdenVariant::First),
       1.0},
      {"emden2 seed", ef2_seed(ef2), ef_structure(ef2, EmdenVariant::Second), 1.0},
      {"emden2 y1", ef2_backlund(ef2_seed(ef2), ef2, 1.0, 0.1, {1.0, 2.0}), ef_structure(ef2, EmdenVariant::Second),
       1.0},
  };
  // Deviations at the noise floor are compared with this absolute slack.
  constexpr double kFloor = 1e-13;
  double worst = 0.0;
  bool monotone = true;
  std::string offenders;
  for (const Case& c : cases) {
    const double z1 = c.z0 + 1.0;
    worst = std::max(worst, crosscheck_from_initial_data(c.sol, c.F, c.z0, z1, 1e-9));
    double prev = -1.0;
    for (double tol : {1e-6, 1e-8, 1e-10}) {
      const double dev = crosscheck_from_initial_data(c.sol, c.F, c.z0, z1, tol);
      if (prev >= 0.0 && dev > 4.0 * prev + kFloor) {
        monotone = false;
        offenders += " " + c.name;
      }
      prev = dev;
    }
  }
  out.bound("max deviation at tol=1e-9 over " + std::to_string(cases.size()) + " solutions", worst, 1e-5);
  out.require("monotone in tol (factor 4)" + offenders, monotone);
  return out;
}

Outcome v_residual_identity() {
  Outcome out;
  std::mt19937 rng(1111);
  std::uniform_real_distribution<double> uy(0.2, 3.0), ud(-2.0, 2.0), uz(0.3, 2.0);
  const ErmakovParams ep{1.3, 1, 0.9, MoebiusMap::identity()};
  const EmdenParams ef{2.0, -2.0, 2, 0.5, 1.0, 1.0};
  const StructureFunction Fs[] = {ep_structure(ep).as_function(), ef_structure(ef, EmdenVariant::Second).as_function()};
  double worst = 0.0;
  double smallest_eq = 1e300;
  for (int i = 0; i < 100; ++i) {
    const double d[] = {uy(rng), ud(rng), ud(rng), ud(rng)};
    const Jet y = Jet::from_derivatives(uz(rng), d);
    const StructureFunction& F = Fs[i % 2];
    const Lemma1Residuals r = lemma1_residuals(y, F);
    const double v = d[0] * d[0];
    const double scale = std::fabs(v * (2 * d[1] * d[1] + 2 * d[0] * d[2])) + 2 * v * d[1] * d[1] +
                         std::fabs(2 * v * F(y.point(), v));
    worst = std::max(worst, std::fabs(r.r_v - 2.0 * v * r.r_eq) / (1.0 + scale));
    smallest_eq = std::min(smallest_eq, std::fabs(r.r_eq));
  }
  out.bound("max |r_v - 2y^2 r_eq| / scale over 100 jets", worst, 1e-14);
  out.require("jets are non-solutions", smallest_eq > 1e-6);
  return out;
}

}  // namespace

int main() {
  run(1, "Schwarzian axioms", schwarzian_axioms);
  run(2, "ratio-Schwarzian identity", ratio_schwarzian);
  run(3, "Ermakov bridge", ermakov_bridge);
  run(4, "Ermakov solutions", ermakov_solutions);
  run(5, "Emden example 1", emden_example1);
  run(6, "ladder algebra", ladder_algebra);
  run(7, "Emden example 2", emden_example2);
  run(8, "fde certificates", fde_certificates);
  run(9, "functional equations", functional_equations);
  run(10, "independent oracle", independent_oracle);
  run(11, "v = y^2 residual identity", v_residual_identity);
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
