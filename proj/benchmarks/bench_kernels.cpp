#include <benchmark/benchmark.h>

#include <cmath>

#include "backlund/chart.hpp"
#include "backlund/emden.hpp"
#include "backlund/ermakov.hpp"
#include "backlund/integrate.hpp"
#include "backlund/verify.hpp"

using namespace backlund;

namespace {

const Expr z = Expr::variable();

void BM_JetEval(benchmark::State& state) {
  const Expr e = parse_expr("exp(sin(z)) / (1 + z^2) + root(z - 3, 3) + ln(2 + cos(z))");
  const int order = static_cast<int>(state.range(0));
  double x = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(e.jet(x, order));
    x += 1e-9;
  }
}
BENCHMARK(BM_JetEval)->Arg(3)->Arg(4)->Arg(8);

void BM_Compose(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  const Jet inner = (exp(0.5 * z) + z).jet(0.7, order);
  const Jet outer = log(1.0 + z * z).jet(inner.value(), order);
  for (auto _ : state) benchmark::DoNotOptimize(compose(outer, inner));
}
BENCHMARK(BM_Compose)->Arg(4)->Arg(8);

void BM_Schwarzian(benchmark::State& state) {
  const ErmakovParams params{1.0, 1, 2.0, MoebiusMap::identity()};
  const Expr w = ep_w(params);
  double x = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(schwarzian(w.jet(x, 3)));
    x += 1e-9;
  }
}
BENCHMARK(BM_Schwarzian);

void BM_BacklundJet(benchmark::State& state) {
  const ErmakovParams params{0.8, 1, 1.2, MoebiusMap(1.0, 2.0, -0.05, 1.0)};
  const Interval dom = ep_f_domain(params, {0.2, 1.5});
  const SolutionEvaluator y = backlund_B2(ep_seed(params), ep_f(params), dom);
  double x = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(y.jet(x, 4));
    x += 1e-9;
  }
}
BENCHMARK(BM_BacklundJet);

void BM_GridScan(benchmark::State& state) {
  const EmdenParams params;
  const LadderResult ladder = ef1_ladder(params, {{1, 1}, {2, 0.5}, {1, 0.3}}, {0.5, 5.0});
  const ResidualForm form = emden_form(params, EmdenVariant::First);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(grid_scan(ladder.solution, form, ladder.solution.domain(), n, 1e-8));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_GridScan)->Arg(200)->Arg(5000)->Arg(50000)->UseRealTime();

void BM_RkIntegrate(benchmark::State& state) {
  const EmdenParams params;
  const StructureF F = ef_structure(params, EmdenVariant::First);
  const double tol = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rk_integrate(F, 0.5, 0.75, 1.0, 2.0, tol));
}
BENCHMARK(BM_RkIntegrate)->Arg(6)->Arg(9)->Arg(12);

}  // namespace

BENCHMARK_MAIN();
