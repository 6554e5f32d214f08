#include <benchmark/benchmark.h>

#include "horoke/catalog.hpp"
#include "horoke/masolver.hpp"

using namespace horoke;

static void bench_vertex_enumeration(benchmark::State& state) {
  std::vector<Halfspace> hrep;
  for (int i = 0; i < 3; ++i) {
    QVec e(3, Rat(0));
    e[i] = 1;
    hrep.push_back({e, Rat(4)});
    e[i] = -1;
    hrep.push_back({e, Rat(4)});
  }
  hrep.push_back({{Rat(1), Rat(1), Rat(1)}, Rat(6)});
  hrep.push_back({{Rat(1), Rat(-2), Rat(3)}, Rat(5)});
  for (auto _ : state) {
    auto vs = vertices_from_hrep(hrep, 3);
    benchmark::DoNotOptimize(vs);
  }
}
BENCHMARK(bench_vertex_enumeration);

static void bench_dh_barycenter(benchmark::State& state) {
  const auto& f = catalog::get("RC5");
  CriteriaContext ctx = CriteriaContext::make(f.datum);
  for (auto _ : state) {
    auto b = dh_barycenter(f.anticanonical, ctx.dh.expanded, WeightSpec::constant(),
                           default_exp_tol());
    benchmark::DoNotOptimize(b);
  }
}
BENCHMARK(bench_dh_barycenter);

static void bench_solve_ma(benchmark::State& state) {
  const auto& f = catalog::get("F3_2.36");
  CriteriaContext ctx = CriteriaContext::make(f.datum);
  Decomposition dec;
  dec.classes.push_back({f.anticanonical, QVec(3, Rat(0)), WeightSpec::constant()});
  MAProblem p = build_problem(ctx, dec);
  MAConfig cfg;
  cfg.n = (int)state.range(0);
  for (auto _ : state) {
    auto r = solve_at_t(p, 0.5, cfg);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(bench_solve_ma)->Arg(500)->Arg(1500);

BENCHMARK_MAIN();
