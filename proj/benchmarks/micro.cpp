#include <benchmark/benchmark.h>

#include "boxprune/bench.hpp"

using namespace boxprune;

namespace {

const Grid kGrid = Grid::binary64();

void BM_ExtendMul(benchmark::State& state) {
  Interval args[2] = {Interval::make(-1.5, 2.25), Interval::make(0.5, 3.75)};
  for (auto _ : state) {
    Interval r = extend({OpKind::Mul}, args, kGrid);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_ExtendMul);

void BM_ExtendPow(benchmark::State& state) {
  Interval arg = Interval::make(-1.5, 2.25);
  for (auto _ : state) {
    Interval r = extend({OpKind::Pow, 3}, std::span<const Interval>(&arg, 1), kGrid);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_ExtendPow);

void BM_ExtendSin(benchmark::State& state) {
  Interval arg = Interval::make(-1.5, 20.25);
  for (auto _ : state) {
    Interval r = extend({OpKind::Sin}, std::span<const Interval>(&arg, 1), kGrid);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_ExtendSin);

void BM_Propagate(benchmark::State& state) {
  EquationSystem es = broydenBanded(static_cast<int>(state.range(0)));
  ConstraintSystem cs = decompose(es, kGrid);
  for (auto _ : state) {
    Box b = propagate(cs, cs.initialBox, Schedule::fair(), kGrid);
    benchmark::DoNotOptimize(b);
  }
}
BENCHMARK(BM_Propagate)->Arg(4)->Arg(8)->Arg(16);

void BM_FunctionalBC(benchmark::State& state) {
  EquationSystem es = broydenBanded(static_cast<int>(state.range(0)));
  Box primary = es.initialBox(kGrid);
  ConsistencyConfig cfg;
  for (auto _ : state) {
    Box b = functionalBC(es, primary, kGrid, cfg);
    benchmark::DoNotOptimize(b);
  }
}
BENCHMARK(BM_FunctionalBC)->Arg(2)->Arg(4);

void BM_SolveQuadratic(benchmark::State& state) {
  EquationSystem es = parse("var x in [0, 10];\nx * x - 4 = 0;\n");
  SolverConfig cfg;
  cfg.strategy = Strategy::FunctionalBC;
  cfg.delta = 1e-8;
  for (auto _ : state) {
    SolverResult r = solve(es, kGrid, cfg);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_SolveQuadratic);

}  // namespace

BENCHMARK_MAIN();
