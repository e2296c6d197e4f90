#include <benchmark/benchmark.h>

#include "vesolve/jump.hpp"
#include "vesolve/models.hpp"
#include "vesolve/reduced.hpp"
#include "vesolve/scheme.hpp"

namespace {

using namespace vesolve;

RisProblem damage_problem() {
    Damage1dSpec s;
    s.cells = 2;
    s.stiffness = {1.0, 1.2};
    s.correction = CorrectionSpec::trivial_h(HCurve::power(1.0, 2.0));
    return make_damage1d(s);
}

RisProblem doublewell_problem() {
    Toy1dSpec s;
    s.well = WellKind::doublewell;
    s.kappa = 0.5;
    s.l1 = 4.0;
    s.correction = CorrectionSpec::quadratic_mu(1.0);
    return make_toy1d(s);
}

void BM_OracleGrid2d(benchmark::State& state) {
    const RisProblem p = damage_problem();
    const Objective f = corrected_objective(p, 0.5, Vec{1.0, 1.0});
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle_grid_min(f, p.z_box, {n, n}).value);
    }
}
BENCHMARK(BM_OracleGrid2d)->Arg(101)->Arg(1001)->Unit(benchmark::kMillisecond);

void BM_CorrectedStep(benchmark::State& state) {
    const RisProblem p = damage_problem();
    for (auto _ : state) {
        benchmark::DoNotOptimize(global_min_corrected(p, 0.5, Vec{1.0, 1.0}).value);
    }
}
BENCHMARK(BM_CorrectedStep)->Unit(benchmark::kMillisecond);

void BM_SolveDoubleWell(benchmark::State& state) {
    const RisProblem p = doublewell_problem();
    SchemeConfig c;
    c.tau = 1.0 / static_cast<double>(state.range(0));
    c.initial_z = Vec{-1.0};
    c.correction = p.correction;
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve_incremental(p, c).nodes.size());
    }
}
BENCHMARK(BM_SolveDoubleWell)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_JumpCostDp(benchmark::State& state) {
    const RisProblem p = doublewell_problem();
    JumpSearchConfig cfg;
    cfg.dp_resolution_1d = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(jump_cost(p, 0.342, Vec{-0.9}, Vec{1.09}, cfg).bound.upper);
    }
}
BENCHMARK(BM_JumpCostDp)->Arg(501)->Arg(2001)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
