// Serial reference vs OpenMP for the three parallel code paths.

#include "sparsepen/kernels.hpp"
#include "sparsepen/model_selection.hpp"
#include "sparsepen/simulation.hpp"

#include <benchmark/benchmark.h>

using namespace sparsepen;

namespace {

Execution mode(const benchmark::State& state) {
    return state.range(0) == 0 ? Execution::Serial : Execution::Parallel;
}

void BM_ColumnCorrelations(benchmark::State& state) {
    const Eigen::MatrixXd X = Eigen::MatrixXd::Random(200, 1000);
    const Eigen::VectorXd r = Eigen::VectorXd::Random(200);
    for (auto _ : state) benchmark::DoNotOptimize(kernels::column_correlations(X, r, mode(state)));
}

void BM_Simulation(benchmark::State& state) {
    SimulationConfig cfg;
    cfg.replications = 4;
    cfg.seed = 1;
    cfg.lambdas = default_simulation_grid(cfg, 10, 0.05);
    cfg.execution = mode(state);
    for (auto _ : state) benchmark::DoNotOptimize(run_simulation(cfg));
}

void BM_CrossValidate(benchmark::State& state) {
    SimulationConfig model;
    model.n = 120;
    model.p = 200;
    const Model1Sample s = generate_model1(model, 0);
    const auto grid = lambda_grid(s.data, 30, 0.01);
    CVConfig cfg;
    cfg.execution = mode(state);
    for (auto _ : state) benchmark::DoNotOptimize(cross_validate(s.raw, Family::SCAD, 3.7, grid, cfg));
}

} // namespace

BENCHMARK(BM_ColumnCorrelations)->ArgName("parallel")->Arg(0)->Arg(1);
BENCHMARK(BM_Simulation)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CrossValidate)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
