#include <benchmark/benchmark.h>

#include "qdw/sampling.hpp"
#include "qdw/simulator.hpp"

namespace {

using namespace qdw;

void BM_bloch_decompose(benchmark::State& state) {
    const auto d = static_cast<Eigen::Index>(state.range(0));
    DensityMatrix rho = random_density(d, d, d * d, 7);
    HermitianBasis basis = gell_mann_basis(d);
    for (auto _ : state)
        benchmark::DoNotOptimize(bloch_decompose(rho, basis, basis));
}
BENCHMARK(BM_bloch_decompose)->Arg(2)->Arg(3)->Arg(4);

void BM_witness_value(benchmark::State& state) {
    const auto d = static_cast<Eigen::Index>(state.range(0));
    DensityMatrix rho = random_density(d, d, d * d, 11);
    Rng rng(13);
    auto alice = random_measurement_set(Side::Alice, d, d, rng);
    auto bob = random_measurement_set(Side::Bob, d, d, rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(witness_value(rho, alice, bob));
}
BENCHMARK(BM_witness_value)->Arg(2)->Arg(3)->Arg(4);

void BM_optimal_pair(benchmark::State& state) {
    RMat s_hat = bloch_decompose(random_density(2, 2, 4, 17)).s_hat;
    for (auto _ : state) benchmark::DoNotOptimize(optimal_pair(s_hat));
}
BENCHMARK(BM_optimal_pair);

ExperimentConfig werner_config(std::int64_t rounds) {
    DensityMatrix rho = werner(0.8);
    OptimalPair best = optimal_pair(bloch_decompose(rho).s_hat);
    return ExperimentConfig{rho,          best.alice, best.bob, {1.0, 1.0},
                            {1.0, 1.0},   rounds,     42};
}

void BM_simulate(benchmark::State& state) {
    ExperimentConfig cfg = werner_config(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(run(cfg));
    state.SetItemsProcessed(state.iterations() * cfg.rounds);
}
BENCHMARK(BM_simulate)->Arg(10000)->Arg(100000)->Arg(1000000);

void BM_bootstrap(benchmark::State& state) {
    ExperimentConfig cfg = werner_config(1000000);
    TallyTable tally = run(cfg);
    for (auto _ : state)
        benchmark::DoNotOptimize(bootstrap_ci(tally, 200, 0.95, 3));
}
BENCHMARK(BM_bootstrap);

} // namespace
