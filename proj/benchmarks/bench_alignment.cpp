#include <benchmark/benchmark.h>

#include "orbilearn/alignment.hpp"
#include "orbilearn/rng.hpp"
#include "orbilearn/subgradients.hpp"

using namespace orbilearn;

namespace {

AttributedGraph random_graph(std::size_t order, std::size_t attr_dim, RandomEngine& rng) {
    std::vector<double> cells(order * order * attr_dim, 0.0);
    auto base = [&](std::size_t i, std::size_t j) { return (i * order + j) * attr_dim; };
    for (std::size_t i = 0; i < order; ++i)
        for (std::size_t c = 0; c < attr_dim; ++c)
            cells[base(i, i) + c] = normal_sample(rng, 0.0, 1.0);
    for (std::size_t i = 0; i < order; ++i)
        for (std::size_t j = i + 1; j < order; ++j) {
            if (uniform_unit(rng) >= 0.5) continue;
            for (std::size_t c = 0; c < attr_dim; ++c) {
                const double v = normal_sample(rng, 0.0, 1.0);
                cells[base(i, j) + c] = v;
                cells[base(j, i) + c] = v;
            }
        }
    return AttributedGraph(order, attr_dim, std::move(cells), true);
}

void BM_kernel_exact(benchmark::State& state) {
    RandomEngine rng(1);
    const auto x = random_graph(state.range(0), 2, rng);
    const auto y = random_graph(state.range(0), 2, rng);
    const SolverConfig cfg{SolverMode::exact, 12, 8, 0};
    for (auto _ : state) benchmark::DoNotOptimize(kernel(x, y, cfg).kernel_value);
}

void BM_kernel_heuristic(benchmark::State& state) {
    RandomEngine rng(2);
    const auto x = random_graph(state.range(0), 2, rng);
    const auto y = random_graph(state.range(0), 2, rng);
    const SolverConfig cfg{SolverMode::heuristic, 10, 8, 7};
    for (auto _ : state) benchmark::DoNotOptimize(kernel(x, y, cfg).kernel_value);
}

void BM_ged_exact(benchmark::State& state) {
    RandomEngine rng(3);
    const auto x = random_graph(state.range(0), 2, rng);
    const auto y = random_graph(state.range(0), 2, rng);
    const SolverConfig cfg{SolverMode::exact, 12, 8, 0};
    for (auto _ : state) benchmark::DoNotOptimize(ged(x, y, cfg));
}

void BM_subgrad_sq_half_dist(benchmark::State& state) {
    RandomEngine rng(4);
    const auto x = random_graph(state.range(0), 2, rng);
    const auto w = random_graph(state.range(0), 2, rng);
    const SolverConfig cfg{SolverMode::heuristic, 10, 8, 5};
    for (auto _ : state) benchmark::DoNotOptimize(subgrad_sq_half_dist(x, w, cfg).loss_value);
}

}  // namespace

BENCHMARK(BM_kernel_exact)->DenseRange(4, 8, 2)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_kernel_heuristic)->RangeMultiplier(2)->Range(8, 32)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ged_exact)->DenseRange(4, 8, 2)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_subgrad_sq_half_dist)->RangeMultiplier(2)->Range(8, 16)
    ->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
