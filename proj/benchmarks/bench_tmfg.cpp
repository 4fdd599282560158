#include <random>

#include <benchmark/benchmark.h>

#include "cryptonet/graph_verify.hpp"
#include "cryptonet/tmfg.hpp"

using namespace cryptonet;

namespace {

SimilarityMatrix random_similarity(int n, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    SimilarityMatrix sim;
    for (int i = 0; i < n; ++i) sim.symbols.push_back("S" + std::to_string(i));
    sim.values = Matrix(static_cast<std::size_t>(n), static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double v = dist(rng);
            sim.values(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = v;
            sim.values(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) = v;
        }
    }
    return sim;
}

void BM_BuildTmfg(benchmark::State& state) {
    const auto sim = random_similarity(static_cast<int>(state.range(0)), 42);
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_tmfg(sim));
    }
}

void BM_VerifyTmfg(benchmark::State& state) {
    const auto g = build_tmfg(random_similarity(static_cast<int>(state.range(0)), 42));
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify(g));
    }
}

}  // namespace

BENCHMARK(BM_BuildTmfg)->Arg(25)->Arg(50)->Arg(100)->Arg(200)->Arg(400)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyTmfg)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
