#include <cmath>
#include <random>

#include <benchmark/benchmark.h>

#include "cryptonet/ewcorr.hpp"
#include "cryptonet/returns.hpp"

using namespace cryptonet;

namespace {

ReturnPanel synthetic_returns(int assets, int obs, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> noise(0.0, 0.01);
    ReturnPanel panel;
    for (int i = 0; i < assets; ++i) panel.symbols.push_back("S" + std::to_string(i));
    for (int t = 0; t < obs; ++t) {
        panel.timestamps.push_back(1'640'995'200'000 + (t + 1) * 3'600'000LL);
    }
    panel.values = Matrix(static_cast<std::size_t>(assets), static_cast<std::size_t>(obs));
    panel.mask = BoolMatrix(static_cast<std::size_t>(assets), static_cast<std::size_t>(obs),
                            true);
    for (int i = 0; i < assets; ++i) {
        for (int t = 0; t < obs; ++t) {
            panel.values(static_cast<std::size_t>(i), static_cast<std::size_t>(t)) =
                noise(rng);
        }
    }
    return panel;
}

void BM_WeightedCorr(benchmark::State& state) {
    std::mt19937 rng(9);
    std::normal_distribution<double> noise(0.0, 1.0);
    const int window = static_cast<int>(state.range(0));
    std::vector<double> x(static_cast<std::size_t>(window));
    std::vector<double> y(static_cast<std::size_t>(window));
    for (auto& v : x) v = noise(rng);
    for (auto& v : y) v = noise(rng);
    const auto w = make_weights(window, static_cast<double>(window) / 3.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(weighted_corr(x, y, w));
    }
}

void BM_RollingCorr(benchmark::State& state) {
    const auto returns = synthetic_returns(static_cast<int>(state.range(0)), 24 * 14, 11);
    for (auto _ : state) {
        benchmark::DoNotOptimize(rolling_corr(returns, 24, 1, 8.0, 1));
    }
}

}  // namespace

BENCHMARK(BM_WeightedCorr)->Arg(24)->Arg(168);
BENCHMARK(BM_RollingCorr)->Arg(10)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
