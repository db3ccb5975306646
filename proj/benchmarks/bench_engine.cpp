#include <vector>

#include <benchmark/benchmark.h>

#include <dqw/dqw.hpp>

namespace {

using namespace dqw;

std::vector<Coin> draw_coins(std::size_t n) {
    const CoinEnsemble e = make_ribeiro_uniform();
    std::vector<Coin> coins;
    for (std::size_t i = 0; i < n; ++i) coins.push_back(e.draw(1, i));
    return coins;
}

void BM_Evolve(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const std::vector<Coin> coins = draw_coins(n);
    const QubitState phi(1.0 / std::sqrt(2.0), Complex{0.0, 1.0 / std::sqrt(2.0)});
    for (auto _ : state) benchmark::DoNotOptimize(evolve_state(phi, coins));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Evolve)->RangeMultiplier(4)->Range(16, 4096)->Complexity(benchmark::oNSquared);

void BM_Coefficients(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const std::vector<Coin> coins = draw_coins(n);
    for (auto _ : state) benchmark::DoNotOptimize(coefficients(coins, n));
}
BENCHMARK(BM_Coefficients)->RangeMultiplier(4)->Range(16, 1024);

void BM_ExactAverage(benchmark::State& state) {
    const CoinEnsemble e = make_ribeiro_two_point(0.5);
    const auto init = InitialStateRule::case_I_default();
    for (auto _ : state) benchmark::DoNotOptimize(exact_average(e, init, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_ExactAverage)->DenseRange(8, 16, 4);

void BM_MonteCarlo(benchmark::State& state) {
    const CoinEnsemble e = make_mackay_uniform();
    const auto init = InitialStateRule::case_II_uniform_phase();
    const auto workers = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(monte_carlo_average(e, init, 10, 10000, 3, workers));
    state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_MonteCarlo)->Arg(1)->Arg(4)->UseRealTime()->Unit(benchmark::kMillisecond);

void BM_AuditShapira(benchmark::State& state) {
    const CoinEnsemble e = make_shapira(0.866);
    for (auto _ : state) benchmark::DoNotOptimize(audit_moments(e, 100000, 1));
    state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_AuditShapira)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
