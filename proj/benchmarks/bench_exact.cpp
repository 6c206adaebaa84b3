#include <ccp/ccp_core.hpp>
#include <ccp/subset_sums.hpp>

#include <benchmark/benchmark.h>

namespace {

using ccp::Popularity;
using ccp::Scalar;

void BM_SubsetPowerSumExact(benchmark::State& state) {
    const auto N = static_cast<std::size_t>(state.range(0));
    const Popularity pop = Popularity::power_law(N, Scalar(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(ccp::subset_power_sum(pop, N / 2, 3));
    }
}
BENCHMARK(BM_SubsetPowerSumExact)->Arg(8)->Arg(12)->Arg(16);

void BM_SubsetPowerSumFloat(benchmark::State& state) {
    const auto N = static_cast<std::size_t>(state.range(0));
    const Popularity pop = Popularity::power_law(N, Scalar(1)).to_float();
    for (auto _ : state) {
        benchmark::DoNotOptimize(ccp::subset_power_sum(pop, N / 2, 3));
    }
}
BENCHMARK(BM_SubsetPowerSumFloat)->Arg(8)->Arg(12)->Arg(16)->Arg(20);

void BM_TDistributionExact(benchmark::State& state) {
    const auto N = static_cast<std::size_t>(state.range(0));
    const Popularity pop = Popularity::power_law(N, Scalar(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(ccp::t_distribution(pop, N, static_cast<unsigned>(4 * N)));
    }
}
BENCHMARK(BM_TDistributionExact)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_TDistributionFloat(benchmark::State& state) {
    const auto N = static_cast<std::size_t>(state.range(0));
    const Popularity pop = Popularity::power_law(N, Scalar(1)).to_float();
    for (auto _ : state) {
        benchmark::DoNotOptimize(ccp::t_distribution(pop, N, static_cast<unsigned>(4 * N)));
    }
}
BENCHMARK(BM_TDistributionFloat)->Arg(6)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);

void BM_ExpectationExact(benchmark::State& state) {
    const auto N = static_cast<std::size_t>(state.range(0));
    const Popularity pop = Popularity::power_law(N, Scalar(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(ccp::t_expectation(pop, N));
    }
}
BENCHMARK(BM_ExpectationExact)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

} // namespace
