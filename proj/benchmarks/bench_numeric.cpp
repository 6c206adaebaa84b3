#include <ccp/combinatorics.hpp>
#include <ccp/irm_simulator.hpp>
#include <ccp/property_suite.hpp>
#include <ccp/ws_lru.hpp>

#include <benchmark/benchmark.h>

namespace {

using ccp::Popularity;
using ccp::Scalar;

void BM_ElCdfContinuous(benchmark::State& state) {
    const auto N = static_cast<unsigned>(state.range(0));
    const double k = N * ccp::harmonic(N).to_double();
    for (auto _ : state) {
        benchmark::DoNotOptimize(ccp::el_cdf_continuous(N, k));
    }
}
BENCHMARK(BM_ElCdfContinuous)->Arg(100)->Arg(1000)->Unit(benchmark::kMicrosecond);

void BM_WorkingSetInverse(benchmark::State& state) {
    const ccp::WsCurve c{Popularity::power_law(200, Scalar(1)).to_float(), ccp::WsBase::exp_base};
    for (auto _ : state) {
        benchmark::DoNotOptimize(ccp::working_set_inverse(c, 100.0));
    }
}
BENCHMARK(BM_WorkingSetInverse);

void BM_WsPowerlawClosed(benchmark::State& state) {
    const auto m = ccp::PowerLawModel::make(1000, 0.8);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ccp::ws_powerlaw_closed(m, 500.0));
    }
}
BENCHMARK(BM_WsPowerlawClosed);

void BM_SimWaitingTime(benchmark::State& state) {
    const Popularity pop = Popularity::power_law(50, Scalar(1)).to_float();
    ccp::SimConfig cfg;
    cfg.replications = 1000;
    cfg.threads = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ccp::sim_waiting_time(pop, 50, cfg));
    }
}
BENCHMARK(BM_SimWaitingTime)->Unit(benchmark::kMillisecond);

void BM_SimLru(benchmark::State& state) {
    const Popularity pop = Popularity::power_law(100, Scalar(1)).to_float();
    ccp::SimConfig cfg;
    cfg.replications = 1;
    cfg.stream_length = 200000;
    cfg.threads = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ccp::sim_lru_miss_rate(pop, 30, cfg));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * 200000);
}
BENCHMARK(BM_SimLru)->Unit(benchmark::kMillisecond);

void BM_Appendix14Coarse(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(ccp::appendix14_search(4, 0.05));
    }
}
BENCHMARK(BM_Appendix14Coarse)->Unit(benchmark::kMillisecond);

} // namespace
