// Analytic chain costs: exact rational bias, float bias at scale, exact
// binomial tails and the full scenario evaluation.

#include <benchmark/benchmark.h>

#include "mdpc/bounds.hpp"
#include "mdpc/krawtchouk.hpp"

namespace {

void BM_bias_exact(benchmark::State& state) {
    const auto n = static_cast<std::uint32_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(mdpc::bias_via_krawtchouk(n, 20, n / 3));
}
BENCHMARK(BM_bias_exact)->Arg(300)->Arg(3000);

void BM_bias_float(benchmark::State& state) {
    const auto m = static_cast<std::uint32_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(mdpc::bias_float(m * m, m, m));
}
BENCHMARK(BM_bias_float)->Arg(128)->Arg(256);

void BM_binom_tail_exact(benchmark::State& state) {
    const auto v = static_cast<std::uint32_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            mdpc::binom_tail_exact(v, 0.2, v / 2, mdpc::TailSide::upper));
}
BENCHMARK(BM_binom_tail_exact)->Arg(200)->Arg(20000);

void BM_scenario_chain(benchmark::State& state) {
    mdpc::ScenarioParams params;
    params.n = 35078;
    params.w = 110;
    params.t = 84;
    params.s = 9;
    params.target_log2 = -80.0;
    for (auto _ : state)
        benchmark::DoNotOptimize(mdpc::scenario_dfr(params, mdpc::Scenario::II));
}
BENCHMARK(BM_scenario_chain);

}  // namespace

BENCHMARK_MAIN();
