// Pairwise column-intersection profiling: dense row-pair counting vs the
// circulant-aware difference multiset, and thread scaling.

#include <benchmark/benchmark.h>

#include "mdpc/construct.hpp"
#include "mdpc/intersect.hpp"

namespace {

void BM_max_intersection(benchmark::State& state) {
    const auto m =
        mdpc::sample_gallager(mdpc::gallager_params(1024, 32, 16, 42)).matrix;
    const auto threads = static_cast<unsigned>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(mdpc::max_column_intersection(m, threads));
}
BENCHMARK(BM_max_intersection)->Arg(1)->Arg(4)->Arg(0);  // 0 = hardware parallelism

void BM_qc_intersection(benchmark::State& state) {
    mdpc::QcParams params;
    params.block_size = static_cast<std::uint32_t>(state.range(0));
    params.half_weight = 32;
    params.seed = 42;
    const auto key = mdpc::sample_qc(params);
    for (auto _ : state) benchmark::DoNotOptimize(mdpc::qc_max_intersection(key));
}
BENCHMARK(BM_qc_intersection)->Arg(509)->Arg(4099);

void BM_qc_expand_then_count(benchmark::State& state) {
    mdpc::QcParams params;
    params.block_size = static_cast<std::uint32_t>(state.range(0));
    params.half_weight = 32;
    params.seed = 42;
    const auto key = mdpc::sample_qc(params);
    for (auto _ : state) {
        const auto m = mdpc::expand_qc(key);
        benchmark::DoNotOptimize(mdpc::max_column_intersection(m, 1));
    }
}
BENCHMARK(BM_qc_expand_then_count)->Arg(509);

}  // namespace

BENCHMARK_MAIN();
