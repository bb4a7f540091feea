// Decoder hot paths: syndrome, one flipping iteration, full decode.

#include <benchmark/benchmark.h>

#include "mdpc/construct.hpp"
#include "mdpc/decode.hpp"
#include "mdpc/rng.hpp"

namespace {

mdpc::SparseBinaryMatrix matrix_for(std::uint32_t n, std::uint32_t w, std::uint32_t v) {
    return mdpc::sample_gallager(mdpc::gallager_params(n, w, v, 42)).matrix;
}

mdpc::BinaryWord error_word(std::uint32_t n, std::uint32_t t) {
    mdpc::Rng rng(7);
    return mdpc::BinaryWord(n, rng.subset(n, t));
}

void BM_syndrome(benchmark::State& state) {
    const auto n = static_cast<std::uint32_t>(state.range(0));
    const auto m = matrix_for(n, 50, 25);
    const auto e = error_word(n, 10);
    for (auto _ : state) benchmark::DoNotOptimize(mdpc::syndrome(m, e));
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_syndrome)->Arg(2500)->Arg(10000);

void BM_bf_iteration(benchmark::State& state) {
    const auto n = static_cast<std::uint32_t>(state.range(0));
    const auto m = matrix_for(n, 50, 25);
    const auto e = error_word(n, 10);
    for (auto _ : state) benchmark::DoNotOptimize(mdpc::bf_iteration(m, e));
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_bf_iteration)->Arg(2500)->Arg(10000);

void BM_decode(benchmark::State& state) {
    const auto n = static_cast<std::uint32_t>(state.range(0));
    const auto m = matrix_for(n, 50, 25);
    const auto e = error_word(n, 10);
    for (auto _ : state) benchmark::DoNotOptimize(mdpc::decode(m, e, 10));
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_decode)->Arg(2500)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
