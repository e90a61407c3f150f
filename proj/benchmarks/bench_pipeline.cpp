#include <benchmark/benchmark.h>

#include "spineccg/ccg_build.hpp"
#include "spineccg/pipeline.hpp"
#include "spineccg/reassembly.hpp"

using namespace spineccg;

namespace {

const SpineGrammar& running_example() {
    static const SpineGrammar g = load_spine_grammar(SPINECCG_DATA_DIR "/ex41.sg");
    return g;
}

const BuiltCcg& built() {
    static const BuiltCcg b = build_ccg(running_example());
    return b;
}

void BM_EnumerateTrees(benchmark::State& st) {
    auto k = static_cast<std::size_t>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(enumerate_trees(running_example(), k));
}
BENCHMARK(BM_EnumerateTrees)->DenseRange(5, 9, 2);

void BM_NextMachine(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(mpda_for_next(running_example()));
}
BENCHMARK(BM_NextMachine);

void BM_BuildCcg(benchmark::State& st) {
    BuilderOptions opt{st.range(0) != 0};
    for (auto _ : st) benchmark::DoNotOptimize(build_ccg(running_example(), opt));
}
BENCHMARK(BM_BuildCcg)->Arg(1)->Arg(0);

void BM_Reassembly(benchmark::State& st) {
    auto k = static_cast<std::size_t>(st.range(0));
    const BuiltCcg& b = built();
    for (auto _ : st) benchmark::DoNotOptimize(reassembled_language(b.normalized, b.machine, k));
}
BENCHMARK(BM_Reassembly)->DenseRange(5, 9, 2);

void BM_DerivationChart(benchmark::State& st) {
    auto k = static_cast<std::size_t>(st.range(0));
    for (auto _ : st) {
        DerivationChart chart(built().ccg, k);
        benchmark::DoNotOptimize(chart.roots(k));
    }
}
BENCHMARK(BM_DerivationChart)->DenseRange(5, 9, 2);

void BM_CcgTreeLanguage(benchmark::State& st) {
    auto k = static_cast<std::size_t>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(ccg_tree_language(built().ccg, k));
}
BENCHMARK(BM_CcgTreeLanguage)->DenseRange(5, 9, 2);

void BM_Check(benchmark::State& st) {
    CheckOptions opt;
    opt.bound = static_cast<std::size_t>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(check_equivalence(running_example(), opt));
}
BENCHMARK(BM_Check)->Arg(7)->Arg(9)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
