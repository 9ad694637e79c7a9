#include <sextic/pipeline.hpp>

#include <benchmark/benchmark.h>

using namespace sextic;

namespace {

const FactsDB& facts() {
    static const FactsDB db = FactsDB::bundled();
    return db;
}

void BM_SearchK(benchmark::State& state) {
    const auto H = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(search_k(Integer(2089), H));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SearchK)->RangeMultiplier(2)->Range(50, 800)->Complexity();

void BM_Torsion(benchmark::State& state) {
    long c = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(torsion_points(MordellCurve(Integer(c))));
        c = c % 5000 + 7;
    }
}
BENCHMARK(BM_Torsion);

void BM_Sieve221(benchmark::State& state) {
    const Integer D(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(sieve_221(D, facts()));
}
BENCHMARK(BM_Sieve221)->Arg(560)->Arg(688)->Arg(336);

void BM_Solve(benchmark::State& state) {
    SolveConfig cfg;
    cfg.facts = &facts();
    cfg.height = 100;
    const Integer k(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(solve(k, cfg));
}
BENCHMARK(BM_Solve)->Arg(-48)->Arg(-35)->Arg(-25)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
