#include <benchmark/benchmark.h>

#include "flagsph/branching.hpp"
#include "flagsph/embeddings.hpp"
#include "flagsph/orbits.hpp"
#include "flagsph/partitions.hpp"
#include "flagsph/registry.hpp"
#include "flagsph/sphericity.hpp"

using namespace flagsph;

static void BM_CollapseAll(benchmark::State& state) {
    int d = static_cast<int>(state.range(0));
    auto parts = enumerate_partitions(d);
    for (auto _ : state)
        for (const auto& a : parts) {
            benchmark::DoNotOptimize(collapse(a, ParityClass(1)));
            if (d % 2 == 0) benchmark::DoNotOptimize(collapse(a, ParityClass(-1)));
        }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(parts.size()));
}
BENCHMARK(BM_CollapseAll)->Arg(8)->Arg(12)->Arg(16);

static void BM_FlagPoset(benchmark::State& state) {
    GroupKind g(Kind::Orthogonal, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(flag_poset(g));
}
BENCHMARK(BM_FlagPoset)->Arg(8)->Arg(12)->Arg(14);

static void BM_SphericalFlag(benchmark::State& state) {
    EmbeddedSubgroup e = build_subalgebra("so(12): spin(7)+*sl(2) : F8@1+omega([F2@2]_chi)");
    for (auto _ : state) benchmark::DoNotOptimize(is_spherical_flag(e, {6}));
}
BENCHMARK(BM_SphericalFlag)->Unit(benchmark::kMillisecond);

static void BM_Restriction(benchmark::State& state) {
    EmbeddedSubgroup e = g2_in_so7();
    Weight lambda = parse_weight(e.g_reductive(), "pi1+pi2+pi3");
    for (auto _ : state) benchmark::DoNotOptimize(restrict_irrep(e, lambda));
}
BENCHMARK(BM_Restriction)->Unit(benchmark::kMillisecond);

static void BM_VerifyAll(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(verify_all(builtin_registry()));
}
BENCHMARK(BM_VerifyAll)->Unit(benchmark::kMillisecond)->Iterations(1);

BENCHMARK_MAIN();
