// Serial reference kernels against the OpenMP ones.

#include <benchmark/benchmark.h>

#include "entconc/concentrate.hpp"
#include "entconc/oracle.hpp"

using namespace entconc;

namespace {

const DensityMatrix& state() {
    static const DensityMatrix rho = [] {
        for (std::uint64_t seed = 0;; ++seed) {
            DensityMatrix r = random_state(4, seed);
            if (concurrence(r) > 1e-3) return r;
        }
    }();
    return rho;
}

Execution mode(const benchmark::State& st) { return st.range(0) == 0 ? Execution::Serial : Execution::Parallel; }

void label(benchmark::State& st) { st.SetLabel(st.range(0) == 0 ? "serial" : "parallel"); }

void BM_SearchMaxEof(benchmark::State& st) {
    const double bound = max_extractable_entanglement(state());
    for (auto _ : st) benchmark::DoNotOptimize(search_max_eof(state(), 10000, 1, bound, mode(st)));
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(10000 + grid_size()));
    label(st);
}

void BM_CheckInvariance(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(check_invariance(state(), 10000, 1, mode(st)));
    st.SetItemsProcessed(st.iterations() * 10000);
    label(st);
}

void BM_CheckScaling(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(check_scaling(state(), 10000, 1, mode(st)));
    st.SetItemsProcessed(st.iterations() * 10000);
    label(st);
}

}  // namespace

BENCHMARK(BM_SearchMaxEof)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CheckInvariance)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CheckScaling)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
