#include <benchmark/benchmark.h>

#include "spinpath/oracle.hpp"
#include "spinpath/trotter.hpp"
#include "spinpath/wiener.hpp"

namespace {

using namespace spinpath;

void BM_OraclePropagate(benchmark::State& state) {
    const auto field = FieldProtocol::rotating(1.0, 2.0, 0.5, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(propagate(field, static_cast<int>(state.range(0))));
    }
}
BENCHMARK(BM_OraclePropagate)->Arg(1024)->Arg(4096);

void BM_TrotterContraction(benchmark::State& state) {
    const auto field = FieldProtocol::rotating(1.0, 2.0, 0.5, 1.0);
    const SphereGrid grid = build_grid(12, 12);
    const CoherentLabel eq{0.5 * kPi, 0.0, 0.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            trotter_propagator(field, static_cast<int>(state.range(0)), grid, eq, eq));
    }
}
BENCHMARK(BM_TrotterContraction)->Arg(16)->Arg(64);

void BM_BridgeDraw(benchmark::State& state) {
    const CoherentLabel eq{0.5 * kPi, 0.0, 0.0};
    const CoherentLabel up{0.3, 1.0, 0.0};
    const BridgeSampler sampler(eq, up, 63, 100.0, 1.0 / 64.0);
    std::uint64_t seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sampler.draw(seed++));
    }
}
BENCHMARK(BM_BridgeDraw);

}  // namespace

BENCHMARK_MAIN();
