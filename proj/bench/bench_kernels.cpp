// Serial reference kernels against their OpenMP versions, plus one full Strang step.
// SHNLS_THREADS caps the thread count.

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "shnls/kernels.hpp"
#include "shnls/spectral.hpp"
#include "shnls/stepper.hpp"
#include "shnls/threads.hpp"

using namespace shnls;

namespace {

struct Data {
    std::vector<Complex> v;
    std::vector<double> w;
    std::vector<double> out;
    explicit Data(std::size_t n) : v(n), w(n), out(n) {
        std::mt19937_64 rng(1);
        std::normal_distribution<double> g;
        for (std::size_t i = 0; i < n; ++i) {
            v[i] = {g(rng), g(rng)};
            w[i] = std::abs(g(rng));
        }
    }
};

template <bool Parallel>
void BM_potential_phase(benchmark::State& state) {
    Data d(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        if constexpr (Parallel) kernels::parallel::potential_phase(d.v, d.w, 1e-3);
        else kernels::serial::potential_phase(d.v, d.w, 1e-3);
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_pow_abs(benchmark::State& state) {
    Data d(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        if constexpr (Parallel) kernels::parallel::pow_abs(d.v, 3.0, d.out);
        else kernels::serial::pow_abs(d.v, 3.0, d.out);
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_weighted_sum(benchmark::State& state) {
    Data d(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        double s = Parallel ? kernels::parallel::weighted_sum_abs_sq(d.v, d.w) : kernels::serial::weighted_sum_abs_sq(d.v, d.w);
        benchmark::DoNotOptimize(s);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_strang_step(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Grid g = Grid::cube(2, n, 24.0);
    ComplexField v(g);
    const auto r2 = g.radius_sq_table();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = 2.0 * std::exp(-r2[i] / 2.0);
    const EquationSpec spec{state.range(1) == 0 ? EquationKind::NLS : EquationKind::SH, 1.0, 0.1};
    for (auto _ : state) strang_step_inplace(spec, v, 1e-4);
    state.SetItemsProcessed(state.iterations() * static_cast<long>(g.size()));
}

}  // namespace

BENCHMARK(BM_potential_phase<false>)->Name("potential_phase/serial")->Range(1 << 12, 1 << 20);
BENCHMARK(BM_potential_phase<true>)->Name("potential_phase/parallel")->Range(1 << 12, 1 << 20);
BENCHMARK(BM_pow_abs<false>)->Name("pow_abs/serial")->Range(1 << 12, 1 << 20);
BENCHMARK(BM_pow_abs<true>)->Name("pow_abs/parallel")->Range(1 << 12, 1 << 20);
BENCHMARK(BM_weighted_sum<false>)->Name("weighted_sum_abs_sq/serial")->Range(1 << 12, 1 << 20);
BENCHMARK(BM_weighted_sum<true>)->Name("weighted_sum_abs_sq/parallel")->Range(1 << 12, 1 << 20);
BENCHMARK(BM_strang_step)->Name("strang_step_2d")->ArgsProduct({{128, 256, 512}, {0, 1}})->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
    configure_threads_from_env();
    benchmark::Initialize(&argc, argv);
    if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
    return 0;
}
