// bench_kernels.cpp: serial reference loops against their OpenMP versions.

#include <benchmark/benchmark.h>

#include <vector>

#include "fanomode/kernels.hpp"
#include "fanomode/spectral.hpp"

namespace {

using namespace fanomode;

PoleSpectral bench_spectrum()
{
    FanoModel m;
    m.gamma = 0.25;
    m.kappa = 1.0;
    m.g_abs = 0.5;
    m.eta = 1.0;
    return pole_residue_from_model(m);
}

template <auto Fn>
void bm_sample_J(benchmark::State& state)
{
    const PoleSpectral s = bench_spectrum();
    const long n = state.range(0);
    std::vector<double> omega(n), out(n);
    for (long i = 0; i < n; ++i)
        omega[i] = -40.0 + 80.0 * i / n;
    for (auto _ : state) {
        Fn(s, omega, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * n);
}

template <auto Fn>
void bm_fourier(benchmark::State& state)
{
    const PoleSpectral s = bench_spectrum();
    const long n = state.range(0);
    const double dx = 400.0 / (n - 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(Fn(s, 1.0, -200.0, dx, n, 1));
    state.SetItemsProcessed(state.iterations() * n);
}

template <auto Fn>
void bm_reservoir(benchmark::State& state)
{
    const long n = state.range(0);
    std::vector<double> g(n, 0.01);
    std::vector<cplx> phase(n), ck(n, cplx{1e-3, 0.0}), k(n), out(n);
    for (long i = 0; i < n; ++i)
        phase[i] = std::polar(1.0, -0.02 * i / n);
    for (auto _ : state)
        benchmark::DoNotOptimize(Fn(phase, g, cplx{1.0, 0.0}, ck, cplx{}, k, 0.5, out));
    state.SetItemsProcessed(state.iterations() * n);
}

template <auto Fn>
void bm_history(benchmark::State& state)
{
    const long n = state.range(0);
    std::vector<cplx> kernel(n + 1, cplx{0.5, -0.1}), c(n + 1, cplx{0.9, 0.1});
    for (auto _ : state)
        benchmark::DoNotOptimize(Fn(kernel, c, n, true));
    state.SetItemsProcessed(state.iterations() * n);
}

} // namespace

BENCHMARK(bm_sample_J<kernels::serial::sample_J>)->Arg(4001)->Arg(200001);
BENCHMARK(bm_sample_J<kernels::omp::sample_J>)->Arg(4001)->Arg(200001);
BENCHMARK(bm_fourier<kernels::serial::fourier_trapezoid>)->Arg(200001);
BENCHMARK(bm_fourier<kernels::omp::fourier_trapezoid>)->Arg(200001);
BENCHMARK(bm_reservoir<kernels::serial::reservoir_stage>)->Arg(4001)->Arg(64001);
BENCHMARK(bm_reservoir<kernels::omp::reservoir_stage>)->Arg(4001)->Arg(64001);
BENCHMARK(bm_history<kernels::serial::history_sum>)->Arg(20000);
BENCHMARK(bm_history<kernels::omp::history_sum>)->Arg(20000);

BENCHMARK_MAIN();
