#include "fanomode/kernels.hpp"

#include <vector>

#include <omp.h>

namespace fanomode::kernels::omp {

namespace {

// Static block [begin, end) of [0, n) owned by thread `tid` of `nt`.
inline std::pair<long, long> block(long n, int tid, int nt)
{
    const long base = n / nt, extra = n % nt;
    const long begin = tid * base + std::min<long>(tid, extra);
    return {begin, begin + base + (tid < extra ? 1 : 0)};
}

// Runs body(begin, end) -> cplx on per-thread blocks; sums partials in thread order.
template <class Body>
cplx ordered_reduce(long n, Body body)
{
    std::vector<cplx> partial(static_cast<std::size_t>(omp_get_max_threads()), cplx{0.0, 0.0});
    int used = 1;
#pragma omp parallel
    {
        const int nt = omp_get_num_threads();
        const int tid = omp_get_thread_num();
#pragma omp single
        used = nt;
        const auto [b, e] = block(n, tid, nt);
        partial[static_cast<std::size_t>(tid)] = body(b, e);
    }
    cplx total{0.0, 0.0};
    for (int t = 0; t < used; ++t)
        total += partial[static_cast<std::size_t>(t)];
    return total;
}

} // namespace

void sample_J(const PoleSpectral& spec, std::span<const double> omega, std::span<double> out)
{
    const long n = static_cast<long>(omega.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = evaluate_J(spec, omega[static_cast<std::size_t>(i)]);
}

cplx fourier_trapezoid(const PoleSpectral& spec, double tau, double a, double dx,
                       long n_points, long stride)
{
    const long last = (n_points - 1) / stride;
    const cplx sum = ordered_reduce(last + 1, [&](long b, long e) {
        double re = 0.0, im = 0.0;
        for (long k = b; k < e; ++k) {
            const double x = a + static_cast<double>(k * stride) * dx;
            const double w = (k == 0 || k == last) ? 0.5 : 1.0;
            const double f = w * evaluate_f(spec, x);
            re += f * std::cos(x * tau);
            im -= f * std::sin(x * tau);
        }
        return cplx{re, im};
    });
    return sum * (dx * static_cast<double>(stride));
}

cplx reservoir_stage(std::span<const cplx> phase, std::span<const double> g, cplx c1,
                     std::span<const cplx> ck, cplx k_c1, std::span<const cplx> k_ck, double a,
                     std::span<cplx> dck)
{
    const cplx x1 = c1 + a * k_c1;
    const cplx sum = ordered_reduce(static_cast<long>(ck.size()), [&](long b, long e) {
        double re = 0.0, im = 0.0;
        for (long i = b; i < e; ++i) {
            const auto k = static_cast<std::size_t>(i);
            const cplx xk = phase[k] * (ck[k] + a * k_ck[k]);
            dck[k] = -I * g[k] * x1 * std::conj(phase[k]);
            re += g[k] * xk.real();
            im += g[k] * xk.imag();
        }
        return cplx{re, im};
    });
    return -I * sum;
}

void apply_phase(std::span<cplx> y, std::span<const cplx> phase)
{
    const long n = static_cast<long>(y.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i)
        y[static_cast<std::size_t>(i)] *= phase[static_cast<std::size_t>(i)];
}

void rk4_combine(std::span<cplx> y, std::span<const cplx> k1, std::span<const cplx> k2,
                 std::span<const cplx> k3, std::span<const cplx> k4, double h)
{
    const double w = h / 6.0;
    const long n = static_cast<long>(y.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        y[k] += w * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
    }
}

double norm_sq(std::span<const cplx> y)
{
    return ordered_reduce(static_cast<long>(y.size()), [&](long b, long e) {
               double s = 0.0;
               for (long i = b; i < e; ++i)
                   s += std::norm(y[static_cast<std::size_t>(i)]);
               return cplx{s, 0.0};
           }).real();
}

cplx history_sum(std::span<const cplx> kernel, std::span<const cplx> c, long n, bool skip_last)
{
    if (n == 0)
        return {0.0, 0.0};
    const long stop = skip_last ? n - 1 : n;
    return ordered_reduce(stop + 1, [&](long b, long e) {
        double re = 0.0, im = 0.0;
        for (long j = b; j < e; ++j) {
            const double w = (j == 0 || j == n) ? 0.5 : 1.0;
            const cplx v =
                w * kernel[static_cast<std::size_t>(n - j)] * c[static_cast<std::size_t>(j)];
            re += v.real();
            im += v.imag();
        }
        return cplx{re, im};
    });
}

} // namespace fanomode::kernels::omp
