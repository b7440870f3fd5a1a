#include "fanomode/kernels.hpp"

namespace fanomode::kernels::serial {

void sample_J(const PoleSpectral& spec, std::span<const double> omega, std::span<double> out)
{
    for (std::size_t i = 0; i < omega.size(); ++i)
        out[i] = evaluate_J(spec, omega[i]);
}

cplx fourier_trapezoid(const PoleSpectral& spec, double tau, double a, double dx,
                       long n_points, long stride)
{
    const long last = (n_points - 1) / stride;
    double re = 0.0, im = 0.0;
    for (long k = 0; k <= last; ++k) {
        const double x = a + static_cast<double>(k * stride) * dx;
        const double w = (k == 0 || k == last) ? 0.5 : 1.0;
        const double f = w * evaluate_f(spec, x);
        re += f * std::cos(x * tau);
        im -= f * std::sin(x * tau);
    }
    return cplx{re, im} * (dx * static_cast<double>(stride));
}

cplx reservoir_stage(std::span<const cplx> phase, std::span<const double> g, cplx c1,
                     std::span<const cplx> ck, cplx k_c1, std::span<const cplx> k_ck, double a,
                     std::span<cplx> dck)
{
    const cplx x1 = c1 + a * k_c1;
    double re = 0.0, im = 0.0;
    for (std::size_t k = 0; k < ck.size(); ++k) {
        const cplx xk = phase[k] * (ck[k] + a * k_ck[k]);
        dck[k] = -I * g[k] * x1 * std::conj(phase[k]);
        re += g[k] * xk.real();
        im += g[k] * xk.imag();
    }
    return -I * cplx{re, im};
}

void apply_phase(std::span<cplx> y, std::span<const cplx> phase)
{
    for (std::size_t k = 0; k < y.size(); ++k)
        y[k] *= phase[k];
}

void rk4_combine(std::span<cplx> y, std::span<const cplx> k1, std::span<const cplx> k2,
                 std::span<const cplx> k3, std::span<const cplx> k4, double h)
{
    const double w = h / 6.0;
    for (std::size_t k = 0; k < y.size(); ++k)
        y[k] += w * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
}

double norm_sq(std::span<const cplx> y)
{
    double s = 0.0;
    for (const cplx& v : y)
        s += std::norm(v);
    return s;
}

cplx history_sum(std::span<const cplx> kernel, std::span<const cplx> c, long n, bool skip_last)
{
    if (n == 0)
        return {0.0, 0.0};
    double re = 0.0, im = 0.0;
    const long stop = skip_last ? n - 1 : n;
    for (long j = 0; j <= stop; ++j) {
        const double w = (j == 0 || j == n) ? 0.5 : 1.0;
        const cplx v = w * kernel[static_cast<std::size_t>(n - j)] * c[static_cast<std::size_t>(j)];
        re += v.real();
        im += v.imag();
    }
    return {re, im};
}

} // namespace fanomode::kernels::serial
