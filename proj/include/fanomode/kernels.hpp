// kernels.hpp: data-parallel inner loops.
//
// Every kernel exists twice with identical signatures: kernels::serial is the
// plain reference loop, kernels::omp the OpenMP version. OpenMP reductions
// combine per-thread partial sums in thread order, so a fixed thread count
// gives reproducible results that agree with the serial loop to rounding.

#pragma once

#include <span>

#include "fanomode/spectral.hpp"

namespace fanomode::kernels {

namespace serial {

// out[i] = J(omega[i])
void sample_J(const PoleSpectral& spec, std::span<const double> omega, std::span<double> out);

// dx * stride * sum_k w_k f(x_k) e^{-i x_k tau}, x_k = a + k*stride*dx over the
// points of an n_points grid; trapezoid end weights 1/2.
cplx fourier_trapezoid(const PoleSpectral& spec, double tau, double a, double dx,
                       long n_points, long stride);

// Interaction-picture RK4 stage for the mode comb. With x_k = phase_k (c_k + a k_ck)
// and x1 = c1 + a k_c1, writes dck = -i g_k x1 conj(phase_k) and returns
// -i sum_k g_k x_k.
cplx reservoir_stage(std::span<const cplx> phase, std::span<const double> g, cplx c1,
                     std::span<const cplx> ck, cplx k_c1, std::span<const cplx> k_ck, double a,
                     std::span<cplx> dck);

// y[k] *= phase[k]
void apply_phase(std::span<cplx> y, std::span<const cplx> phase);

// y += h/6 (k1 + 2 k2 + 2 k3 + k4)
void rk4_combine(std::span<cplx> y, std::span<const cplx> k1, std::span<const cplx> k2,
                 std::span<const cplx> k3, std::span<const cplx> k4, double h);

double norm_sq(std::span<const cplx> y);

// Trapezoid history sum  sum_{j=0}^{n} w_j kernel[n-j] c[j],  w_0 = w_n = 1/2.
// With skip_last the j = n term is left out (the caller treats it implicitly).
cplx history_sum(std::span<const cplx> kernel, std::span<const cplx> c, long n, bool skip_last);

} // namespace serial

namespace omp {

// out[i] = J(omega[i])
void sample_J(const PoleSpectral& spec, std::span<const double> omega, std::span<double> out);

// dx * stride * sum_k w_k f(x_k) e^{-i x_k tau}, x_k = a + k*stride*dx over the
// points of an n_points grid; trapezoid end weights 1/2.
cplx fourier_trapezoid(const PoleSpectral& spec, double tau, double a, double dx,
                       long n_points, long stride);

// Interaction-picture RK4 stage for the mode comb. With x_k = phase_k (c_k + a k_ck)
// and x1 = c1 + a k_c1, writes dck = -i g_k x1 conj(phase_k) and returns
// -i sum_k g_k x_k.
cplx reservoir_stage(std::span<const cplx> phase, std::span<const double> g, cplx c1,
                     std::span<const cplx> ck, cplx k_c1, std::span<const cplx> k_ck, double a,
                     std::span<cplx> dck);

// y[k] *= phase[k]
void apply_phase(std::span<cplx> y, std::span<const cplx> phase);

// y += h/6 (k1 + 2 k2 + 2 k3 + k4)
void rk4_combine(std::span<cplx> y, std::span<const cplx> k1, std::span<const cplx> k2,
                 std::span<const cplx> k3, std::span<const cplx> k4, double h);

double norm_sq(std::span<const cplx> y);

// Trapezoid history sum  sum_{j=0}^{n} w_j kernel[n-j] c[j],  w_0 = w_n = 1/2.
// With skip_last the j = n term is left out (the caller treats it implicitly).
cplx history_sum(std::span<const cplx> kernel, std::span<const cplx> c, long n, bool skip_last);

} // namespace omp

} // namespace fanomode::kernels
