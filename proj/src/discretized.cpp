#include <cmath>
#include <sstream>
#include <vector>

#include "fanomode/dynamics.hpp"
#include "fanomode/errors.hpp"
#include "fanomode/kernels.hpp"

namespace fanomode {

DiscretizedReservoir build_discretized(const PoleSpectral& spec, double window, long n_modes,
                                       Execution exec)
{
    validate(spec);
    if (n_modes < 100)
        throw ParameterError("discretized reservoir needs n_modes >= 100");
    const double kappa = -2.0 * spec.z1.imag();
    if (!(window >= 20.0 * kappa))
        throw ParameterError("discretized reservoir window must cover +-20 kappa");

    DiscretizedReservoir res;
    res.window = window;
    res.center = spec.z1.real();
    res.d_omega = 2.0 * window / static_cast<double>(n_modes);
    res.omega.resize(static_cast<std::size_t>(n_modes));
    for (long k = 0; k < n_modes; ++k)
        res.omega[static_cast<std::size_t>(k)] =
            res.center - window + (static_cast<double>(k) + 0.5) * res.d_omega;

    std::vector<double> J(res.omega.size());
    if (exec == Execution::parallel)
        kernels::omp::sample_J(spec, res.omega, J);
    else
        kernels::serial::sample_J(spec, res.omega, J);

    // J touches zero at an anti-resonance; tolerate rounding below it.
    const double scale = spec.J0 + std::abs(spec.r1) / std::abs(spec.z1.imag());
    res.g.resize(J.size());
    for (std::size_t k = 0; k < J.size(); ++k) {
        if (J[k] < -1e-12 * scale) {
            std::ostringstream msg;
            msg << "spectral function negative (" << J[k] << ") at omega = " << res.omega[k];
            throw SpectralError(msg.str());
        }
        res.g[k] = std::sqrt(std::max(J[k], 0.0) * res.d_omega);
    }
    return res;
}

Trajectory solve_discretized(const DiscretizedReservoir& res, double omega_A, cplx c1_0,
                             double t_max, double h, Execution exec)
{
    if (!(h > 0.0) || !std::isfinite(h) || !(t_max >= h))
        throw ParameterError("need h > 0 and t_max >= h");
    if (!(t_max < 0.5 * res.recurrence_time()))
        throw RecurrenceError("t_max must stay below half the comb recurrence time pi/d_omega");
    if (std::abs(c1_0) > 1.0 + 1e-12)
        throw InputError("|c1(0)| must not exceed 1");
    const long n_steps = std::lround(t_max / h);
    const std::size_t n_modes = res.omega.size();

    const bool par = exec == Execution::parallel;
    auto stage = par ? kernels::omp::reservoir_stage : kernels::serial::reservoir_stage;
    auto phase = par ? kernels::omp::apply_phase : kernels::serial::apply_phase;
    auto combine = par ? kernels::omp::rk4_combine : kernels::serial::rk4_combine;
    auto norm = par ? kernels::omp::norm_sq : kernels::serial::norm_sq;

    // Free mode evolution e^{-i (w_k - w_A) tau} is applied exactly; RK4 only
    // sees the coupling (integrating-factor form), so the fast detunings at
    // the window edges cost no accuracy.
    std::vector<cplx> unit(n_modes, cplx{1.0, 0.0}), half(n_modes), full(n_modes);
    for (std::size_t k = 0; k < n_modes; ++k) {
        const double detuning = res.omega[k] - omega_A;
        half[k] = std::exp(-I * (0.5 * h * detuning));
        full[k] = std::exp(-I * (h * detuning));
    }

    std::vector<cplx> ck(n_modes, cplx{0.0, 0.0});
    std::vector<cplx> k1(n_modes), k2(n_modes), k3(n_modes), k4(n_modes);
    const std::vector<cplx> no_increment(n_modes, cplx{0.0, 0.0});
    cplx c1 = c1_0;

    Trajectory traj;
    traj.info.method = Method::discretized;
    traj.info.h = h;
    traj.info.t_max = h * static_cast<double>(n_steps);
    traj.info.parameters = {{"omega_A", omega_A},
                            {"center", res.center},
                            {"window", res.window},
                            {"n_modes", static_cast<double>(n_modes)},
                            {"d_omega", res.d_omega}};
    traj.info.settings = "integrating-factor rk4, frame rotating at omega_A, real couplings";

    const double c0 = std::sqrt(std::max(0.0, 1.0 - std::norm(c1_0)));
    traj.states.reserve(static_cast<std::size_t>(n_steps) + 1);
    auto record = [&](long n) {
        AmplitudeState s;
        s.t = h * static_cast<double>(n);
        s.c0 = c0;
        s.c1 = std::exp(-I * (omega_A * s.t)) * c1;
        s.jump_probability = norm(ck);
        traj.states.push_back(s);
    };

    record(0);
    const cplx zero{0.0, 0.0};
    for (long n = 0; n < n_steps; ++n) {
        const cplx d1 = stage(unit, res.g, c1, ck, zero, no_increment, 0.0, k1);
        const cplx d2 = stage(half, res.g, c1, ck, d1, k1, 0.5 * h, k2);
        const cplx d3 = stage(half, res.g, c1, ck, d2, k2, 0.5 * h, k3);
        const cplx d4 = stage(full, res.g, c1, ck, d3, k3, h, k4);
        c1 += h / 6.0 * (d1 + 2.0 * d2 + 2.0 * d3 + d4);
        combine(ck, k1, k2, k3, k4, h);
        phase(ck, full);
        record(n + 1);
    }
    return traj;
}

} // namespace fanomode
