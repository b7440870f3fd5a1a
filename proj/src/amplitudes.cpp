#include <array>
#include <cmath>

#include "fanomode/dynamics.hpp"
#include "fanomode/errors.hpp"

namespace fanomode {

double jump_rate(const EmbeddedQME& q, cplx c1, cplx b1)
{
    // Gamma_11 |c1|^2 + Gamma_22 |b1|^2 + Gamma_12 c1 b1* + Gamma_21 b1 c1*
    return q.gamma * std::norm(c1) + q.kappa * std::norm(b1)
         + 2.0 * (q.gamma_F * b1 * std::conj(c1)).real();
}

namespace {

struct Rates {
    cplx dc1, db1;
    double dpi;
};

// Rotating-frame right-hand side of the pseudomode amplitude equations.
Rates amplitude_rhs(const EmbeddedQME& q, cplx c1, cplx b1)
{
    const cplx z_rot{q.omega_C - q.omega_A, -0.5 * q.kappa};
    return {-0.5 * q.gamma * c1 - I * q.g_tilde_minus() * b1,
            -I * z_rot * b1 - I * std::conj(q.g_tilde_plus()) * c1,
            jump_rate(q, c1, b1)};
}

} // namespace

Trajectory solve_amplitudes(const EmbeddedQME& q, cplx c1_0, double t_max, double h)
{
    if (!(h > 0.0) || !std::isfinite(h) || !(t_max >= h))
        throw ParameterError("need h > 0 and t_max >= h");
    if (!(q.kappa > 0.0) || q.gamma < 0.0)
        throw ParameterError("generator needs kappa > 0 and gamma >= 0");
    if (std::abs(c1_0) > 1.0 + 1e-12)
        throw InputError("|c1(0)| must not exceed 1");
    const long n_steps = std::lround(t_max / h);

    Trajectory traj;
    traj.info.method = Method::amplitudes;
    traj.info.h = h;
    traj.info.t_max = h * static_cast<double>(n_steps);
    traj.info.parameters = {{"omega_A", q.omega_A},        {"omega_C", q.omega_C},
                            {"Re_mu", q.mu.real()},        {"Im_mu", q.mu.imag()},
                            {"gamma", q.gamma},            {"kappa", q.kappa},
                            {"Re_gamma_F", q.gamma_F.real()}, {"Im_gamma_F", q.gamma_F.imag()}};
    traj.info.settings = "rk4 on (c1, b1, Pi_j)";

    const double c0 = std::sqrt(std::max(0.0, 1.0 - std::norm(c1_0)));
    cplx c1 = c1_0, b1{0.0, 0.0};
    double jump = 0.0;
    traj.states.reserve(static_cast<std::size_t>(n_steps) + 1);

    auto record = [&](long n) {
        AmplitudeState s;
        s.t = h * static_cast<double>(n);
        const cplx phase = std::exp(-I * (q.omega_A * s.t));
        s.c0 = c0;
        s.c1 = phase * c1;
        s.b1 = phase * b1;
        s.jump_probability = jump;
        traj.states.push_back(s);
    };
    record(0);
    for (long n = 0; n < n_steps; ++n) {
        const Rates k1 = amplitude_rhs(q, c1, b1);
        const Rates k2 = amplitude_rhs(q, c1 + 0.5 * h * k1.dc1, b1 + 0.5 * h * k1.db1);
        const Rates k3 = amplitude_rhs(q, c1 + 0.5 * h * k2.dc1, b1 + 0.5 * h * k2.db1);
        const Rates k4 = amplitude_rhs(q, c1 + h * k3.dc1, b1 + h * k3.db1);
        c1 += h / 6.0 * (k1.dc1 + 2.0 * k2.dc1 + 2.0 * k3.dc1 + k4.dc1);
        b1 += h / 6.0 * (k1.db1 + 2.0 * k2.db1 + 2.0 * k3.db1 + k4.db1);
        jump += h / 6.0 * (k1.dpi + 2.0 * k2.dpi + 2.0 * k3.dpi + k4.dpi);
        record(n + 1);
    }
    return traj;
}

} // namespace fanomode
