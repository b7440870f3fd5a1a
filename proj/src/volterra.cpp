#include <cmath>
#include <sstream>
#include <vector>

#include "fanomode/dynamics.hpp"
#include "fanomode/errors.hpp"
#include "fanomode/kernels.hpp"

namespace fanomode {

namespace {

long step_count(double t_max, double h)
{
    if (!(h > 0.0) || !std::isfinite(h))
        throw ParameterError("step size must be positive");
    if (!(t_max >= h))
        throw ParameterError("t_max must be >= h");
    return std::lround(t_max / h);
}

// Trapezoidal product rule in the frame rotating at omega_A:
//   dc/dt = a c + int_0^t K(t - s) c(s) ds,  K(tau) = A e^{lambda tau}.
// Both the ODE and the history integral use the trapezoid rule, which makes
// each step a scalar linear equation for c_{n+1}.
std::vector<cplx> trapezoid_run(const PoleSpectral& spec, double omega_A, cplx c1_0, long n_steps,
                                double h, const VolterraOptions& opts)
{
    const double a = -pi * spec.J0;
    const cplx amp = 2.0 * pi * I * spec.r1;
    const cplx lambda = -I * (spec.z1 - omega_A);
    const cplx shift = std::exp(lambda * h);
    const cplx denom = 1.0 - 0.5 * h * (a + 0.5 * h * amp);

    std::vector<cplx> c(static_cast<std::size_t>(n_steps) + 1);
    c[0] = c1_0;

    std::vector<cplx> kernel;
    if (opts.direct_history) {
        kernel.resize(c.size());
        for (std::size_t m = 0; m < kernel.size(); ++m)
            kernel[m] = amp * std::exp(lambda * (h * static_cast<double>(m)));
    }
    auto history = opts.exec == Execution::parallel ? kernels::omp::history_sum
                                                    : kernels::serial::history_sum;

    cplx integral{0.0, 0.0};  // h * trapezoid sum up to t_n
    for (long n = 0; n < n_steps; ++n) {
        const auto i = static_cast<std::size_t>(n);
        const cplx f_n = a * c[i] + integral;
        // history part of I_{n+1} that does not involve c_{n+1}
        const cplx known = opts.direct_history
                               ? h * history(kernel, c, n + 1, true)
                               : shift * (integral + 0.5 * h * amp * c[i]);
        c[i + 1] = (c[i] + 0.5 * h * (f_n + known)) / denom;
        integral = known + 0.5 * h * amp * c[i + 1];
    }
    return c;
}

} // namespace

Trajectory solve_volterra(const PoleSpectral& spec, double omega_A, cplx c1_0, double t_max,
                          double h, const VolterraOptions& opts)
{
    validate(spec);
    const long n_steps = step_count(t_max, h);
    if (std::abs(c1_0) > 1.0 + 1e-12)
        throw InputError("|c1(0)| must not exceed 1");

    const double kernel_scale = 2.0 * pi * std::abs(spec.r1) + pi * spec.J0;
    if (h * kernel_scale > 0.1)
        throw StepSizeError("step too large for the memory kernel: h*max|F| > 0.1");

    std::vector<cplx> c = trapezoid_run(spec, omega_A, c1_0, n_steps, h, opts);
    if (opts.richardson) {
        const std::vector<cplx> fine = trapezoid_run(spec, omega_A, c1_0, 2 * n_steps, 0.5 * h, opts);
        for (std::size_t n = 1; n < c.size(); ++n)
            c[n] = (4.0 * fine[2 * n] - c[n]) / 3.0;
    }

    Trajectory traj;
    traj.info.method = Method::volterra;
    traj.info.h = h;
    traj.info.t_max = h * static_cast<double>(n_steps);
    traj.info.parameters = {{"J0", spec.J0},
                            {"Re_z1", spec.z1.real()},
                            {"Im_z1", spec.z1.imag()},
                            {"Re_r1", spec.r1.real()},
                            {"Im_r1", spec.r1.imag()},
                            {"omega_A", omega_A}};
    std::ostringstream settings;
    settings << "trapezoid product rule; richardson=" << (opts.richardson ? "on" : "off")
             << "; history=" << (opts.direct_history ? "direct" : "recursive");
    traj.info.settings = settings.str();

    const double c0 = std::sqrt(std::max(0.0, 1.0 - std::norm(c1_0)));
    traj.states.resize(c.size());
    for (std::size_t n = 0; n < c.size(); ++n) {
        AmplitudeState& s = traj.states[n];
        s.t = h * static_cast<double>(n);
        s.c0 = c0;
        s.c1 = std::exp(-I * (omega_A * s.t)) * c[n];
        s.jump_probability = 1.0 - c0 * c0 - std::norm(c[n]);
    }
    return traj;
}

} // namespace fanomode
