#include "fanomode/spectral.hpp"

#include <cmath>
#include <string>

#include "fanomode/errors.hpp"
#include "fanomode/kernels.hpp"

namespace fanomode {

namespace {

void require_finite(double v, const char* name)
{
    if (!std::isfinite(v))
        throw ParameterError(std::string("non-finite parameter: ") + name);
}

} // namespace

cplx FanoModel::gamma_F() const
{
    const double product = eta * gamma * kappa;
    if (gamma == 0.0 || product <= 0.0)
        return {0.0, 0.0};
    return std::polar(std::sqrt(product), theta_A - theta_C);
}

void validate(const FanoModel& m)
{
    require_finite(m.omega_A, "omega_A");
    require_finite(m.omega_C, "omega_C");
    require_finite(m.gamma, "gamma");
    require_finite(m.kappa, "kappa");
    require_finite(m.g_abs, "g_abs");
    require_finite(m.phi, "phi");
    require_finite(m.eta, "eta");
    require_finite(m.theta_A, "theta_A");
    require_finite(m.theta_C, "theta_C");
    if (m.gamma < 0.0)
        throw ParameterError("gamma must be >= 0");
    if (m.kappa <= 0.0)
        throw ParameterError("kappa must be > 0");
    if (m.g_abs < 0.0)
        throw ParameterError("g_abs must be >= 0");
    if (m.eta < 0.0)
        throw ParameterError("eta must be >= 0");
}

void validate(const PoleSpectral& s)
{
    require_finite(s.J0, "J0");
    require_finite(s.z1.real(), "Re z1");
    require_finite(s.z1.imag(), "Im z1");
    require_finite(s.r1.real(), "Re r1");
    require_finite(s.r1.imag(), "Im r1");
    if (s.z1.imag() >= 0.0)
        throw ParameterError("pole must lie in the lower half plane");
}

PoleSpectral pole_residue_from_model(const FanoModel& m)
{
    validate(m);
    PoleSpectral s;
    s.J0 = m.gamma / (2.0 * pi);
    s.z1 = {m.omega_C, -0.5 * m.kappa};
    // (i/2pi) [|g|^2 - eta gamma kappa/4 - i |g| sqrt(eta gamma kappa) cos dphi]
    const double egk = m.gamma > 0.0 ? m.eta * m.gamma * m.kappa : 0.0;
    const double a = m.g_abs * m.g_abs - 0.25 * egk;
    const double b = m.g_abs * std::sqrt(std::max(egk, 0.0)) * std::cos(m.delta_phi());
    s.r1 = cplx{b, a} / (2.0 * pi);
    return s;
}

ReducedForm reduced_form(const FanoModel& m)
{
    validate(m);
    if (m.gamma <= 0.0)
        throw ParameterError("reduced form needs gamma > 0");
    ReducedForm rf;
    rf.gamma = m.gamma;
    rf.eta = m.eta;
    rf.q = std::polar(2.0 * m.g_abs / std::sqrt(m.gamma * m.kappa), m.delta_phi());
    return rf;
}

double evaluate_f(const PoleSpectral& s, double omega)
{
    const double x = omega - s.z1.real();
    const double y = s.z1.imag();
    return 2.0 * (s.r1.real() * x - y * s.r1.imag()) / (x * x + y * y);
}

double evaluate_J(const PoleSpectral& s, double omega)
{
    return s.J0 + evaluate_f(s, omega);
}

double evaluate_reduced_J(const ReducedForm& rf, double eps)
{
    const cplx shifted = eps + std::sqrt(rf.eta) * rf.q;
    const double bracket = std::norm(shifted) + (1.0 - rf.eta) * (1.0 + std::norm(rf.q));
    return rf.gamma * bracket / (eps * eps + 1.0);
}

KernelValue memory_kernel(const PoleSpectral& s, double tau)
{
    if (!(tau >= 0.0))
        throw DomainError("memory kernel needs tau >= 0");
    return {2.0 * pi * s.J0, -2.0 * pi * I * s.r1 * std::exp(-I * s.z1 * tau)};
}

QuadratureResult kernel_by_quadrature(const PoleSpectral& s, double tau, double window,
                                      long n_points, Execution exec)
{
    if (!(window > 0.0) || n_points < 2)
        throw ParameterError("quadrature needs window > 0 and n_points >= 2");
    const double a = s.z1.real() - window;
    const double dx = 2.0 * window / static_cast<double>(n_points - 1);

    auto trap = exec == Execution::parallel ? kernels::omp::fourier_trapezoid
                                            : kernels::serial::fourier_trapezoid;
    QuadratureResult r;
    r.value = trap(s, tau, a, dx, n_points, 1);
    r.discretization_error = 0.0;
    if ((n_points - 1) % 2 == 0 && n_points >= 3)
        r.discretization_error = std::abs(r.value - trap(s, tau, a, dx, n_points, 2)) / 3.0;

    // Beyond the window f ~ 2 Re r1 / x - 2 Im z1 Im r1 / x^2.
    const double even_tail = 4.0 * std::abs(s.z1.imag() * s.r1.imag()) / window;
    const double odd_tail = tau > 0.0 ? 4.0 * std::abs(s.r1.real()) / (window * tau) : 0.0;
    r.truncation_error = even_tail + odd_tail;
    return r;
}

} // namespace fanomode
