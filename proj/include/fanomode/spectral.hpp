// spectral.hpp: Fano spectral function, pole/residue form and memory kernel

#pragma once

#include <complex>

namespace fanomode {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr cplx I{0.0, 1.0};

// Physical parameters of the atom + cavity + common reservoir setup.
// Frequencies and rates share one (arbitrary) unit; the CLI uses kappa = 1.
struct FanoModel {
    double omega_A = 0.0;  // atomic transition frequency
    double omega_C = 0.0;  // cavity frequency
    double gamma = 0.0;    // atomic loss rate
    double kappa = 1.0;    // cavity loss rate
    double g_abs = 0.0;    // |g|, atom-cavity coupling magnitude
    double phi = 0.0;      // arg g
    double eta = 0.0;      // Fano strength, Lindblad-valid for 0 <= eta <= 1
    double theta_A = 0.0;  // phase of the atom-reservoir coupling
    double theta_C = 0.0;  // phase of the cavity-reservoir coupling

    cplx g() const { return std::polar(g_abs, phi); }
    // phi - theta_A + theta_C
    double delta_phi() const { return phi - theta_A + theta_C; }
    // sqrt(eta gamma kappa) e^{i(theta_A - theta_C)}; zero when gamma == 0
    cplx gamma_F() const;
    bool eta_in_lindblad_range() const { return eta >= 0.0 && eta <= 1.0; }
};

// Throws ParameterError unless all fields are finite, gamma >= 0, kappa > 0, |g| >= 0.
void validate(const FanoModel& model);

// J(w) = J0 + r1/(w - z1) + conj(r1)/(w - conj(z1)).
struct PoleSpectral {
    double J0 = 0.0;
    cplx z1{0.0, -0.5};
    cplx r1{0.0, 0.0};
};

void validate(const PoleSpectral& spec);

// Reduced-detuning parametrization 2 pi J(eps), eps = 2 (w - w_C) / kappa.
struct ReducedForm {
    double gamma = 0.0;
    cplx q{0.0, 0.0};  // 2|g| e^{i dphi} / sqrt(gamma kappa)
    double eta = 0.0;
};

PoleSpectral pole_residue_from_model(const FanoModel& model);

// Requires gamma > 0 (q is undefined otherwise).
ReducedForm reduced_form(const FanoModel& model);

// Non-constant part f(w).
double evaluate_f(const PoleSpectral& spec, double omega);
double evaluate_J(const PoleSpectral& spec, double omega);

// Returns 2 pi J(eps).
double evaluate_reduced_J(const ReducedForm& rf, double epsilon);

struct KernelValue {
    double delta_weight;  // coefficient of delta(tau): 2 pi J0
    cplx regular;         // -2 pi i r1 exp(-i z1 tau)
};

// F(tau) for tau >= 0. The delta term is kept as a weight; a one-sided
// integral over [0, t] picks up half of it, i.e. pi J0.
KernelValue memory_kernel(const PoleSpectral& spec, double tau);

struct QuadratureResult {
    cplx value;
    double discretization_error;  // |T_n - T_{n/2}| / 3
    double truncation_error;      // tail estimate outside the window
};

enum class Execution { serial, parallel };

// Trapezoid rule for int f(w) e^{-i w tau} dw over [Re z1 - window, Re z1 + window].
// At tau = 0 this converges to the symmetric value 2 pi Im r1 (the mean of
// the one-sided limits of the regular kernel), not to regular(0).
QuadratureResult kernel_by_quadrature(const PoleSpectral& spec, double tau, double window,
                                      long n_points, Execution exec = Execution::serial);

} // namespace fanomode
