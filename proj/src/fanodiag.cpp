#include "fanomode/fanodiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fanomode/errors.hpp"

namespace fanomode {

cplx fano_alpha(const FanoModel& m, double omega, double psi)
{
    const double x = omega - m.omega_C;
    return std::sqrt(m.kappa / (2.0 * pi)) * std::exp(I * (psi - m.theta_C))
         / cplx{x, -0.5 * m.kappa};
}

BetaCoefficients fano_beta(const FanoModel& m, double omega, double psi)
{
    const double x = omega - m.omega_C;
    const cplx base = std::exp(I * psi) / cplx{x, -0.5 * m.kappa};
    return {m.kappa / (2.0 * pi) * base, x * base};
}

cplx fano_lambda(const FanoModel& m, double omega, double psi)
{
    const double x = omega - m.omega_C;
    const cplx bracket = m.g() * std::sqrt(m.kappa / (2.0 * pi)) * std::exp(I * m.theta_C)
                       + x * std::sqrt(m.gamma / (2.0 * pi)) * std::exp(I * m.theta_A);
    return std::exp(-I * psi) / cplx{x, 0.5 * m.kappa} * bracket;
}

cplx fano_lambda_from_modes(const FanoModel& m, double omega, double psi)
{
    // int beta*(w, w') dw' keeps only the delta part: the principal-value
    // integral over the flat continuum vanishes.
    const BetaCoefficients beta = fano_beta(m, omega, psi);
    const cplx beta_integral = std::conj(beta.delta_coefficient);
    return m.g() * std::conj(fano_alpha(m, omega, psi))
         + std::sqrt(m.gamma / (2.0 * pi)) * std::exp(I * m.theta_A) * beta_integral;
}

double verify_lambda_identity(const FanoModel& m, std::span<const double> omega_grid, double psi)
{
    validate(m);
    if (m.eta != 1.0)
        throw UnsupportedRegimeError("Fano diagonalization identity holds only for eta = 1");
    const PoleSpectral spec = pole_residue_from_model(m);
    double worst = 0.0;
    for (double w : omega_grid) {
        const double lhs = 2.0 * pi * std::norm(fano_lambda(m, w, psi));
        const double rhs = 2.0 * pi * evaluate_J(spec, w);
        const double scale = std::max({std::abs(lhs), std::abs(rhs), m.gamma,
                                       std::numeric_limits<double>::min()});
        worst = std::max(worst, std::abs(lhs - rhs) / scale);
    }
    return worst;
}

} // namespace fanomode
