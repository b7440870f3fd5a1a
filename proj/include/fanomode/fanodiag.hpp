// fanodiag.hpp: Fano diagonalization of the cavity + continuum block and the
// resulting atom-eigenmode coupling Lambda(w).

#pragma once

#include <span>

#include "fanomode/spectral.hpp"

namespace fanomode {

// Principal-value and delta coefficients of beta(w, w'):
//   beta(w, w') = pv_coefficient * P/(w - w') + delta_coefficient * delta(w - w').
// beta only enters Lambda through int P/(w - w') dw' = 0, so it is never sampled.
struct BetaCoefficients {
    cplx pv_coefficient;     // (kappa/2pi) e^{i psi} / (w - w_C - i kappa/2)
    cplx delta_coefficient;  // (w - w_C) e^{i psi} / (w - w_C - i kappa/2)
};

// sqrt(kappa/2pi) e^{-i theta_C + i psi} / (w - w_C - i kappa/2)
cplx fano_alpha(const FanoModel& model, double omega, double psi = 0.0);

BetaCoefficients fano_beta(const FanoModel& model, double omega, double psi = 0.0);

// e^{-i psi} / (w - w_C + i kappa/2) [g sqrt(kappa/2pi) e^{i theta_C} + (w - w_C) sqrt(gamma/2pi) e^{i theta_A}]
cplx fano_lambda(const FanoModel& model, double omega, double psi = 0.0);

// Lambda assembled from its definition g alpha*(w) + sqrt(gamma/2pi) e^{i theta_A} int beta*(w, w') dw'.
cplx fano_lambda_from_modes(const FanoModel& model, double omega, double psi = 0.0);

// max over the grid of |2pi|Lambda|^2 - 2pi J| / max(2pi J, gamma) with J from
// the pseudomode pole form. Throws UnsupportedRegimeError unless eta == 1.
double verify_lambda_identity(const FanoModel& model, std::span<const double> omega_grid,
                              double psi = 0.0);

} // namespace fanomode
