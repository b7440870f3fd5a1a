// embedding.hpp: pseudomode embedding of a single-pole spectral function

#pragma once

#include <Eigen/Dense>

#include "fanomode/spectral.hpp"

namespace fanomode {

// Generator of the atom + pseudomode master equation
//   d rho/dt = -i[H_AC, rho] + sum_mn Gamma_mn (X_m rho X_n^+ - 1/2 {X_n^+ X_m, rho}),
// X_1 = sigma, X_2 = a, with H_AC = w_A s^+s + w_C a^+a + mu s^+a + mu* s a^+.
struct EmbeddedQME {
    double omega_A = 0.0;
    double omega_C = 0.0;  // Re z1
    cplx mu{0.0, 0.0};     // coherent atom-pseudomode coupling
    double gamma = 0.0;    // 2 pi J0
    double kappa = 1.0;    // -2 Im z1
    cplx gamma_F{0.0, 0.0};  // 2 nu

    cplx nu() const { return 0.5 * gamma_F; }
    cplx g_tilde_minus() const { return mu - I * nu(); }
    cplx g_tilde_plus() const { return mu + I * nu(); }
};

using KossakowskiMatrix = Eigen::Matrix2cd;

// Builds the generator from a pole spectrum and a factorization
// 2 pi i r1 = -(mu - i nu) conj(mu + i nu). Throws InconsistencyError when the
// factorization misses 2 pi i r1 by more than 1e-10 relative.
EmbeddedQME embed(const PoleSpectral& spec, double omega_A, cplx mu, cplx nu);

// mu = g, nu = gamma_F / 2.
EmbeddedQME embed_from_model(const FanoModel& model);

PoleSpectral spectral_from_qme(const EmbeddedQME& qme);

// [[gamma, conj(gamma_F)], [gamma_F, kappa]]
KossakowskiMatrix kossakowski(const EmbeddedQME& qme);

struct LindbladReport {
    bool lindblad;
    Eigen::Vector2d eigenvalues;  // ascending
    double det;
    double trace;
    // (-Im z1) pi J0 - |nu|^2 = (kappa gamma - |gamma_F|^2) / 4
    double scalar_condition;
    // smallest J0 making Gamma PSD for the given kappa and nu
    double repair_threshold_J0;
};

// PSD test with relative tolerance 1e-12 * trace(Gamma).
LindbladReport is_lindblad(const EmbeddedQME& qme);

// |nu|^2 / (pi (-Im z1))
double lindblad_repair_threshold(const EmbeddedQME& qme);

} // namespace fanomode
