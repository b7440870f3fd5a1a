#include "fanomode/embedding.hpp"

#include <cmath>

#include "fanomode/errors.hpp"

namespace fanomode {

EmbeddedQME embed(const PoleSpectral& spec, double omega_A, cplx mu, cplx nu)
{
    validate(spec);
    if (!std::isfinite(omega_A))
        throw ParameterError("non-finite parameter: omega_A");

    const cplx g_minus = mu - I * nu;
    const cplx g_plus = mu + I * nu;
    const cplx target = 2.0 * pi * I * spec.r1;
    const cplx product = -g_minus * std::conj(g_plus);
    const double scale = std::max({std::abs(target), std::norm(mu), std::norm(nu)});
    const double residual = std::abs(product - target);
    if (residual > 1e-10 * scale && residual > 1e-300)
        throw InconsistencyError("residue factorization mismatch", residual);

    EmbeddedQME q;
    q.omega_A = omega_A;
    q.omega_C = spec.z1.real();
    q.mu = mu;
    q.gamma = 2.0 * pi * spec.J0;
    q.kappa = -2.0 * spec.z1.imag();
    q.gamma_F = 2.0 * nu;
    return q;
}

EmbeddedQME embed_from_model(const FanoModel& model)
{
    const PoleSpectral spec = pole_residue_from_model(model);
    return embed(spec, model.omega_A, model.g(), 0.5 * model.gamma_F());
}

PoleSpectral spectral_from_qme(const EmbeddedQME& q)
{
    PoleSpectral s;
    s.J0 = q.gamma / (2.0 * pi);
    s.z1 = {q.omega_C, -0.5 * q.kappa};
    s.r1 = -q.g_tilde_minus() * std::conj(q.g_tilde_plus()) / (2.0 * pi * I);
    return s;
}

KossakowskiMatrix kossakowski(const EmbeddedQME& q)
{
    KossakowskiMatrix m;
    m << cplx{q.gamma, 0.0}, std::conj(q.gamma_F),
         q.gamma_F, cplx{q.kappa, 0.0};
    return m;
}

double lindblad_repair_threshold(const EmbeddedQME& q)
{
    return std::norm(q.nu()) / (pi * 0.5 * q.kappa);
}

LindbladReport is_lindblad(const EmbeddedQME& q)
{
    const KossakowskiMatrix gm = kossakowski(q);
    Eigen::SelfAdjointEigenSolver<KossakowskiMatrix> es(gm, Eigen::EigenvaluesOnly);

    LindbladReport r;
    r.eigenvalues = es.eigenvalues();
    r.trace = q.gamma + q.kappa;
    r.det = q.gamma * q.kappa - std::norm(q.gamma_F);
    r.scalar_condition = 0.5 * q.kappa * 0.5 * q.gamma - std::norm(q.nu());
    r.repair_threshold_J0 = lindblad_repair_threshold(q);
    const double tol = 1e-12 * std::abs(r.trace);
    r.lindblad = r.eigenvalues.minCoeff() >= -tol;
    return r;
}

} // namespace fanomode
