#include <algorithm>
#include <cmath>

#include "fanomode/dynamics.hpp"
#include "fanomode/errors.hpp"

namespace fanomode {

std::string to_string(Method m)
{
    switch (m) {
    case Method::volterra: return "volterra";
    case Method::amplitudes: return "amplitudes";
    case Method::qme: return "qme";
    case Method::discretized: return "discretized";
    }
    return "unknown";
}

Method method_from_string(const std::string& name)
{
    for (Method m : {Method::volterra, Method::amplitudes, Method::qme, Method::discretized})
        if (to_string(m) == name)
            return m;
    throw InputError("unknown method '" + name + "'");
}

DensityMatrix3::DensityMatrix3(const Eigen::Matrix3cd& rho) : rho_(rho)
{
    if (!rho.allFinite())
        throw InputError("density matrix has non-finite entries");
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw InputError("density matrix is not Hermitian");
    if (std::abs(rho.trace() - 1.0) > 1e-10)
        throw InputError("density matrix trace differs from 1");
    if (min_eigenvalue(rho) < -1e-10)
        throw InputError("density matrix has a negative eigenvalue");
}

DensityMatrix3 DensityMatrix3::ground()
{
    Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();
    m(0, 0) = 1.0;
    return DensityMatrix3(m);
}

DensityMatrix3 DensityMatrix3::from_amplitudes(cplx c0, cplx c1, cplx b1)
{
    AmplitudeState s;
    s.c0 = c0;
    s.c1 = c1;
    s.b1 = b1;
    s.jump_probability = 1.0 - std::norm(c0) - std::norm(c1) - std::norm(b1);
    return DensityMatrix3(density_from_state(s));
}

double min_eigenvalue(const Eigen::Matrix3cd& rho)
{
    const Eigen::Matrix3cd herm = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> es(herm, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

Eigen::Matrix3cd density_from_state(const AmplitudeState& s)
{
    Eigen::Vector3cd psi(s.c0, s.c1, s.b1);
    Eigen::Matrix3cd rho = psi * psi.adjoint();
    rho(0, 0) += s.jump_probability;
    return rho;
}

double max_abs_c1_difference(const Trajectory& a, const Trajectory& b)
{
    if (a.info.h != b.info.h)
        throw InputError("trajectories use different step sizes");
    const std::size_t n = std::min(a.size(), b.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        worst = std::max(worst, std::abs(std::abs(a.states[i].c1) - std::abs(b.states[i].c1)));
    return worst;
}

} // namespace fanomode
