#include <cmath>

#include "fanomode/dynamics.hpp"
#include "fanomode/errors.hpp"

namespace fanomode {

namespace {

struct Operators {
    Eigen::Matrix3cd sigma = Eigen::Matrix3cd::Zero();  // |0,0><1,0|
    Eigen::Matrix3cd a = Eigen::Matrix3cd::Zero();      // |0,0><0,1|
    Operators()
    {
        sigma(0, 1) = 1.0;
        a(0, 2) = 1.0;
    }
};

const Operators& ops()
{
    static const Operators o;
    return o;
}

Eigen::Matrix3cd hamiltonian(const EmbeddedQME& q, double omega_shift)
{
    Eigen::Matrix3cd h = Eigen::Matrix3cd::Zero();
    h(1, 1) = q.omega_A - omega_shift;
    h(2, 2) = q.omega_C - omega_shift;
    h(1, 2) = q.mu;  // sigma^+ a
    h(2, 1) = std::conj(q.mu);
    return h;
}

Eigen::Matrix3cd generator(const EmbeddedQME& q, const Eigen::Matrix3cd& ham,
                           const Eigen::Matrix3cd& rho)
{
    const KossakowskiMatrix gm = kossakowski(q);
    const Eigen::Matrix3cd* x[2] = {&ops().sigma, &ops().a};
    Eigen::Matrix3cd out = -I * (ham * rho - rho * ham);
    for (int m = 0; m < 2; ++m) {
        for (int n = 0; n < 2; ++n) {
            const cplx c = gm(m, n);
            if (c == cplx{0.0, 0.0})
                continue;
            const Eigen::Matrix3cd xn_dag = x[n]->adjoint();
            const Eigen::Matrix3cd prod = xn_dag * *x[m];
            out += c * (*x[m] * rho * xn_dag - 0.5 * (prod * rho + rho * prod));
        }
    }
    return out;
}

} // namespace

Eigen::Matrix3cd qme_rhs(const EmbeddedQME& q, const Eigen::Matrix3cd& rho)
{
    return generator(q, hamiltonian(q, 0.0), rho);
}

Trajectory solve_qme(const EmbeddedQME& q, const DensityMatrix3& rho_0, double t_max, double h)
{
    if (!(h > 0.0) || !std::isfinite(h) || !(t_max >= h))
        throw ParameterError("need h > 0 and t_max >= h");
    const long n_steps = std::lround(t_max / h);

    Trajectory traj;
    traj.info.method = Method::qme;
    traj.info.h = h;
    traj.info.t_max = h * static_cast<double>(n_steps);
    traj.info.parameters = {{"omega_A", q.omega_A},        {"omega_C", q.omega_C},
                            {"Re_mu", q.mu.real()},        {"Im_mu", q.mu.imag()},
                            {"gamma", q.gamma},            {"kappa", q.kappa},
                            {"Re_gamma_F", q.gamma_F.real()}, {"Im_gamma_F", q.gamma_F.imag()}};
    traj.info.settings = "rk4 on rho, frame rotating at omega_A";

    // Rotating frame: the generator commutes with the excitation number, so
    // subtracting omega_A N from H_AC only rotates the ground/excited coherences.
    const Eigen::Matrix3cd ham = hamiltonian(q, q.omega_A);
    Eigen::Matrix3cd rho = rho_0.matrix();
    const double ground_0 = rho(0, 0).real();

    auto record = [&](long n) {
        const double t = h * static_cast<double>(n);
        const cplx phase = std::exp(I * (q.omega_A * t));
        Eigen::Matrix3cd lab = rho;
        for (int j = 1; j < 3; ++j) {
            lab(0, j) *= phase;
            lab(j, 0) *= std::conj(phase);
        }
        traj.rho.push_back(lab);
        AmplitudeState s;
        s.t = t;
        s.c0 = std::sqrt(std::max(ground_0, 0.0));
        s.c1 = std::sqrt(std::max(lab(1, 1).real(), 0.0));
        s.b1 = std::sqrt(std::max(lab(2, 2).real(), 0.0));
        s.jump_probability = lab(0, 0).real() - ground_0;
        traj.states.push_back(s);
    };

    traj.rho.reserve(static_cast<std::size_t>(n_steps) + 1);
    traj.states.reserve(static_cast<std::size_t>(n_steps) + 1);
    record(0);
    for (long n = 0; n < n_steps; ++n) {
        const Eigen::Matrix3cd k1 = generator(q, ham, rho);
        const Eigen::Matrix3cd k2 = generator(q, ham, rho + 0.5 * h * k1);
        const Eigen::Matrix3cd k3 = generator(q, ham, rho + 0.5 * h * k2);
        const Eigen::Matrix3cd k4 = generator(q, ham, rho + h * k3);
        rho += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        record(n + 1);
    }
    return traj;
}

} // namespace fanomode
