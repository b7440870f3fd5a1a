// dynamics.hpp: single-excitation dynamics by four independent routes:
//   solve_volterra     exact memory-kernel equation for c1(t)
//   solve_amplitudes   atom + pseudomode non-Hermitian amplitudes
//   solve_qme          atom + pseudomode master equation on the 3-dim subspace
//   solve_discretized  brute-force Schroedinger evolution with a mode comb
// All amplitude solvers integrate in the frame rotating at omega_A and
// report lab-frame amplitudes.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fanomode/embedding.hpp"
#include "fanomode/spectral.hpp"

namespace fanomode {

enum class Method { volterra, amplitudes, qme, discretized };

std::string to_string(Method m);
Method method_from_string(const std::string& name);

// c0 is constant. For volterra and discretized runs b1 stays zero and
// jump_probability holds the population that left the atom (for the
// discretized oracle: sum_k |c_k|^2, computed from the mode amplitudes).
struct AmplitudeState {
    double t = 0.0;
    cplx c0{0.0, 0.0};
    cplx c1{0.0, 0.0};
    cplx b1{0.0, 0.0};
    double jump_probability = 0.0;

    double norm() const { return std::norm(c0) + std::norm(c1) + std::norm(b1) + jump_probability; }
};

// Ordered basis {|0>_A|0>_C, |1>_A|0>_C, |0>_A|1>_C}.
class DensityMatrix3 {
public:
    // Throws InputError unless rho is Hermitian, unit trace (1e-10) and has
    // eigenvalues >= -1e-10.
    explicit DensityMatrix3(const Eigen::Matrix3cd& rho);

    static DensityMatrix3 ground();
    // |psi><psi| + (1 - |psi|^2) |0><0| for psi = c0|0> + c1|1,0> + b1|0,1>.
    static DensityMatrix3 from_amplitudes(cplx c0, cplx c1, cplx b1);

    const Eigen::Matrix3cd& matrix() const { return rho_; }

private:
    Eigen::Matrix3cd rho_;
};

double min_eigenvalue(const Eigen::Matrix3cd& rho);

// Lab-frame density matrix equivalent to an amplitude record.
Eigen::Matrix3cd density_from_state(const AmplitudeState& s);

struct RunInfo {
    Method method = Method::volterra;
    double h = 0.0;
    double t_max = 0.0;
    std::vector<std::pair<std::string, double>> parameters;  // model snapshot
    std::string settings;                                    // free-form integrator settings
};

// Uniform grid t_n = n h, n = 0..N. Amplitude methods fill `states`; the qme
// method fills `rho` (lab frame) and mirrors populations into `states`.
struct Trajectory {
    RunInfo info;
    std::vector<AmplitudeState> states;
    std::vector<Eigen::Matrix3cd> rho;

    std::size_t size() const { return states.size(); }
    double time(std::size_t n) const { return states[n].t; }
};

struct VolterraOptions {
    // one Richardson step with h/2; without it the scheme is O(h^2)
    bool richardson = true;
    // Direct O(N^2) evaluation of the history sum instead of the exponential
    // shift recursion. Both evaluate the same trapezoid sum.
    bool direct_history = false;
    Execution exec = Execution::serial;
};

// dc1/dt = -(i w_A + pi J0) c1 + 2 pi i r1 int_0^t e^{-i z1 (t - t')} c1(t') dt'.
Trajectory solve_volterra(const PoleSpectral& spec, double omega_A, cplx c1_0, double t_max,
                          double h, const VolterraOptions& opts = {});

// RK4 on the 2x2 non-Hermitian system with b1(0) = 0; Pi_j integrated from
// its rate alongside (not inferred from the norm).
Trajectory solve_amplitudes(const EmbeddedQME& qme, cplx c1_0, double t_max, double h);

// d Pi_j / dt = sum_mn Gamma_mn x_m x_n^*,  x = (c1, b1).
double jump_rate(const EmbeddedQME& qme, cplx c1, cplx b1);

// Lindblad generator applied to rho (lab frame).
Eigen::Matrix3cd qme_rhs(const EmbeddedQME& qme, const Eigen::Matrix3cd& rho);

Trajectory solve_qme(const EmbeddedQME& qme, const DensityMatrix3& rho_0, double t_max, double h);

struct DiscretizedReservoir {
    std::vector<double> omega;  // cell midpoints
    std::vector<double> g;      // sqrt(J(omega_k) d_omega) >= 0
    double d_omega = 0.0;
    double window = 0.0;
    double center = 0.0;

    double recurrence_time() const { return 2.0 * pi / d_omega; }
};

// Uniform comb of n_modes cells covering [Re z1 - window, Re z1 + window].
DiscretizedReservoir build_discretized(const PoleSpectral& spec, double window, long n_modes,
                                       Execution exec = Execution::serial);

// Requires t_max < pi / d_omega.
Trajectory solve_discretized(const DiscretizedReservoir& res, double omega_A, cplx c1_0,
                             double t_max, double h, Execution exec = Execution::serial);

struct DecayFit {
    double rate;
    double rms_residual;
    bool monotone;
    std::string warning;
};

// Least-squares slope of -log|c1|^2 over [t_a, t_b].
DecayFit decay_rate(const Trajectory& traj, double t_a, double t_b);

// max_t | |c1|_a - |c1|_b | over the common grid points.
double max_abs_c1_difference(const Trajectory& a, const Trajectory& b);

} // namespace fanomode
