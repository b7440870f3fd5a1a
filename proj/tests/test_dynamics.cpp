#include <doctest.h>

#include <random>

#include "fanomode/dynamics.hpp"
#include "fanomode/errors.hpp"
#include "test_support.hpp"

using namespace fanomode;
using doctest::Approx;

namespace {

// Closed-form lab-frame c1(t) for c1(0) = 1, b1(0) = 0 from the 2x2 amplitude
// matrix M, using exp(Mt) = e^{mt} [cosh(dt) + sinh(dt)/d (M - m)] with
// m = tr M / 2, d^2 = m^2 - det M.
cplx c1_closed_form(const FanoModel& model, double t)
{
    const cplx g = model.g();
    const cplx nu = 0.5 * model.gamma_F();
    const cplx gm = g - I * nu, gp = g + I * nu;
    const double detuning = model.omega_C - model.omega_A;
    const cplx m00 = -0.5 * model.gamma;
    const cplx m01 = -I * gm;
    const cplx m10 = -I * std::conj(gp);
    const cplx m11 = -(I * detuning + 0.5 * model.kappa);
    const cplx m = 0.5 * (m00 + m11);
    const cplx d = std::sqrt(m * m - (m00 * m11 - m01 * m10));
    const cplx sh = std::abs(d) < 1e-12 ? cplx{t, 0.0} : std::sinh(d * t) / d;
    return std::exp(-I * model.omega_A * t) * std::exp(m * t) * (std::cosh(d * t) + sh * (m00 - m));
}

FanoModel reference_model()
{
    FanoModel m = test::fano_q2_model();
    m.omega_A = 0.3;
    m.phi = 0.4;
    m.theta_C = -0.2;
    m.eta = 0.7;
    return m;
}

double max_error_vs_closed_form(const Trajectory& tr, const FanoModel& m)
{
    double worst = 0.0;
    for (const auto& s : tr.states)
        worst = std::max(worst, std::abs(s.c1 - c1_closed_form(m, s.t)));
    return worst;
}

} // namespace

TEST_CASE("volterra: flat spectrum decays as exp(-gamma t / 2)")
{
    FanoModel m;
    m.gamma = 0.4;
    m.omega_A = 1.5;
    const Trajectory tr = solve_volterra(pole_residue_from_model(m), m.omega_A, 1.0, 10.0, 1e-2);
    CHECK(tr.size() == 1001);
    for (const auto& s : tr.states) {
        const cplx exact = std::exp(cplx{-0.2, -1.5} * s.t);
        CHECK(std::abs(s.c1 - exact) < 1e-12);
    }
}

TEST_CASE("volterra: damped Jaynes-Cummings limit (gamma = 0)")
{
    for (double g : {0.1, 0.25, 0.5, 2.0}) {
        FanoModel m;
        m.kappa = 1.0;
        m.g_abs = g;
        m.omega_A = 0.2;
        const Trajectory tr = solve_volterra(pole_residue_from_model(m), m.omega_A, 1.0, 20.0, 1e-3);
        CHECK(max_error_vs_closed_form(tr, m) < 1e-9);
    }
}

TEST_CASE("volterra, amplitudes and qme agree with the 2x2 closed form")
{
    const FanoModel m = reference_model();
    const PoleSpectral s = pole_residue_from_model(m);
    const EmbeddedQME q = embed_from_model(m);

    const Trajectory v = solve_volterra(s, m.omega_A, 1.0, 20.0, 1e-3);
    CHECK(max_error_vs_closed_form(v, m) < 1e-9);

    const Trajectory a = solve_amplitudes(q, 1.0, 20.0, 1e-3);
    CHECK(max_error_vs_closed_form(a, m) < 1e-10);
    CHECK(max_abs_c1_difference(v, a) < 1e-9);

    const Trajectory r = solve_qme(q, DensityMatrix3::from_amplitudes(0.0, 1.0, 0.0), 20.0, 1e-3);
    REQUIRE(r.rho.size() == a.size());
    double worst = 0.0;
    for (std::size_t n = 0; n < a.size(); n += 50) {
        const Eigen::Matrix3cd expected = density_from_state(a.states[n]);
        worst = std::max(worst, (r.rho[n] - expected).cwiseAbs().maxCoeff());
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("volterra: options give the same trajectory")
{
    const FanoModel m = reference_model();
    const PoleSpectral s = pole_residue_from_model(m);
    const Trajectory rec = solve_volterra(s, m.omega_A, 1.0, 4.0, 2e-3);

    VolterraOptions direct;
    direct.direct_history = true;
    CHECK(max_abs_c1_difference(rec, solve_volterra(s, m.omega_A, 1.0, 4.0, 2e-3, direct)) < 1e-12);

    VolterraOptions par;
    par.direct_history = true;
    par.exec = Execution::parallel;
    CHECK(max_abs_c1_difference(rec, solve_volterra(s, m.omega_A, 1.0, 4.0, 2e-3, par)) < 1e-12);

    // plain trapezoid is second order
    VolterraOptions plain;
    plain.richardson = false;
    const double e1 = max_error_vs_closed_form(solve_volterra(s, m.omega_A, 1.0, 4.0, 4e-3, plain), m);
    const double e2 = max_error_vs_closed_form(solve_volterra(s, m.omega_A, 1.0, 4.0, 2e-3, plain), m);
    CHECK(e1 / e2 == Approx(4.0).epsilon(0.05));
}

TEST_CASE("volterra: parameter guards")
{
    const FanoModel m = reference_model();
    const PoleSpectral s = pole_residue_from_model(m);
    CHECK_THROWS_AS(solve_volterra(s, 0.0, 1.0, 1.0, 0.0), ParameterError);
    CHECK_THROWS_AS(solve_volterra(s, 0.0, 1.0, 1.0, 0.5), StepSizeError);
    CHECK_THROWS_AS(solve_volterra(s, 0.0, 1.5, 1.0, 1e-3), InputError);
}

TEST_CASE("amplitudes: norm with the integrated jump probability stays 1")
{
    std::mt19937_64 rng(43);
    for (int i = 0; i < 20; ++i) {
        const FanoModel m = test::random_model(rng);
        const Trajectory tr = solve_amplitudes(embed_from_model(m), 1.0, 20.0, 1e-3);
        double worst = 0.0, previous = 0.0;
        bool monotone = true;
        for (const auto& s : tr.states) {
            worst = std::max(worst, std::abs(s.norm() - 1.0));
            monotone = monotone && s.jump_probability >= previous - 1e-15;
            previous = s.jump_probability;
        }
        CHECK(worst < 1e-10);
        CHECK(monotone);
    }
}

TEST_CASE("jump_rate: explicit quadratic form")
{
    FanoModel m = reference_model();
    const EmbeddedQME q = embed_from_model(m);
    const cplx c1{0.3, 0.1}, b1{-0.2, 0.4};
    const double expected = m.gamma * std::norm(c1) + m.kappa * std::norm(b1)
                          + 2.0 * std::real(m.gamma_F() * b1 * std::conj(c1));
    CHECK(jump_rate(q, c1, b1) == Approx(expected).epsilon(1e-14));
}

TEST_CASE("qme: trace preserved and Markovian atom decay")
{
    FanoModel m;
    m.gamma = 1.0;
    m.omega_A = 2.0;
    const EmbeddedQME q = embed_from_model(m);
    const Trajectory tr = solve_qme(q, DensityMatrix3::from_amplitudes(0.0, 1.0, 0.0), 10.0, 1e-3);
    for (std::size_t n = 0; n < tr.size(); n += 100) {
        CHECK(std::abs(tr.rho[n].trace() - 1.0) < 1e-12);
        CHECK(tr.rho[n](1, 1).real() == Approx(std::exp(-tr.time(n))).epsilon(1e-10));
    }
}

TEST_CASE("qme: lab-frame generator for a coherent superposition")
{
    const FanoModel m = reference_model();
    const EmbeddedQME q = embed_from_model(m);
    const double s = std::sqrt(0.5);
    const DensityMatrix3 rho0 = DensityMatrix3::from_amplitudes(s, s, 0.0);
    // d rho_10/dt = -(i w_A + gamma/2) rho_10 at t = 0 with the cavity empty
    const Eigen::Matrix3cd d = qme_rhs(q, rho0.matrix());
    CHECK(std::abs(d(1, 0) - (-(I * m.omega_A + 0.5 * m.gamma)) * 0.5) < 1e-14);
    CHECK(std::abs(d.trace()) < 1e-15);

    const Trajectory tr = solve_qme(q, rho0, 5.0, 1e-3);
    // |rho_10| follows |c0 c1*| = s |c1(t)| of the amplitude solution
    const Trajectory a = solve_amplitudes(q, s, 5.0, 1e-3);
    for (std::size_t n = 0; n < tr.size(); n += 250)
        CHECK(std::abs(tr.rho[n](1, 0) - a.states[n].c1 * std::conj(a.states[n].c0)) < 1e-10);
}

TEST_CASE("DensityMatrix3 validation")
{
    CHECK_NOTHROW(DensityMatrix3::ground());
    Eigen::Matrix3cd bad = Eigen::Matrix3cd::Zero();
    bad(0, 0) = 0.5;
    CHECK_THROWS_AS(DensityMatrix3{bad}, InputError);
    bad(1, 1) = 0.5;
    CHECK_NOTHROW(DensityMatrix3{bad});
    bad(0, 1) = cplx{0.1, 0.0};
    CHECK_THROWS_AS(DensityMatrix3{bad}, InputError);
    bad(1, 0) = cplx{0.1, 0.0};
    CHECK_NOTHROW(DensityMatrix3{bad});
    bad(0, 1) = bad(1, 0) = cplx{0.6, 0.0};
    CHECK_THROWS_AS(DensityMatrix3{bad}, InputError);
    CHECK(min_eigenvalue(bad) == Approx(-0.1).epsilon(1e-12));
}

TEST_CASE("discretized reservoir: grid, weights and norm")
{
    FanoModel flat;
    flat.gamma = 0.2;
    const PoleSpectral s = pole_residue_from_model(flat);
    const DiscretizedReservoir res = build_discretized(s, 40.0, 1000);
    CHECK(res.omega.size() == 1000);
    CHECK(res.d_omega == Approx(0.08).epsilon(1e-15));
    CHECK(res.omega.front() == Approx(-40.0 + 0.04).epsilon(1e-14));
    double sum = 0.0;
    for (double g : res.g)
        sum += g * g;
    CHECK(sum == Approx(s.J0 * 80.0).epsilon(1e-13));

    const FanoModel m = reference_model();
    const DiscretizedReservoir r2 = build_discretized(pole_residue_from_model(m), 40.0, 2001);
    const Trajectory tr = solve_discretized(r2, m.omega_A, 1.0, 10.0, 1e-3);
    double worst = 0.0;
    for (const auto& st : tr.states)
        worst = std::max(worst, std::abs(st.norm() - 1.0));
    CHECK(worst < 1e-10);

    // serial and parallel loops give the same trajectory
    const Trajectory tp = solve_discretized(r2, m.omega_A, 1.0, 2.0, 5e-3, Execution::parallel);
    const Trajectory ts = solve_discretized(r2, m.omega_A, 1.0, 2.0, 5e-3);
    CHECK(max_abs_c1_difference(tp, ts) < 1e-12);
}

TEST_CASE("discretized reservoir: guards")
{
    const PoleSpectral s = pole_residue_from_model(reference_model());
    CHECK_THROWS_AS(build_discretized(s, 40.0, 50), ParameterError);
    CHECK_THROWS_AS(build_discretized(s, 10.0, 1000), ParameterError);
    const DiscretizedReservoir res = build_discretized(s, 40.0, 1001);
    // pi / d_omega = 39.3
    CHECK_THROWS_AS(solve_discretized(res, 0.0, 1.0, 40.0, 1e-2), RecurrenceError);
    CHECK_NOTHROW(solve_discretized(res, 0.0, 1.0, 39.0, 1e-2));

    FanoModel gain = reference_model();
    gain.eta = 1.5;
    CHECK_THROWS_AS(build_discretized(pole_residue_from_model(gain), 40.0, 1001), SpectralError);
}

TEST_CASE("decay_rate: exact exponential and error cases")
{
    Trajectory tr;
    for (int n = 0; n <= 1000; ++n) {
        AmplitudeState s;
        s.t = 0.1 * n;
        s.c1 = std::exp(cplx{-0.0125, -1.0} * s.t);
        tr.states.push_back(s);
    }
    const DecayFit fit = decay_rate(tr, 10.0, 100.0);
    CHECK(fit.rate == Approx(0.025).epsilon(1e-10));
    CHECK(fit.rms_residual < 1e-10);
    CHECK(fit.monotone);
    CHECK(fit.warning.empty());

    CHECK_THROWS_AS(decay_rate(tr, 50.0, 10.0), InputError);
    CHECK_THROWS_AS(decay_rate(tr, 200.0, 300.0), InputError);
    tr.states[500].c1 = 0.0;
    CHECK_THROWS_AS(decay_rate(tr, 10.0, 100.0), InputError);
}

TEST_CASE("decay_rate: weak coupling reproduces 2 pi J(omega_A)")
{
    FanoModel m;
    m.omega_A = 1.0;
    m.gamma = 0.01;
    m.g_abs = 0.05;
    m.eta = 1.0;
    const PoleSpectral s = pole_residue_from_model(m);
    const Trajectory tr = solve_amplitudes(embed_from_model(m), 1.0, 100.0, 1e-2);
    const double rate = decay_rate(tr, 10.0, 100.0).rate;
    CHECK(test::rel_diff(rate, 2.0 * pi * evaluate_J(s, m.omega_A)) < 0.05);
}
