#include <doctest.h>

#include <random>
#include <vector>

#include "fanomode/errors.hpp"
#include "fanomode/fanodiag.hpp"
#include "test_support.hpp"

using namespace fanomode;
using doctest::Approx;

namespace {

std::vector<double> grid(double center, double half_width, int n)
{
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i)
        w[i] = center - half_width + 2.0 * half_width * i / (n - 1);
    return w;
}

} // namespace

TEST_CASE("fano_alpha: Lorentzian weight of the cavity")
{
    FanoModel m = test::fano_q2_model();
    m.omega_C = 1.0;
    m.theta_C = 0.3;
    // |alpha|^2 = (kappa/2pi) / ((w - w_C)^2 + kappa^2/4)
    for (double w : {-3.0, 0.5, 1.0, 4.0}) {
        const double x = w - 1.0;
        CHECK(std::norm(fano_alpha(m, w)) == Approx(1.0 / (2.0 * pi) / (x * x + 0.25)).epsilon(1e-14));
    }
    // total weight of the cavity over all eigenmodes is 1: int |alpha|^2 dw
    double sum = 0.0;
    const double dw = 1e-3;
    for (int k = -2000000; k <= 2000000; ++k)
        sum += std::norm(fano_alpha(m, 1.0 + k * dw)) * dw;
    CHECK(sum == Approx(1.0).epsilon(2e-4));
    // psi only rotates the phase
    CHECK(std::abs(fano_alpha(m, 0.2, 0.9) - fano_alpha(m, 0.2) * std::polar(1.0, 0.9)) < 1e-15);
}

TEST_CASE("fano_beta: coefficients")
{
    FanoModel m = test::fano_q2_model();
    const BetaCoefficients b = fano_beta(m, 0.5, 0.0);
    const cplx den{0.5, -0.5};
    CHECK(std::abs(b.pv_coefficient - (1.0 / (2.0 * pi)) / den) < 1e-15);
    CHECK(std::abs(b.delta_coefficient - 0.5 / den) < 1e-15);
}

TEST_CASE("Lambda: closed form equals the mode construction")
{
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> u(-20.0, 20.0);
    for (int i = 0; i < 200; ++i) {
        const FanoModel m = test::random_model(rng);
        const double w = u(rng), psi = 0.1 * u(rng);
        const cplx a = fano_lambda(m, w, psi), b = fano_lambda_from_modes(m, w, psi);
        CHECK(std::abs(a - b) < 1e-14 * (std::abs(a) + 1.0));
    }
}

TEST_CASE("2 pi |Lambda|^2 reproduces the eta = 1 spectral function")
{
    std::mt19937_64 rng(53);
    for (int i = 0; i < 100; ++i) {
        FanoModel m = test::random_model(rng);
        m.eta = 1.0;
        const PoleSpectral s = pole_residue_from_model(m);
        for (double w : grid(m.omega_C, 20.0, 401)) {
            const double lhs = 2.0 * pi * std::norm(fano_lambda(m, w, 0.3));
            const double rhs = test::two_pi_J_closed_form(m, w);
            CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(rhs, m.gamma));
            CHECK(std::abs(2.0 * pi * evaluate_J(s, w) - rhs) < 1e-12 * std::max(rhs, m.gamma));
        }
        CHECK(verify_lambda_identity(m, grid(m.omega_C, 20.0, 4001), 0.3) < 1e-12);
    }
}

TEST_CASE("verify_lambda_identity: eta != 1 is rejected")
{
    FanoModel m = test::fano_q2_model();
    m.eta = 0.5;
    const auto w = grid(0.0, 5.0, 11);
    CHECK_THROWS_AS(verify_lambda_identity(m, w), UnsupportedRegimeError);
}
