#include <doctest.h>

#include <random>

#include "fanomode/embedding.hpp"
#include "fanomode/errors.hpp"
#include "test_support.hpp"

using namespace fanomode;
using doctest::Approx;

TEST_CASE("embed_from_model reproduces the pole spectrum")
{
    std::mt19937_64 rng(23);
    for (int i = 0; i < 300; ++i) {
        FanoModel m = test::random_model(rng);
        m.omega_C = 0.1 * (i % 7);
        const PoleSpectral s = pole_residue_from_model(m);
        const PoleSpectral back = spectral_from_qme(embed_from_model(m));
        CHECK(back.J0 == Approx(s.J0).epsilon(1e-14));
        CHECK(std::abs(back.z1 - s.z1) < 1e-15);
        CHECK(std::abs(back.r1 - s.r1) < 1e-14 * (std::abs(s.r1) + 1e-3));
    }
}

TEST_CASE("embed: factorization of 2 pi i r1")
{
    FanoModel m = test::fano_q2_model();
    m.phi = 0.3;
    m.theta_A = 1.1;
    const PoleSpectral s = pole_residue_from_model(m);
    const EmbeddedQME q = embed(s, 0.0, m.g(), 0.5 * m.gamma_F());
    CHECK(std::abs(-q.g_tilde_minus() * std::conj(q.g_tilde_plus()) - 2.0 * pi * I * s.r1) < 1e-15);
    CHECK(q.gamma == Approx(0.25).epsilon(1e-15));
    CHECK(q.kappa == Approx(1.0).epsilon(1e-15));

    // a different factorization of the same residue is also accepted:
    // mu -> mu e^{ia}, nu -> nu e^{ia} leaves -g~- conj(g~+) unchanged
    const cplx ph = std::polar(1.0, 0.7);
    CHECK_NOTHROW(embed(s, 0.0, m.g() * ph, 0.5 * m.gamma_F() * ph));

    CHECK_THROWS_AS(embed(s, 0.0, m.g() * 1.01, 0.5 * m.gamma_F()), InconsistencyError);
    try {
        embed(s, 0.0, 2.0 * m.g(), 0.5 * m.gamma_F());
    } catch (const InconsistencyError& e) {
        CHECK(e.residual > 0.1);
    }
}

TEST_CASE("Kossakowski matrix and its spectrum")
{
    FanoModel m = test::fano_q2_model();
    m.eta = 0.36;
    const EmbeddedQME q = embed_from_model(m);
    const KossakowskiMatrix G = kossakowski(q);
    CHECK(G(0, 0).real() == Approx(0.25));
    CHECK(G(1, 1).real() == Approx(1.0));
    CHECK(std::abs(G(1, 0)) == Approx(0.3).epsilon(1e-14));
    CHECK(std::abs(G(0, 1) - std::conj(G(1, 0))) == 0.0);

    const LindbladReport r = is_lindblad(q);
    CHECK(r.lindblad);
    CHECK(r.det == Approx(0.25 * 0.64).epsilon(1e-14));
    CHECK(r.trace == Approx(1.25).epsilon(1e-15));
    // eigenvalues (T -+ sqrt(T^2 - 4 det)) / 2
    const double disc = std::sqrt(1.25 * 1.25 - 4.0 * 0.16);
    CHECK(r.eigenvalues(0) == Approx(0.5 * (1.25 - disc)).epsilon(1e-13));
    CHECK(r.eigenvalues(1) == Approx(0.5 * (1.25 + disc)).epsilon(1e-13));
    CHECK(r.scalar_condition == Approx(0.25 * 0.64 / 4.0).epsilon(1e-13));
}

TEST_CASE("is_lindblad: valid exactly for 0 <= eta <= 1")
{
    std::mt19937_64 rng(29);
    for (int i = 0; i < 300; ++i) {
        FanoModel m = test::random_model(rng);
        CHECK(is_lindblad(embed_from_model(m)).lindblad);
        m.eta = 1.0;
        const LindbladReport edge = is_lindblad(embed_from_model(m));
        CHECK(edge.lindblad);
        CHECK(std::abs(edge.eigenvalues(0)) < 1e-12 * edge.trace);
        m.eta = 1.0 + 0.01 + 0.5 * (i % 5);
        CHECK_FALSE(is_lindblad(embed_from_model(m)).lindblad);
    }
}

TEST_CASE("repair threshold: Gamma becomes PSD once J0 reaches |nu|^2 / (pi kappa/2)")
{
    FanoModel m;
    m.gamma = 0.25;
    m.kappa = 1.0;
    m.eta = 1.2;
    EmbeddedQME q = embed_from_model(m);
    const LindbladReport r = is_lindblad(q);
    CHECK_FALSE(r.lindblad);
    // |nu|^2 = eta gamma kappa / 4
    const double J0_star = (1.2 * 0.25 / 4.0) / (pi * 0.5);
    CHECK(r.repair_threshold_J0 == Approx(J0_star).epsilon(1e-14));
    CHECK(lindblad_repair_threshold(q) == Approx(J0_star).epsilon(1e-14));

    q.gamma = 2.0 * pi * J0_star * (1.0 + 1e-9);
    CHECK(is_lindblad(q).lindblad);
    q.gamma = 2.0 * pi * J0_star * (1.0 - 1e-6);
    CHECK_FALSE(is_lindblad(q).lindblad);
}
