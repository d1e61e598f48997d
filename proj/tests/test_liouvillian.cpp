#include <doctest.h>

#include <cmath>
#include <complex>

#include "qom/errors.hpp"
#include "qom/fock.hpp"
#include "qom/liouvillian.hpp"
#include "support/oracles.hpp"

using namespace qom;
using Complex = std::complex<double>;

namespace {

// Deterministic pseudo-random Hermitian matrix and density matrix.
fock::Operator test_hermitian(int dim, unsigned seed) {
    fock::Operator m(dim, dim);
    unsigned s = seed;
    auto next = [&s]() {
        s = s * 1664525u + 1013904223u;
        return double(s >> 8) / double(1u << 24) - 0.5;
    };
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m(i, j) = Complex(next(), next());
    return (m + m.adjoint()).eval() / 2.0;
}

fock::DensityMatrix test_density(int dim, unsigned seed) {
    const fock::Operator h = test_hermitian(dim, seed);
    fock::DensityMatrix rho = h * h.adjoint();
    rho /= rho.trace().real();
    return rho;
}

fock::Operator test_general(int dim, unsigned seed) {
    fock::Operator m(dim, dim);
    unsigned s = seed;
    auto next = [&s]() {
        s = s * 1664525u + 1013904223u;
        return double(s >> 8) / double(1u << 24) - 0.5;
    };
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m(i, j) = Complex(next(), next());
    return m;
}

}  // namespace

TEST_CASE("hamiltonian term reproduces the dense commutator") {
    const int dim = 5;
    const auto h = test_hermitian(dim, 7);
    const auto s = liou::hamiltonian_term(h);
    CHECK(s.hilbert_dim == dim);
    CHECK(s.term_log.size() == 1);
    CHECK(s.term_log[0].kind == "hamiltonian");
    const auto rho = test_density(dim, 11);
    const fock::DensityMatrix got = liou::apply(s, rho);
    const fock::DensityMatrix want = Complex(0, -1) * (h * rho - rho * h);
    CHECK((got - want).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("hamiltonian term rejects non-Hermitian input") {
    CHECK_THROWS_AS(liou::hamiltonian_term(fock::annihilation(4)), domain_error);
}

TEST_CASE("dissipator reproduces the dense Lindblad form") {
    const int dim = 5;
    const auto l = test_general(dim, 3);
    const double rate = 0.37;
    const auto s = liou::dissipator(l, rate);
    CHECK(s.term_log.size() == 1);
    CHECK(s.term_log[0].kind == "dissipator");
    CHECK(s.term_log[0].rate == rate);
    const auto rho = test_density(dim, 19);
    const fock::DensityMatrix got = liou::apply(s, rho);
    const fock::Operator ldl = l.adjoint() * l;
    const fock::DensityMatrix want =
        rate * (l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl));
    CHECK((got - want).cwiseAbs().maxCoeff() <= 1e-13);
    CHECK_THROWS_AS(liou::dissipator(l, -0.1), domain_error);
}

TEST_CASE("added generators act additively") {
    const int dim = 4;
    const auto s1 = liou::hamiltonian_term(test_hermitian(dim, 23));
    const auto s2 = liou::dissipator(fock::annihilation(dim), 0.8);
    const auto sum = liou::add(s1, s2);
    CHECK(sum.term_log.size() == 2);
    const auto rho = test_density(dim, 29);
    const fock::DensityMatrix got = liou::apply(sum, rho);
    const fock::DensityMatrix want = liou::apply(s1, rho) + liou::apply(s2, rho);
    CHECK((got - want).cwiseAbs().maxCoeff() <= 1e-14);
    CHECK_THROWS_AS(liou::add(s1, liou::dissipator(fock::annihilation(5), 1.0)), domain_error);
}

TEST_CASE("generators annihilate the trace and preserve Hermiticity") {
    const int dim = 6;
    auto s = liou::hamiltonian_term(test_hermitian(dim, 31));
    s = liou::add(s, liou::dissipator(test_general(dim, 37), 1.3));
    s = liou::add(s, liou::dissipator(fock::creation(dim), 0.21));
    for (unsigned seed : {41u, 43u}) {
        const auto rho = test_density(dim, seed);
        const fock::DensityMatrix img = liou::apply(s, rho);
        CHECK(std::abs(img.trace()) <= 1e-13);
        CHECK((img - img.adjoint()).cwiseAbs().maxCoeff() <= 1e-13);
    }
}

TEST_CASE("vectorize stacks columns and devectorize inverts it") {
    const int dim = 3;
    const auto rho = test_density(dim, 47);
    const auto v = liou::vectorize(rho);
    REQUIRE(v.size() == dim * dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) CHECK(v(i + dim * j) == rho(i, j));
    CHECK((liou::devectorize(v, dim) - rho).cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(liou::devectorize(v, 4), domain_error);
}

TEST_CASE("fixed-step integrator matches the dense matrix exponential") {
    const int dim = 4;
    const auto a = fock::annihilation(dim);
    fock::Operator h = fock::number_operator(dim) + 0.3 * (a + fock::dagger(a));
    auto s = liou::hamiltonian_term(h);
    s = liou::add(s, liou::dissipator(a, 1.0));

    const auto rho0 = fock::ket_density(fock::basis_ket(dim, 1));
    const double t = 2.0;
    const fock::DensityMatrix got = liou::evolve(s, rho0, t, 0.002);
    const fock::DensityMatrix want = testsupport::expm_evolve(s, rho0, t);
    CHECK((got - want).cwiseAbs().maxCoeff() <= 1e-7);
    CHECK(got.trace().real() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("integrator guards") {
    const auto s = liou::dissipator(fock::annihilation(3), 1.0);
    const auto rho0 = fock::ket_density(fock::basis_ket(3, 1));
    CHECK_THROWS_AS(liou::evolve(s, rho0, -1.0, 0.01), domain_error);
    CHECK_THROWS_AS(liou::evolve(s, rho0, 1.0, 0.0), domain_error);
    CHECK_THROWS_AS(liou::evolve(s, fock::ket_density(fock::basis_ket(4, 0)), 1.0, 0.01),
                    domain_error);
}

TEST_CASE("stationary state matches the dense null-space solution") {
    // Driven damped mode: unique attractor, so reachability cannot bias it.
    const int dim = 14;
    const auto a = fock::annihilation(dim);
    fock::Operator h = 0.4 * (a + fock::dagger(a));
    auto s = liou::add(liou::hamiltonian_term(h), liou::dissipator(a, 1.0));

    // t_cap 200 over the fixed 40 steps: larger steps contract the slow
    // drive-and-decay modes harder (L-stable damping grows with the step).
    const auto got =
        liou::steady_state(s, fock::ket_density(fock::basis_ket(dim, 0)), 1e-12, 200.0);
    const auto want = testsupport::null_space_steady(s);
    CHECK((got - want).cwiseAbs().maxCoeff() <= 1e-8);
    CHECK(liou::residual_max(s, got) <= 1e-12);
    CHECK(got.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("stationary state honors initial-condition-dependent attractors") {
    // Two-quantum loss conserves parity: even initial states drain to the
    // ground state, odd ones to the first excited state.
    const int dim = 9;
    const auto b = fock::annihilation(dim);
    const auto s = liou::dissipator(fock::matmul(b, b), 1.0);
    const auto from_even =
        liou::steady_state(s, fock::ket_density(fock::basis_ket(dim, 2)), 1e-12);
    CHECK(std::abs(from_even(0, 0).real() - 1.0) <= 1e-10);
    const auto from_odd =
        liou::steady_state(s, fock::ket_density(fock::basis_ket(dim, 3)), 1e-12);
    CHECK(std::abs(from_odd(1, 1).real() - 1.0) <= 1e-10);
}

TEST_CASE("stationary input returns unchanged") {
    const int dim = 6;
    const auto s = liou::dissipator(fock::annihilation(dim), 0.7);
    const auto vac = fock::ket_density(fock::basis_ket(dim, 0));
    const auto got = liou::steady_state(s, vac, 1e-12);
    CHECK((got - vac).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("stationarity failure carries the last residual") {
    const int dim = 8;
    const auto a = fock::annihilation(dim);
    auto s = liou::add(liou::hamiltonian_term(0.4 * (a + fock::dagger(a)).eval()),
                       liou::dissipator(a, 1.0));
    const auto rho0 = fock::ket_density(fock::basis_ket(dim, 2));
    try {
        liou::steady_state(s, rho0, 1e-14, 0.001);
        FAIL("expected a convergence failure");
    } catch (const convergence_error& e) {
        CHECK(e.residual > 1e-14);
    }
}

TEST_CASE("relaxation horizon follows the slowest dissipative rate") {
    const int dim = 4;
    const auto a = fock::annihilation(dim);
    auto s = liou::add(liou::dissipator(a, 0.25), liou::dissipator(fock::matmul(a, a), 2.0));
    CHECK(liou::default_t_cap(s) == doctest::Approx(200.0).epsilon(1e-12));
    CHECK_THROWS_AS(liou::default_t_cap(liou::hamiltonian_term(fock::number_operator(dim))),
                    domain_error);
    CHECK_THROWS_AS(liou::default_t_cap(liou::dissipator(a, 0.0)), domain_error);
}

TEST_CASE("spectral estimate is deterministic and bounded by the dense norm") {
    const int dim = 4;
    auto s = liou::add(liou::hamiltonian_term(test_hermitian(dim, 53)),
                       liou::dissipator(fock::annihilation(dim), 0.9));
    const double e1 = liou::spectral_estimate(s);
    const double e2 = liou::spectral_estimate(s);
    CHECK(e1 == e2);
    const Eigen::MatrixXcd dense(s.action);
    const double true_norm = dense.jacobiSvd().singularValues()(0);
    CHECK(e1 <= true_norm * (1.0 + 1e-9));
    CHECK(e1 >= 0.3 * true_norm);
}
