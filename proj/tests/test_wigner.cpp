#include <doctest.h>

#include <cmath>
#include <complex>

#include "qom/errors.hpp"
#include "qom/fock.hpp"
#include "qom/oracle.hpp"
#include "qom/wigner.hpp"
#include "support/oracles.hpp"

using namespace qom;
using Complex = std::complex<double>;

namespace {
constexpr double kPi = 3.14159265358979323846;

fock::DensityMatrix low_lying_mixture(int dim) {
    // Hermitian, visibly non-Gaussian, empty top levels.
    fock::DensityMatrix rho = fock::DensityMatrix::Zero(dim, dim);
    rho(0, 0) = 0.55;
    rho(1, 1) = 0.25;
    rho(3, 3) = 0.2;
    rho(0, 2) = Complex(0.08, 0.03);
    rho(2, 0) = std::conj(rho(0, 2));
    rho(1, 3) = Complex(-0.05, 0.06);
    rho(3, 1) = std::conj(rho(1, 3));
    return rho;
}
}  // namespace

TEST_CASE("vacuum grid matches the exact Gaussian everywhere") {
    const auto rho = fock::ket_density(fock::basis_ket(8, 0));
    const auto grid = wigner::wigner_grid(rho, 4.0, 81);
    double dev = 0.0;
    for (int i = 0; i < 81; ++i)
        for (int j = 0; j < 81; ++j) {
            const double x = grid.xs(i), p = grid.ps(j);
            dev = std::max(dev,
                           std::abs(grid.values(i, j) - std::exp(-x * x - p * p) / kPi));
        }
    CHECK(dev <= 1e-10);
}

TEST_CASE("kernel evaluation matches the integral-transform reference") {
    const auto rho = low_lying_mixture(10);
    for (auto [x, p] : {std::pair<double, double>{0.0, 0.0},
                        {0.7, -0.4},
                        {1.5, 2.2},
                        {-2.0, -1.0}}) {
        CHECK(wigner::wigner_point(rho, x, p) ==
              doctest::Approx(testsupport::wigner_reference(rho, x, p)).epsilon(1e-6));
    }
}

TEST_CASE("first excited state dips to its exact minimum at the origin") {
    const auto rho = fock::ket_density(fock::basis_ket(6, 1));
    CHECK(wigner::wigner_point(rho, 0.0, 0.0) == doctest::Approx(-1.0 / kPi).epsilon(1e-12));
    const auto grid = wigner::wigner_grid(rho, 3.0, 61);
    const auto neg = wigner::negativity(grid);
    CHECK(neg.min_value == doctest::Approx(-1.0 / kPi).epsilon(1e-12));
    CHECK(neg.negative_volume > 0.05);
}

TEST_CASE("vacuum has no negative volume") {
    const auto grid = wigner::wigner_grid(fock::ket_density(fock::basis_ket(6, 0)), 4.0, 41);
    const auto neg = wigner::negativity(grid);
    CHECK(neg.min_value >= -1e-15);
    CHECK(neg.negative_volume <= 1e-13);
}

TEST_CASE("grid values agree with pointwise evaluation") {
    const auto psi = oracle::steady_ket(43, 0.25, 0.0, 1e-6);
    const auto rho = fock::ket_density(psi);
    const auto grid = wigner::wigner_grid(rho, 4.0, 21);
    for (int i : {0, 7, 10, 20})
        for (int j : {0, 3, 10, 17})
            CHECK(grid.values(i, j) ==
                  doctest::Approx(wigner::wigner_point(rho, grid.xs(i), grid.ps(j)))
                      .epsilon(1e-13));
}

TEST_CASE("wide-radius and large-dimension evaluations stay consistent") {
    // Vacuum embedded at dim 170 forces the rescaled evaluation everywhere;
    // the exact Gaussian still has to come out, including far out on the grid
    // where the direct recurrence would overflow.
    const auto rho = fock::ket_density(fock::basis_ket(170, 0));
    for (auto [x, p] : {std::pair<double, double>{0.0, 0.0}, {2.0, 1.0}, {9.0, -7.0}, {13.0, 13.0}}) {
        CHECK(wigner::wigner_point(rho, x, p) ==
              doctest::Approx(std::exp(-x * x - p * p) / kPi)
                  .epsilon(1e-10)
                  .scale(1.0));
    }
    // A structured state evaluated on both sides of the dispatch boundary.
    const auto small = low_lying_mixture(12);
    fock::DensityMatrix big = fock::DensityMatrix::Zero(170, 170);
    big.topLeftCorner(12, 12) = small;
    for (auto [x, p] : {std::pair<double, double>{0.3, -1.1}, {2.5, 2.5}}) {
        CHECK(wigner::wigner_point(big, x, p) ==
              doctest::Approx(wigner::wigner_point(small, x, p)).epsilon(1e-10));
    }
}

TEST_CASE("riemann mass on the default window is close to one") {
    const double r = 0.75;
    const auto psi = oracle::steady_ket(115, r, 0.0, 1e-6);
    const auto grid = wigner::wigner_grid(fock::ket_density(psi),
                                          wigner::default_x_max(oracle::mean_phonon(r)), 161);
    CHECK(std::abs(grid.values.sum() * grid.cell_area - 1.0) <= 5e-3);
}

TEST_CASE("stationary-family states are exactly fourfold symmetric on the lattice") {
    const auto psi = oracle::steady_ket(71, 0.5, 0.0, 1e-6);
    const auto grid = wigner::wigner_grid(fock::ket_density(psi), 4.0, 41);
    CHECK(wigner::fourfold_defect(grid) <= 1e-12);
}

TEST_CASE("squeezed vacuum is only twofold symmetric") {
    const auto ket = fock::squeezed_vacuum_ket(64, 0.5, 0.0);
    const auto grid = wigner::wigner_grid(fock::ket_density(ket), 4.0, 41);
    CHECK(wigner::fourfold_defect(grid) > 1e-3);
}

TEST_CASE("marginal over momentum reproduces the position density") {
    const double r = 0.5;
    const auto psi = oracle::steady_ket(71, r, 0.0, 1e-6);
    const auto grid = wigner::wigner_grid(fock::ket_density(psi), 6.0, 241);
    const double h = grid.xs(1) - grid.xs(0);
    for (int i : {120, 136, 160, 188}) {  // x = 0, 0.8, 2.0, 3.4
        double mass = 0.0;
        for (int j = 0; j < grid.ps.size(); ++j) mass += grid.values(i, j) * h;
        CHECK(mass == doctest::Approx(testsupport::position_density(psi, grid.xs(i)))
                          .epsilon(1e-6)
                          .scale(1.0));
    }
}

TEST_CASE("grid construction guards") {
    const auto rho = fock::ket_density(fock::basis_ket(6, 0));
    CHECK_THROWS_AS(wigner::wigner_grid(rho, 4.0, 80), domain_error);   // even
    CHECK_THROWS_AS(wigner::wigner_grid(rho, 4.0, 1), domain_error);    // too few
    CHECK_THROWS_AS(wigner::wigner_grid(rho, -1.0, 41), domain_error);  // bad window
    CHECK_THROWS_AS(wigner::wigner_point(fock::ket_density(fock::basis_ket(6, 5)), 0.0, 0.0),
                    domain_error);  // top-level population
    fock::DensityMatrix bad = fock::DensityMatrix::Zero(4, 4);
    bad(0, 1) = 1.0;  // not Hermitian
    CHECK_THROWS_AS(wigner::wigner_point(bad, 0.0, 0.0), domain_error);
}

TEST_CASE("symmetry defect requires the symmetric lattice") {
    const auto rho = fock::ket_density(fock::basis_ket(6, 0));
    auto grid = wigner::wigner_grid(rho, 3.0, 21);
    grid.ps(0) += 1e-6;
    CHECK_THROWS_AS(wigner::fourfold_defect(grid), domain_error);
}

TEST_CASE("default window covers the state with margin") {
    CHECK(wigner::default_x_max(0.0) == 3.0);
    CHECK(wigner::default_x_max(1.0) >= wigner::default_x_max(0.0));
    CHECK(wigner::default_x_max(4.0) == 9.0);
    CHECK_THROWS_AS(wigner::default_x_max(-0.5), domain_error);
}
