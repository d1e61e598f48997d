#pragma once

#include <Eigen/Dense>
#include <complex>

#include "qom/fock.hpp"

namespace qom::obs {

// Hermitian components of b^2 at phase convention theta:
//   Y1 = (b^2 e^{-i theta/2} + b^dag^2 e^{+i theta/2}) / 2
//   Y2 = (b^2 e^{-i theta/2} - b^dag^2 e^{+i theta/2}) / (2i)
// [Y1, Y2] = i(2 n + 1) away from the top two truncation levels.
struct YPair {
    fock::Operator y1;
    fock::Operator y2;
    double theta;
};

YPair y_pair(int dim, double theta);

std::complex<double> expect(const fock::Operator& a, const fock::DensityMatrix& rho);
std::complex<double> expect_ket(const fock::Operator& a, const fock::Ket& psi);

// <A^2> - <A>^2 for Hermitian A. The state's top two Fock levels must carry
// less than 1e-8 population: A couples n to n +- 2, so any edge artifact is
// then below reporting tolerance.
double variance(const fock::Operator& a, const fock::DensityMatrix& rho);
double variance_ket(const fock::Operator& a, const fock::Ket& psi);

// <psi|rho|psi>, clipped to [0, 1].
double fidelity_ket(const fock::Ket& psi, const fock::DensityMatrix& rho);

enum class Mode { cavity, mech };

// Partial trace over one factor of a cavity (x) mech product space with the
// index convention |n_cavity, n_mech> at n_cavity*dim_mech + n_mech.
fock::DensityMatrix partial_trace(const fock::DensityMatrix& rho, int dim_cavity, int dim_mech,
                                  Mode keep);

Eigen::VectorXd populations(const fock::DensityMatrix& rho);
double purity(const fock::DensityMatrix& rho);

// <b^dag^2 b^2> / <b^dag b>^2 from the number-basis diagonal.
double g2_from_state(const fock::DensityMatrix& rho);

}  // namespace qom::obs
