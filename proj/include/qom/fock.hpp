#pragma once

#include <Eigen/Dense>
#include <complex>

namespace qom::fock {

using Complex = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using Ket = Eigen::VectorXcd;
using DensityMatrix = Eigen::MatrixXcd;

// Ladder operator on the truncated space: entry (n-1, n) = sqrt(n). The
// truncation shows up in the commutator: [a, a^dag] is the identity on
// |0>..|dim-2> but carries -(dim-1) in the last diagonal entry, so anything
// leaning on the canonical commutator must keep the top levels unpopulated.
Operator annihilation(int dim);
Operator creation(int dim);
Operator number_operator(int dim);
Operator identity(int dim);

// Kronecker product. Mode ordering: |n_a, n_b> lives at index n_a*dim_b + n_b,
// so kron(A, B) acts as A on the first mode and B on the second.
Operator kron(const Operator& a, const Operator& b);

Operator dagger(const Operator& a);
Operator matmul(const Operator& a, const Operator& b);
Operator commutator(const Operator& a, const Operator& b);

// Plain matrix-vector product; the result is not renormalized.
Ket apply(const Operator& op, const Ket& psi);

Ket basis_ket(int dim, int n);
DensityMatrix ket_density(const Ket& psi);

// Squeezed vacuum on the truncated space via the even-ladder recursion
// c_{n+2} = -(nu/mu) sqrt((n+1)/(n+2)) c_n, renormalized over the retained
// levels. The last two amplitudes must stay below tail_tol in magnitude;
// otherwise the truncation cannot hold the state and construction fails
// rather than silently clipping. Callers comparing against deliberately
// truncated references may loosen tail_tol.
Ket squeezed_vacuum_ket(int dim, double r, double theta, double tail_tol = 1e-8);

}  // namespace qom::fock
