#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <string>
#include <vector>

#include "qom/fock.hpp"

namespace qom::liou {

using SparseAction = Eigen::SparseMatrix<std::complex<double>>;

struct Term {
    std::string kind;  // "hamiltonian" or "dissipator"
    double rate;       // dissipative rate; 0 for hamiltonian terms
};

// Linear map on column-stacked density matrices. action is D^2 x D^2; every
// assembled generator annihilates the trace functional and maps Hermitian
// matrices to Hermitian matrices (within roundoff).
struct Superoperator {
    int hilbert_dim = 0;
    SparseAction action;
    std::vector<Term> term_log;
};

// rho -> -i[H, rho]. H must be Hermitian within 1e-10.
Superoperator hamiltonian_term(const fock::Operator& H);

// rho -> rate (L rho L^dag - 1/2 {L^dag L, rho}).
Superoperator dissipator(const fock::Operator& L, double rate);

Superoperator add(const Superoperator& s1, const Superoperator& s2);

// Column-stacking: vec(rho)_{i + D j} = rho_{ij}; mutually inverse pair.
Eigen::VectorXcd vectorize(const fock::DensityMatrix& rho);
fock::DensityMatrix devectorize(const Eigen::VectorXcd& v, int dim);

fock::DensityMatrix apply(const Superoperator& s, const fock::DensityMatrix& rho);

// Stationarity residual: max-abs entry of the vectorized derivative.
double residual_max(const Superoperator& s, const fock::DensityMatrix& rho);

// Spectral-norm estimate by power iteration on action^dag action with a
// fixed-seed start vector; deterministic across runs.
double spectral_estimate(const Superoperator& s, int iterations = 15);

// 50 / (slowest positive dissipative rate in the term log). Hamiltonian terms
// carry no relaxation scale; errors when no dissipative rate exists. Note the
// log only knows constituent rates: when the slow scale of a composite model
// is emergent rather than a term rate, pass t_cap explicitly instead.
double default_t_cap(const Superoperator& s);

// Classic fixed-step fourth-order Runge-Kutta on the vectorized state, step
// min(dt_max, 0.1/spectral_estimate). Errors on non-finite values or when the
// trace drifts by more than trace_tol over the run.
fock::DensityMatrix evolve(const Superoperator& s, const fock::DensityMatrix& rho0,
                           double t_final, double dt_max, double trace_tol = 1e-8);

// Stationary state from rho0, honoring initial-condition-dependent attractors:
// the action is restricted to the set reachable from supp(vec rho0) under its
// sparsity pattern (an exact invariant subspace, typically a small fraction of
// D^2), then driven to stationarity by TR-BDF2 (L-stable, second order, both
// stages sharing one sparse LU) with step t_cap/40. Returns the first iterate
// with max|S rho| <= stop_tol, Hermitized and trace-normalized; errors at
// t_cap carrying the last residual. t_cap <= 0 selects default_t_cap(s).
fock::DensityMatrix steady_state(const Superoperator& s, const fock::DensityMatrix& rho0,
                                 double stop_tol = 1e-10, double t_cap = 0.0);

}  // namespace qom::liou
