#pragma once

#include <Eigen/Dense>

#include "qom/fock.hpp"

namespace qom::oracle {

// Rising factorial (a)_m = a(a+1)...(a+m-1), (a)_0 = 1.
double pochhammer(double a, int m);

// Gauss hypergeometric series sum_m (a)_m (b)_m / ((c)_m m!) z^m, summed
// directly with compensated accumulation until the relative term falls below
// 1e-16. Valid for 0 <= z < 1 only; no analytic continuation.
double hyp2f1(double a, double b, double c, double z);

// Stationary ket of the engineered two-phonon dissipation from ground-state
// initialization: support on |4m> only, with
//   c_{4m} ~ sqrt[(1/2)_m (1/4)_m / ((3/4)_m m!)] (-nu/mu)^m,
// renormalized over the retained levels. Generated both from that closed form
// and from the four-step recursion c_n = -sqrt((n-2)(n-3)/(n(n-1)))(nu/mu)c_{n-4};
// the two paths must agree to 1e-12 per amplitude. The last retained family
// member must carry population < tail_tol, else the truncation is too tight
// and construction fails. Callers comparing against deliberately truncated
// references may loosen tail_tol.
fock::Ket steady_ket(int dim, double r, double theta, double tail_tol = 1e-10);

// Phonon-number distribution of the stationary state, indexed by phonon
// number n; entries off the n = 4m family are exactly zero. Normalized by the
// full hypergeometric sum, so the vector undershoots 1 by the (checked) tail.
struct PhononDistribution {
    Eigen::VectorXd probabilities;  // size 4*max_m + 1
    double r = 0.0;
    double theta = 0.0;
};

PhononDistribution phonon_distribution(double r, double theta, int max_m);

// Smallest max_m whose omitted tail (geometric bound from the term ratio)
// stays below tail_tol.
int family_cutoff(double r, double tail_tol = 1e-10);

// Closed-form mean phonon number (2|nu|^2 / 3 mu^2) 2F1(3/2,5/4;7/4;z) / 2F1(1/2,1/4;3/4;z).
double mean_phonon(double r);

// g2(0) = <n(n-1)> / <n>^2 summed over the distribution. Undefined at r = 0.
double g2_zero(double r);

// Klyshko figure of merit K_n = (n+1) P_{n-1} P_{n+1} / (n P_n^2).
// Undefined (error) when P_n = 0; never returns infinity silently.
double klyshko(const PhononDistribution& dist, int n);

struct YVariances {
    double dy1;    // e^{-r} sqrt(n_bar + 1/2)
    double dy2;    // e^{+r} sqrt(n_bar + 1/2)
    double bound;  // n_bar + 1/2
};

YVariances y_variances(double r);

// The series machinery is validated for r <= 3 (z = tanh^2 r <= 0.99); beyond
// that construction refuses. Convergence slows noticeably above r = 2.
inline constexpr double max_squeeze = 3.0;

}  // namespace qom::oracle
