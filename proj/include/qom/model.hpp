#pragma once

#include <complex>

#include "qom/fock.hpp"
#include "qom/liouvillian.hpp"

namespace qom::model {

// Squeezed-reservoir coefficients, ideal-reservoir branch mu^2 - |nu|^2 = 1.
struct SqueezeCoeffs {
    double r = 0.0;
    double theta = 0.0;
    double mu = 1.0;
    std::complex<double> nu = 0.0;
};

SqueezeCoeffs squeeze_coeffs(double r, double theta);

// All rates in units of the cavity decay (kappa = 1 conventionally) for the
// two-mode model; the single-mode effective model runs in scaled time (the
// mechanical decay sets the unit) unless built with an override rate.
struct ModelParams {
    SqueezeCoeffs squeeze;
    double g2 = 0.05;
    double kappa = 1.0;
    double gamma = 0.0;
    double n_th = 0.0;
    int dim_cavity = 0;
    int dim_mech = 0;
    bool include_mech_bath = false;
};

struct LinearizedParams {
    double g2;             // g0 * sqrt(n_c)
    double omega_m_prime;  // omega_m + 2 g0 n_c
    double delta_c;        // -2 omega_m_prime
};

// Parameter map from the quadratic single-photon coupling and the intracavity
// photon number; requires n_c >= 1 for the linearization to make sense.
LinearizedParams linearize(double g0_quadratic, double n_c, double omega_m);

// J = mu b^2 + nu b^dag^2; its dark states are the stationary states.
fock::Operator jump_operator(int dim, const SqueezeCoeffs& sq);

// beta = mu b + nu b^dag; its vacuum is the ordinary squeezed vacuum.
fock::Operator bogoliubov_operator(int dim, const SqueezeCoeffs& sq);

// Two-mode generator: -i g2 [a^dag b^2 + b^dag^2 a, .], cavity coupled to the
// squeezed reservoir through i mu a - i nu a^dag at rate kappa, plus the
// optional mechanical bath.
liou::Superoperator full_generator(const ModelParams& p);

// Single-mode generator in scaled time: C2 D[J] with C2 = 4 g2^2/(kappa gamma),
// plus the bath terms (n_th+1) D[b] and n_th D[b dag] when enabled. When
// gamma = 0 the scaled time is meaningless: the caller must then pass the
// physical rate for D[J] explicitly (4 g2^2/kappa in unscaled time) and the
// bath must stay off.
liou::Superoperator effective_generator(const ModelParams& p, double override_rate = 0.0);

// Advisory parameter-regime report; never fails.
struct RegimeReport {
    double decoherence_ratio;  // C2 |nu|^2 / n_th, inf when n_th or gamma vanishes
    bool decoherence_ok;       // >= 10
    double kappa_over_g2;      // inf when g2 = 0
    bool weak_coupling_ok;     // >= 10
    double kappa_over_gamma;   // inf when gamma = 0
    bool cavity_fast_ok;       // >= 100
};

RegimeReport regime_check(const ModelParams& p);

// Default truncations. The cavity rule tracks the squeezed-state occupation;
// the mechanical rule takes the occupation-based floor and then grows until
// the last retained family member of the stationary ket carries less than
// 1e-10 population, so stationary-state tail checks pass by construction.
int default_dim_cavity(double r);
int default_dim_mech(double r);

}  // namespace qom::model
