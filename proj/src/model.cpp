#include "qom/model.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qom/errors.hpp"
#include "qom/oracle.hpp"

namespace qom::model {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_common(const ModelParams& p, const char* who) {
    require(p.kappa > 0.0, std::string(who) + ": kappa must be > 0");
    require(p.gamma >= 0.0, std::string(who) + ": gamma must be >= 0");
    require(p.g2 >= 0.0, std::string(who) + ": g2 must be >= 0");
    require(p.n_th >= 0.0, std::string(who) + ": n_th must be >= 0");
}

}  // namespace

SqueezeCoeffs squeeze_coeffs(double r, double theta) {
    require(r >= 0.0, "squeeze_coeffs: r must be >= 0");
    SqueezeCoeffs sq;
    sq.r = r;
    sq.theta = theta;
    sq.mu = std::cosh(r);
    sq.nu = std::polar(std::sinh(r), theta);
    check_internal(std::abs(sq.mu * sq.mu - std::norm(sq.nu) - 1.0) <=
                       1e-12 * std::max(1.0, sq.mu * sq.mu),
                   "squeeze_coeffs: ideal-reservoir identity violated");
    return sq;
}

LinearizedParams linearize(double g0_quadratic, double n_c, double omega_m) {
    require(n_c >= 1.0, "linearize: n_c must be >= 1");
    LinearizedParams lp;
    lp.g2 = g0_quadratic * std::sqrt(n_c);
    lp.omega_m_prime = omega_m + 2.0 * g0_quadratic * n_c;
    lp.delta_c = -2.0 * lp.omega_m_prime;
    return lp;
}

fock::Operator jump_operator(int dim, const SqueezeCoeffs& sq) {
    require(dim >= 5, "jump_operator: dim must be >= 5");
    const fock::Operator b = fock::annihilation(dim);
    const fock::Operator b2 = b * b;
    return sq.mu * b2 + sq.nu * b2.adjoint();
}

fock::Operator bogoliubov_operator(int dim, const SqueezeCoeffs& sq) {
    require(dim >= 3, "bogoliubov_operator: dim must be >= 3");
    const fock::Operator b = fock::annihilation(dim);
    return sq.mu * b + sq.nu * b.adjoint();
}

liou::Superoperator full_generator(const ModelParams& p) {
    require_common(p, "full_generator");
    require(p.dim_cavity >= 8 && p.dim_mech >= 12,
            "full_generator: dims must be at least (8, 12)");
    require(long(p.dim_cavity) * p.dim_mech <= 4096,
            "full_generator: dim_cavity*dim_mech above 4096; the superoperator would not fit");

    const std::complex<double> i(0.0, 1.0);
    const fock::Operator a = fock::kron(fock::annihilation(p.dim_cavity),
                                        fock::identity(p.dim_mech));
    const fock::Operator b = fock::kron(fock::identity(p.dim_cavity),
                                        fock::annihilation(p.dim_mech));
    const fock::Operator b2 = b * b;

    const fock::Operator H = p.g2 * (a.adjoint() * b2 + b2.adjoint() * a);
    liou::Superoperator s = liou::hamiltonian_term(H);
    s = liou::add(s, liou::dissipator(i * p.squeeze.mu * a - i * p.squeeze.nu * a.adjoint(),
                                      p.kappa));
    if (p.include_mech_bath && p.gamma > 0.0) {
        s = liou::add(s, liou::dissipator(b, p.gamma * (p.n_th + 1.0)));
        s = liou::add(s, liou::dissipator(b.adjoint(), p.gamma * p.n_th));
    }
    return s;
}

liou::Superoperator effective_generator(const ModelParams& p, double override_rate) {
    require_common(p, "effective_generator");
    require(p.dim_mech >= 12, "effective_generator: dim_mech must be >= 12");
    const fock::Operator J = jump_operator(p.dim_mech, p.squeeze);

    if (p.gamma == 0.0) {
        require(override_rate > 0.0,
                "effective_generator: gamma = 0 leaves the scaled time undefined; pass the "
                "physical jump rate explicitly");
        require(!p.include_mech_bath,
                "effective_generator: bath terms need gamma > 0");
        return liou::dissipator(J, override_rate);
    }

    require(override_rate == 0.0,
            "effective_generator: override rate conflicts with gamma > 0");
    const double c2 = 4.0 * p.g2 * p.g2 / (p.kappa * p.gamma);
    liou::Superoperator s = liou::dissipator(J, c2);
    if (p.include_mech_bath) {
        const fock::Operator b = fock::annihilation(p.dim_mech);
        s = liou::add(s, liou::dissipator(b, p.n_th + 1.0));
        s = liou::add(s, liou::dissipator(b.adjoint(), p.n_th));
    }
    return s;
}

RegimeReport regime_check(const ModelParams& p) {
    RegimeReport rep;
    const double nu2 = std::norm(p.squeeze.nu);
    if (p.gamma > 0.0 && p.n_th > 0.0 && p.kappa > 0.0)
        rep.decoherence_ratio = 4.0 * p.g2 * p.g2 / (p.kappa * p.gamma) * nu2 / p.n_th;
    else
        rep.decoherence_ratio = kInf;  // no thermal decoherence channel at all
    rep.decoherence_ok = rep.decoherence_ratio >= 10.0;
    rep.kappa_over_g2 = p.g2 > 0.0 ? p.kappa / p.g2 : kInf;
    rep.weak_coupling_ok = rep.kappa_over_g2 >= 10.0;
    rep.kappa_over_gamma = p.gamma > 0.0 ? p.kappa / p.gamma : kInf;
    rep.cavity_fast_ok = rep.kappa_over_gamma >= 100.0;
    return rep;
}

int default_dim_cavity(double r) {
    require(r >= 0.0, "default_dim_cavity: r must be >= 0");
    const double s = std::sinh(r);
    return 4 + int(std::ceil(8.0 * s * s));
}

int default_dim_mech(double r) {
    require(r >= 0.0, "default_dim_mech: r must be >= 0");
    const int floor_rule = 32 + int(std::ceil(12.0 * oracle::mean_phonon(r)));
    int d = (floor_rule + 3) / 4 * 4;
    // Grow until the stationary ket's last retained family member is below
    // the construction tolerance, so steady_ket(d, r, .) always succeeds.
    const double z = std::tanh(r) * std::tanh(r);
    const double norm = oracle::hyp2f1(0.5, 0.25, 0.75, z);
    for (;; d += 4) {
        const int m_top = (d - 1) / 4;
        double w = 1.0;
        for (int m = 0; m < m_top; ++m)
            w *= z * (m + 0.5) * (m + 0.25) / ((m + 0.75) * (m + 1.0));
        if (w / norm < 1e-10) return d;
    }
}

}  // namespace qom::model
