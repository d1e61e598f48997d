#include "qom/oracle.hpp"

#include <cmath>
#include <string>

#include "qom/errors.hpp"

namespace qom::oracle {

namespace {

void require_r(double r, const char* who) {
    require(r >= 0.0, std::string(who) + ": r must be >= 0");
    require(r <= max_squeeze, std::string(who) + ": r exceeds supported range (max " +
                                  std::to_string(max_squeeze) + ")");
}

// Ratio P_{m+1}/P_m of successive family weights; increases toward z < 1.
double family_term_ratio(double z, int m) {
    return z * (m + 0.5) * (m + 0.25) / ((m + 0.75) * (m + 1.0));
}

// Unnormalized family weights w_m = (1/2)_m (1/4)_m / ((3/4)_m m!) z^m up to max_m.
Eigen::VectorXd family_weights(double z, int max_m) {
    Eigen::VectorXd w(max_m + 1);
    w(0) = 1.0;
    for (int m = 0; m < max_m; ++m) w(m + 1) = w(m) * family_term_ratio(z, m);
    return w;
}

}  // namespace

double pochhammer(double a, int m) {
    require(m >= 0, "pochhammer: m must be >= 0");
    double p = 1.0;
    for (int k = 0; k < m; ++k) p *= a + k;
    return p;
}

double hyp2f1(double a, double b, double c, double z) {
    require(z >= 0.0 && z < 1.0, "hyp2f1: series requires 0 <= z < 1");
    require(!(c <= 0.0 && c == std::floor(c)), "hyp2f1: c must not be a nonpositive integer");

    const int max_terms = 1000000;
    double sum = 1.0, comp = 0.0, term = 1.0;
    for (int m = 0; m < max_terms; ++m) {
        term *= (a + m) * (b + m) / ((c + m) * (m + 1.0)) * z;
        // Kahan step: keeps the accumulated rounding below the stop threshold.
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (std::abs(term) < 1e-16 * std::abs(sum)) return sum;
    }
    throw convergence_error("hyp2f1: series did not converge in 1e6 terms; partial sum " +
                                std::to_string(sum),
                            std::abs(term / sum));
}

fock::Ket steady_ket(int dim, double r, double theta, double tail_tol) {
    require(dim >= 4, "steady_ket: dim must be >= 4");
    require_r(r, "steady_ket");
    require(tail_tol > 0.0, "steady_ket: tail_tol must be > 0");

    const double t = std::tanh(r);
    const std::complex<double> q = -std::polar(t, theta);  // -(nu/mu)
    const int m_top = (dim - 1) / 4;

    // Closed form, amplitude ratios accumulated incrementally so the
    // Pochhammer quotients never leave O(1) territory.
    fock::Ket c = fock::Ket::Zero(dim);
    double amp = 1.0;
    std::complex<double> phase = 1.0;
    c(0) = 1.0;
    for (int m = 1; m <= m_top; ++m) {
        amp *= std::sqrt((m - 0.5) * (m - 0.75) / ((m - 0.25) * m));
        phase *= q;
        c(4 * m) = amp * phase;
    }
    c /= c.norm();

    // Independent generation through the recursion; both paths must agree.
    fock::Ket c2 = fock::Ket::Zero(dim);
    c2(0) = 1.0;
    for (int n = 4; n < dim; n += 4)
        c2(n) = std::sqrt(double((n - 2) * (n - 3)) / double(n * (n - 1))) * q * c2(n - 4);
    c2 /= c2.norm();
    check_internal((c - c2).cwiseAbs().maxCoeff() <= 1e-12,
                   "steady_ket: closed form and recursion disagree beyond 1e-12");

    const double tail = std::norm(c(4 * m_top));
    if (r > 0.0 && tail >= tail_tol)
        throw domain_error("steady_ket: last family population " + std::to_string(tail) +
                           " exceeds " + std::to_string(tail_tol) + " at dim " +
                           std::to_string(dim) + "; increase dim");
    return c;
}

int family_cutoff(double r, double tail_tol) {
    require_r(r, "family_cutoff");
    require(tail_tol > 0.0, "family_cutoff: tail_tol must be > 0");
    const double z = std::tanh(r) * std::tanh(r);
    if (z == 0.0) return 1;
    double w = 1.0, total = 1.0;
    for (int m = 0; m < 100000; ++m) {
        const double next = w * family_term_ratio(z, m);
        // Geometric tail bound: everything past m+1 is dominated by ratio z.
        if (next / (1.0 - z) < tail_tol * total) return m + 1;
        w = next;
        total += next;
    }
    throw convergence_error("family_cutoff: no cutoff below 100000 families", 0.0);
}

PhononDistribution phonon_distribution(double r, double theta, int max_m) {
    require_r(r, "phonon_distribution");
    require(max_m >= 1, "phonon_distribution: max_m must be >= 1");
    const double z = std::tanh(r) * std::tanh(r);

    const Eigen::VectorXd w = family_weights(z, max_m);
    const double norm = hyp2f1(0.5, 0.25, 0.75, z);
    // Tail relative to the full normalization: the probabilities are w/norm.
    const double tail_bound = w(max_m) * family_term_ratio(z, max_m) / (1.0 - z) / norm;
    require(tail_bound < 1e-10, "phonon_distribution: omitted tail above 1e-10 at max_m " +
                                    std::to_string(max_m) + "; increase max_m");
    PhononDistribution dist;
    dist.r = r;
    dist.theta = theta;
    dist.probabilities = Eigen::VectorXd::Zero(4 * max_m + 1);
    for (int m = 0; m <= max_m; ++m) dist.probabilities(4 * m) = w(m) / norm;
    return dist;
}

double mean_phonon(double r) {
    require_r(r, "mean_phonon");
    const double z = std::tanh(r) * std::tanh(r);
    if (z == 0.0) return 0.0;
    return (2.0 / 3.0) * z * hyp2f1(1.5, 1.25, 1.75, z) / hyp2f1(0.5, 0.25, 0.75, z);
}

double g2_zero(double r) {
    require_r(r, "g2_zero");
    require(r > 0.0, "g2_zero: undefined at r = 0 (zero mean phonon number)");
    // Tight tail so the n(n-1)-weighted sums stay accurate to ~1e-10.
    const double z = std::tanh(r) * std::tanh(r);
    const int max_m = family_cutoff(r, 1e-16);
    const Eigen::VectorXd w = family_weights(z, max_m);
    double s0 = 0.0, s1 = 0.0, s2 = 0.0;
    for (int m = 0; m <= max_m; ++m) {
        const double n = 4.0 * m;
        s0 += w(m);
        s1 += n * w(m);
        s2 += n * (n - 1.0) * w(m);
    }
    return s2 * s0 / (s1 * s1);
}

double klyshko(const PhononDistribution& dist, int n) {
    const auto& p = dist.probabilities;
    require(n >= 1, "klyshko: n must be >= 1");
    require(n + 1 < p.size(), "klyshko: n+1 outside the provided distribution");
    require(p(n) > 0.0, "klyshko: undefined at n = " + std::to_string(n) + " (P_n = 0)");
    return (n + 1.0) * p(n - 1) * p(n + 1) / (n * p(n) * p(n));
}

YVariances y_variances(double r) {
    require_r(r, "y_variances");
    const double bound = mean_phonon(r) + 0.5;
    return {std::exp(-r) * std::sqrt(bound), std::exp(r) * std::sqrt(bound), bound};
}

}  // namespace qom::oracle
