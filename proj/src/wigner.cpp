#include "qom/wigner.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "qom/errors.hpp"

namespace qom::wigner {

namespace {

using Complex = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

// log sqrt(n!/(n+d)!) tables, d-major; independent of the evaluation point,
// so grids amortize them across all points.
struct KernelTables {
    int dim;
    std::vector<double> log_ratio;  // [offset(d) + n] = -0.5 (lgamma(n+d+1) - lgamma(n+1))
    std::vector<double> ratio;      // exp(log_ratio), valid on the fast path only
    std::size_t offset(int d) const { return std::size_t(d) * dim - std::size_t(d) * (d - 1) / 2; }
};

KernelTables make_tables(int dim) {
    std::vector<double> lg(dim + 1);
    for (int k = 0; k <= dim; ++k) lg[k] = std::lgamma(double(k) + 1.0);
    KernelTables t;
    t.dim = dim;
    t.log_ratio.resize(std::size_t(dim) * (dim + 1) / 2);
    t.ratio.resize(t.log_ratio.size());
    for (int d = 0; d < dim; ++d)
        for (int n = 0; n + d < dim; ++n) {
            const double v = -0.5 * (lg[n + d] - lg[n]);
            t.log_ratio[t.offset(d) + n] = v;
            t.ratio[t.offset(d) + n] = std::exp(v);
        }
    return t;
}

// Direct-recurrence evaluation; magnitudes provably stay inside double range
// for dim <= 160 and 4|alpha|^2 <= 300.
double point_fast(const fock::DensityMatrix& rho, const KernelTables& t, double x, double p) {
    const int dim = t.dim;
    const double u = 2.0 * (x * x + p * p);  // 4|alpha|^2
    const double e2 = std::exp(-u / 2.0);
    const Complex ta = std::sqrt(2.0) * Complex(x, -p);  // 2 conj(alpha)

    double total = 0.0;
    Complex pw = 1.0;
    for (int d = 0; d < dim; ++d) {
        const double* f = t.ratio.data() + t.offset(d);
        Complex acc = 0.0;
        double lm = 0.0, lc = 1.0;  // L_{n-1}^d and L_n^d, from L_0 = 1
        double sign = 1.0;
        for (int n = 0; n + d < dim; ++n) {
            acc += rho(n + d, n) * (sign * f[n] * lc);
            const double lnext =
                ((2.0 * n + 1.0 + d - u) * lc - (n + d) * lm) / double(n + 1);
            lm = lc;
            lc = lnext;
            sign = -sign;
        }
        total += (d == 0 ? 1.0 : 2.0) * (pw * e2 * acc).real();
        pw *= ta;
    }
    return total / kPi;
}

// Log-magnitude assembly with a rescaled Laguerre recurrence; handles any dim
// and grid radius at the price of one exp per retained term.
double point_safe(const fock::DensityMatrix& rho, const KernelTables& t, double x, double p) {
    const int dim = t.dim;
    const double u = 2.0 * (x * x + p * p);
    const double mag2a = std::sqrt(u);
    const double logmag2a = u > 0.0 ? 0.5 * std::log(u) : -std::numeric_limits<double>::infinity();
    const Complex ph2a = u > 0.0 ? std::sqrt(2.0) * Complex(x, -p) / mag2a : Complex(1.0);

    const double rescale = 1e250;
    const double log_rescale = std::log(rescale);

    double total = 0.0;
    Complex ph = 1.0;
    for (int d = 0; d < dim; ++d) {
        if (d > 0 && u == 0.0) break;  // (2 conj alpha)^d = 0 kills every d >= 1 term
        const double* lf = t.log_ratio.data() + t.offset(d);
        const double base = d == 0 ? -u / 2.0 : double(d) * logmag2a - u / 2.0;
        Complex acc = 0.0;
        double lm = 0.0, lc = 1.0, scale_log = 0.0;
        double sign = 1.0;
        for (int n = 0; n + d < dim; ++n) {
            if (lc != 0.0) {
                const double lt = base + lf[n] + scale_log + std::log(std::abs(lc));
                if (lt > -745.0)
                    acc += rho(n + d, n) * (sign * std::copysign(std::exp(lt), lc));
            }
            const double lnext =
                ((2.0 * n + 1.0 + d - u) * lc - (n + d) * lm) / double(n + 1);
            lm = lc;
            lc = lnext;
            const double m = std::max(std::abs(lm), std::abs(lc));
            if (m > rescale) {
                lm /= rescale;
                lc /= rescale;
                scale_log += log_rescale;
            } else if (m > 0.0 && m < 1.0 / rescale) {
                lm *= rescale;
                lc *= rescale;
                scale_log -= log_rescale;
            }
            sign = -sign;
        }
        total += (d == 0 ? 1.0 : 2.0) * (ph * acc).real();
        ph *= ph2a;
    }
    return total / kPi;
}

void require_state(const fock::DensityMatrix& rho, const char* who) {
    require(rho.rows() == rho.cols() && rho.rows() >= 2,
            std::string(who) + ": state must be square with dim >= 2");
    require((rho - rho.adjoint()).cwiseAbs().maxCoeff() <= 1e-10,
            std::string(who) + ": state is not Hermitian within 1e-10 (the kernel sum is only "
                               "real for Hermitian input)");
    const Eigen::Index d = rho.rows();
    const double edge = rho(d - 1, d - 1).real() + (d >= 2 ? rho(d - 2, d - 2).real() : 0.0);
    require(edge < 1e-8, std::string(who) + ": tail population " + std::to_string(edge) +
                             " touches the truncation edge; increase dim");
}

double dispatch(const fock::DensityMatrix& rho, const KernelTables& t, double x, double p) {
    const double u = 2.0 * (x * x + p * p);
    return (t.dim <= 160 && u <= 300.0) ? point_fast(rho, t, x, p) : point_safe(rho, t, x, p);
}

}  // namespace

double wigner_point(const fock::DensityMatrix& rho, double x, double p) {
    require_state(rho, "wigner_point");
    const KernelTables t = make_tables(int(rho.rows()));
    return dispatch(rho, t, x, p);
}

WignerGrid wigner_grid(const fock::DensityMatrix& rho, double x_max, int n_points) {
    require_state(rho, "wigner_grid");
    require(x_max > 0.0, "wigner_grid: x_max must be > 0");
    require(n_points >= 3, "wigner_grid: n_points must be >= 3");
    require(n_points % 2 == 1,
            "wigner_grid: n_points must be odd (quarter-rotation symmetric lattice)");

    const KernelTables t = make_tables(int(rho.rows()));
    WignerGrid g;
    g.xs = Eigen::VectorXd::LinSpaced(n_points, -x_max, x_max);
    g.ps = g.xs;
    const double h = 2.0 * x_max / double(n_points - 1);
    g.cell_area = h * h;
    g.values.resize(n_points, n_points);
    for (int i = 0; i < n_points; ++i)
        for (int j = 0; j < n_points; ++j)
            g.values(i, j) = dispatch(rho, t, g.xs(i), g.ps(j));
    return g;
}

Negativity negativity(const WignerGrid& grid) {
    Negativity n;
    n.min_value = grid.values.minCoeff();
    n.negative_volume = (-grid.values).cwiseMax(0.0).sum() * grid.cell_area;
    return n;
}

double fourfold_defect(const WignerGrid& grid) {
    const Eigen::Index n = grid.values.rows();
    require(n == grid.values.cols() && grid.xs.size() == n && grid.ps.size() == n,
            "fourfold_defect: grid is not square");
    require((grid.xs + grid.xs.reverse()).cwiseAbs().maxCoeff() <= 1e-12 &&
                (grid.xs - grid.ps).cwiseAbs().maxCoeff() == 0.0,
            "fourfold_defect: grid is not a symmetric square lattice");
    double defect = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            defect = std::max(defect,
                              std::abs(grid.values(i, j) - grid.values(n - 1 - j, i)));
    return defect;
}

double default_x_max(double n_bar) {
    require(n_bar >= 0.0, "default_x_max: n_bar must be >= 0");
    return std::ceil(3.0 * std::sqrt(2.0 * n_bar + 1.0));
}

}  // namespace qom::wigner
