#include "qom/observables.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qom/errors.hpp"

namespace qom::obs {

namespace {

using Complex = std::complex<double>;

void require_edge_clean(const Eigen::VectorXd& pop, const char* who) {
    const Eigen::Index d = pop.size();
    require(d >= 3, std::string(who) + ": dim too small for an edge-population check");
    const double edge = pop(d - 1) + pop(d - 2);
    require(edge < 1e-8, std::string(who) + ": top-two-level population " +
                             std::to_string(edge) +
                             " touches the truncation edge; increase dim");
}

}  // namespace

YPair y_pair(int dim, double theta) {
    require(dim >= 6, "y_pair: dim must be >= 6");
    const fock::Operator b = fock::annihilation(dim);
    const fock::Operator b2 = b * b;
    const Complex w = std::polar(1.0, -theta / 2.0);
    const fock::Operator m = w * b2;
    YPair y;
    y.theta = theta;
    y.y1 = (m + m.adjoint()) / 2.0;
    y.y2 = (m - m.adjoint()) / Complex(0.0, 2.0);
    return y;
}

std::complex<double> expect(const fock::Operator& a, const fock::DensityMatrix& rho) {
    require(a.rows() == rho.rows() && a.cols() == rho.cols() && a.rows() == a.cols(),
            "expect: dimension mismatch");
    return (a * rho).trace();
}

std::complex<double> expect_ket(const fock::Operator& a, const fock::Ket& psi) {
    require(a.cols() == psi.size(), "expect_ket: dimension mismatch");
    return psi.dot(a * psi);
}

double variance(const fock::Operator& a, const fock::DensityMatrix& rho) {
    require(a.rows() == rho.rows() && a.cols() == rho.cols(), "variance: dimension mismatch");
    require((a - a.adjoint()).cwiseAbs().maxCoeff() <= 1e-10,
            "variance: operator is not Hermitian");
    require_edge_clean(populations(rho), "variance");
    const double m1 = (a * rho).trace().real();
    const double m2 = (a * (a * rho)).trace().real();
    return m2 - m1 * m1;
}

double variance_ket(const fock::Operator& a, const fock::Ket& psi) {
    require(a.cols() == psi.size(), "variance_ket: dimension mismatch");
    require((a - a.adjoint()).cwiseAbs().maxCoeff() <= 1e-10,
            "variance_ket: operator is not Hermitian");
    require_edge_clean(psi.cwiseAbs2(), "variance_ket");
    const Eigen::VectorXcd w = a * psi;
    const double m1 = psi.dot(w).real();
    return w.squaredNorm() - m1 * m1;
}

double fidelity_ket(const fock::Ket& psi, const fock::DensityMatrix& rho) {
    require(psi.size() == rho.rows() && rho.rows() == rho.cols(),
            "fidelity_ket: dimension mismatch");
    const Complex f = psi.dot(rho * psi);
    check_internal(std::abs(f.imag()) <= 1e-10, "fidelity_ket: imaginary part above 1e-10");
    return std::clamp(f.real(), 0.0, 1.0);
}

fock::DensityMatrix partial_trace(const fock::DensityMatrix& rho, int dim_cavity, int dim_mech,
                                  Mode keep) {
    require(dim_cavity >= 1 && dim_mech >= 1, "partial_trace: dims must be positive");
    require(rho.rows() == rho.cols() &&
                rho.rows() == Eigen::Index(dim_cavity) * dim_mech,
            "partial_trace: state does not match dim_cavity*dim_mech");
    if (keep == Mode::cavity) {
        fock::DensityMatrix out = fock::DensityMatrix::Zero(dim_cavity, dim_cavity);
        for (int i = 0; i < dim_cavity; ++i)
            for (int j = 0; j < dim_cavity; ++j)
                for (int k = 0; k < dim_mech; ++k)
                    out(i, j) += rho(i * dim_mech + k, j * dim_mech + k);
        return out;
    }
    fock::DensityMatrix out = fock::DensityMatrix::Zero(dim_mech, dim_mech);
    for (int k = 0; k < dim_mech; ++k)
        for (int l = 0; l < dim_mech; ++l)
            for (int i = 0; i < dim_cavity; ++i)
                out(k, l) += rho(i * dim_mech + k, i * dim_mech + l);
    return out;
}

Eigen::VectorXd populations(const fock::DensityMatrix& rho) {
    require(rho.rows() == rho.cols(), "populations: matrix must be square");
    return rho.diagonal().real();
}

double purity(const fock::DensityMatrix& rho) {
    require(rho.rows() == rho.cols(), "purity: matrix must be square");
    return (rho * rho).trace().real();
}

double g2_from_state(const fock::DensityMatrix& rho) {
    const Eigen::VectorXd pop = populations(rho);
    double n1 = 0.0, n2 = 0.0;
    for (Eigen::Index n = 0; n < pop.size(); ++n) {
        n1 += double(n) * pop(n);
        n2 += double(n) * double(n - 1) * pop(n);
    }
    require(n1 > 1e-12, "g2_from_state: undefined at (near) zero mean occupation");
    return n2 / (n1 * n1);
}

}  // namespace qom::obs
