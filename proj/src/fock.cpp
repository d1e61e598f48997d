#include "qom/fock.hpp"

#include <cmath>
#include <string>

#include "qom/errors.hpp"

namespace qom::fock {

namespace {

void require_dim(int dim, const char* who) {
    require(dim >= 2, std::string(who) + ": dim must be >= 2, got " + std::to_string(dim));
}

}  // namespace

Operator annihilation(int dim) {
    require_dim(dim, "annihilation");
    Operator a = Operator::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
    return a;
}

Operator creation(int dim) {
    require_dim(dim, "creation");
    return annihilation(dim).adjoint();
}

Operator number_operator(int dim) {
    require_dim(dim, "number_operator");
    Operator n = Operator::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) n(k, k) = double(k);
    return n;
}

Operator identity(int dim) {
    require_dim(dim, "identity");
    return Operator::Identity(dim, dim);
}

Operator kron(const Operator& a, const Operator& b) {
    require(a.rows() == a.cols() && b.rows() == b.cols(), "kron: factors must be square");
    const Eigen::Index da = a.rows(), db = b.rows();
    Operator out(da * db, da * db);
    for (Eigen::Index i = 0; i < da; ++i)
        for (Eigen::Index j = 0; j < da; ++j)
            out.block(i * db, j * db, db, db) = a(i, j) * b;
    return out;
}

Operator dagger(const Operator& a) { return a.adjoint(); }

Operator matmul(const Operator& a, const Operator& b) {
    require(a.cols() == b.rows(), "matmul: dimension mismatch");
    return a * b;
}

Operator commutator(const Operator& a, const Operator& b) {
    require(a.rows() == b.rows() && a.cols() == b.cols() && a.rows() == a.cols(),
            "commutator: operands must be square with equal dims");
    return a * b - b * a;
}

Ket apply(const Operator& op, const Ket& psi) {
    require(op.cols() == psi.size(), "apply: dimension mismatch");
    return op * psi;
}

Ket basis_ket(int dim, int n) {
    require(dim >= 1 && n >= 0 && n < dim, "basis_ket: need 0 <= n < dim");
    Ket psi = Ket::Zero(dim);
    psi(n) = 1.0;
    return psi;
}

DensityMatrix ket_density(const Ket& psi) {
    return psi * psi.adjoint();
}

Ket squeezed_vacuum_ket(int dim, double r, double theta, double tail_tol) {
    require_dim(dim, "squeezed_vacuum_ket");
    require(r >= 0.0, "squeezed_vacuum_ket: r must be >= 0");
    require(tail_tol > 0.0, "squeezed_vacuum_ket: tail_tol must be > 0");

    const double t = std::tanh(r);
    const Complex ratio = -std::polar(t, theta);  // -(nu/mu) = -e^{i theta} tanh r

    Ket c = Ket::Zero(dim);
    c(0) = 1.0;
    for (int n = 0; n + 2 < dim; n += 2)
        c(n + 2) = ratio * std::sqrt(double(n + 1) / double(n + 2)) * c(n);
    c /= c.norm();

    const double tail = std::max(std::abs(c(dim - 1)), std::abs(c(dim - 2)));
    if (tail >= tail_tol)
        throw domain_error("squeezed_vacuum_ket: truncation tail " + std::to_string(tail) +
                           " exceeds " + std::to_string(tail_tol) +
                           " at dim " + std::to_string(dim) + "; increase dim");
    return c;
}

}  // namespace qom::fock
