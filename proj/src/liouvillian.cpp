#include "qom/liouvillian.hpp"

#include <Eigen/SparseLU>
#include <unsupported/Eigen/KroneckerProduct>
#include <cmath>
#include <complex>
#include <random>
#include <string>

#include "qom/errors.hpp"

namespace qom::liou {

namespace {

using Complex = std::complex<double>;

void require_square(const fock::Operator& a, const char* who) {
    require(a.rows() == a.cols() && a.rows() >= 1, std::string(who) + ": operator must be square");
}

void require_state(const Superoperator& s, const fock::DensityMatrix& rho, const char* who) {
    require(rho.rows() == s.hilbert_dim && rho.cols() == s.hilbert_dim,
            std::string(who) + ": state dim does not match generator");
}

SparseAction prune_zeros(SparseAction a) {
    a.prune(1.0, 1e-300);
    return a;
}

}  // namespace

Superoperator hamiltonian_term(const fock::Operator& H) {
    require_square(H, "hamiltonian_term");
    require((H - H.adjoint()).cwiseAbs().maxCoeff() <= 1e-10,
            "hamiltonian_term: H is not Hermitian within 1e-10");
    const int d = int(H.rows());
    SparseAction Hs = H.sparseView();
    SparseAction id(d, d);
    id.setIdentity();
    Superoperator s;
    s.hilbert_dim = d;
    s.action = prune_zeros(Complex(0, -1) *
                           (kroneckerProduct(id, Hs) - kroneckerProduct(SparseAction(Hs.transpose()), id)));
    s.term_log = {{"hamiltonian", 0.0}};
    return s;
}

Superoperator dissipator(const fock::Operator& L, double rate) {
    require_square(L, "dissipator");
    require(rate >= 0.0, "dissipator: rate must be >= 0");
    const int d = int(L.rows());
    SparseAction Ls = L.sparseView();
    SparseAction LdL = SparseAction(Ls.adjoint()) * Ls;
    SparseAction id(d, d);
    id.setIdentity();
    Superoperator s;
    s.hilbert_dim = d;
    s.action = prune_zeros(rate * (kroneckerProduct(SparseAction(Ls.conjugate()), Ls) -
                                   0.5 * kroneckerProduct(id, LdL) -
                                   0.5 * kroneckerProduct(SparseAction(LdL.transpose()), id)));
    s.term_log = {{"dissipator", rate}};
    return s;
}

Superoperator add(const Superoperator& s1, const Superoperator& s2) {
    require(s1.hilbert_dim == s2.hilbert_dim, "add: Hilbert dims differ");
    Superoperator s;
    s.hilbert_dim = s1.hilbert_dim;
    s.action = s1.action + s2.action;
    s.term_log = s1.term_log;
    s.term_log.insert(s.term_log.end(), s2.term_log.begin(), s2.term_log.end());
    return s;
}

Eigen::VectorXcd vectorize(const fock::DensityMatrix& rho) {
    require(rho.rows() == rho.cols(), "vectorize: matrix must be square");
    return Eigen::Map<const Eigen::VectorXcd>(rho.data(), rho.size());
}

fock::DensityMatrix devectorize(const Eigen::VectorXcd& v, int dim) {
    require(Eigen::Index(dim) * dim == v.size(), "devectorize: length is not dim^2");
    return Eigen::Map<const fock::DensityMatrix>(v.data(), dim, dim);
}

fock::DensityMatrix apply(const Superoperator& s, const fock::DensityMatrix& rho) {
    require_state(s, rho, "apply");
    return devectorize(s.action * vectorize(rho), s.hilbert_dim);
}

double residual_max(const Superoperator& s, const fock::DensityMatrix& rho) {
    require_state(s, rho, "residual_max");
    return (s.action * vectorize(rho)).cwiseAbs().maxCoeff();
}

double spectral_estimate(const Superoperator& s, int iterations) {
    const Eigen::Index n = s.action.rows();
    std::mt19937 gen(0x9e3779b9u);
    std::normal_distribution<double> nd(0.0, 1.0);
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(nd(gen), nd(gen));
    v.normalize();
    const SparseAction adj = s.action.adjoint();
    double sigma_sq = 0.0;
    for (int k = 0; k < iterations; ++k) {
        Eigen::VectorXcd w = adj * (s.action * v);
        sigma_sq = w.norm();
        if (sigma_sq == 0.0) return 0.0;
        v = w / sigma_sq;
    }
    return std::sqrt(sigma_sq);
}

double default_t_cap(const Superoperator& s) {
    double slowest = 0.0;
    for (const auto& t : s.term_log)
        if (t.kind == "dissipator" && t.rate > 0.0)
            slowest = (slowest == 0.0) ? t.rate : std::min(slowest, t.rate);
    require(slowest > 0.0, "default_t_cap: no positive dissipative rate; pass t_cap explicitly");
    return 50.0 / slowest;
}

fock::DensityMatrix evolve(const Superoperator& s, const fock::DensityMatrix& rho0,
                           double t_final, double dt_max, double trace_tol) {
    require_state(s, rho0, "evolve");
    require(t_final >= 0.0, "evolve: t_final must be >= 0");
    require(dt_max > 0.0, "evolve: dt_max must be > 0");
    require(trace_tol > 0.0, "evolve: trace_tol must be > 0");
    if (t_final == 0.0) return rho0;

    const double sigma = spectral_estimate(s);
    const double h_bound = sigma > 0.0 ? 0.1 / sigma : dt_max;
    const double h_req = std::min(dt_max, h_bound);
    const double steps_needed = std::ceil(t_final / h_req);
    require(steps_needed <= 5e7, "evolve: step budget over 5e7 (t_final too long for this "
                                 "generator's stiffness); split the run or use steady_state");
    const long nsteps = long(steps_needed);
    const double h = t_final / double(nsteps);

    const SparseAction& A = s.action;
    Eigen::VectorXcd v = vectorize(rho0);
    const double trace0 = devectorize(v, s.hilbert_dim).trace().real();
    Eigen::VectorXcd k1, k2, k3, k4;
    for (long step = 0; step < nsteps; ++step) {
        k1 = A * v;
        k2 = A * (v + (h / 2) * k1);
        k3 = A * (v + (h / 2) * k2);
        k4 = A * (v + h * k3);
        v += (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!v.allFinite())
            throw convergence_error("evolve: non-finite state at t = " +
                                        std::to_string((step + 1) * h),
                                    std::numeric_limits<double>::quiet_NaN());
    }
    const fock::DensityMatrix out = devectorize(v, s.hilbert_dim);
    const double drift = std::abs(out.trace().real() - trace0) + std::abs(out.trace().imag());
    if (drift > trace_tol)
        throw convergence_error("evolve: trace drift " + std::to_string(drift) +
                                    " exceeds tolerance; reduce dt_max",
                                drift);
    return out;
}

namespace {

// Indices reachable from the seeds by following action columns to their rows;
// an invariant subspace of the flow, so the restriction loses nothing.
std::vector<int> reachable_set(const SparseAction& a, const Eigen::VectorXcd& v0) {
    const Eigen::Index n = a.rows();
    std::vector<char> seen(n, 0);
    std::vector<Eigen::Index> stack;
    for (Eigen::Index i = 0; i < n; ++i)
        if (v0(i) != Complex(0.0)) {
            seen[i] = 1;
            stack.push_back(i);
        }
    while (!stack.empty()) {
        const Eigen::Index j = stack.back();
        stack.pop_back();
        for (SparseAction::InnerIterator it(a, j); it; ++it)
            if (!seen[it.row()]) {
                seen[it.row()] = 1;
                stack.push_back(it.row());
            }
    }
    std::vector<int> idx;
    for (Eigen::Index i = 0; i < n; ++i)
        if (seen[i]) idx.push_back(int(i));
    return idx;
}

}  // namespace

fock::DensityMatrix steady_state(const Superoperator& s, const fock::DensityMatrix& rho0,
                                 double stop_tol, double t_cap) {
    require_state(s, rho0, "steady_state");
    require(stop_tol > 0.0, "steady_state: stop_tol must be > 0");
    if (t_cap <= 0.0) t_cap = default_t_cap(s);

    const int d = s.hilbert_dim;
    const auto finish = [d](fock::DensityMatrix rho) {
        rho = ((rho + rho.adjoint()) / 2.0).eval();
        rho /= rho.trace().real();
        return rho;
    };

    if (residual_max(s, rho0) <= stop_tol) return finish(rho0);

    const Eigen::VectorXcd v0 = vectorize(rho0);
    const std::vector<int> idx = reachable_set(s.action, v0);
    const int ns = int(idx.size());
    std::vector<int> loc(size_t(d) * d, -1);
    for (int c = 0; c < ns; ++c) loc[idx[c]] = c;

    std::vector<Eigen::Triplet<Complex>> trip;
    for (int c = 0; c < ns; ++c)
        for (SparseAction::InnerIterator it(s.action, idx[c]); it; ++it) {
            check_internal(loc[it.row()] >= 0, "steady_state: reachable set not closed");
            trip.emplace_back(loc[it.row()], c, it.value());
        }
    SparseAction Sr(ns, ns);
    Sr.setFromTriplets(trip.begin(), trip.end());

    std::vector<int> diag;
    for (int n = 0; n < d; ++n)
        if (loc[size_t(n) * d + n] >= 0) diag.push_back(loc[size_t(n) * d + n]);

    // TR-BDF2 with gamma = 2 - sqrt(2): both stages solve against the same
    // shifted matrix, so one factorization serves the whole run.
    const int nsteps = 40;
    const double gamma = 2.0 - std::sqrt(2.0);
    const double dt = t_cap / nsteps;
    const double c = gamma / 2.0 * dt;
    const double a1 = 1.0 / (gamma * (2.0 - gamma));
    const double a2 = (1.0 - gamma) * (1.0 - gamma) / (gamma * (2.0 - gamma));

    SparseAction lhs(ns, ns);
    lhs.setIdentity();
    lhs = SparseAction(lhs - c * Sr);
    Eigen::SparseLU<SparseAction> solver;
    solver.compute(lhs);
    check_internal(solver.info() == Eigen::Success, "steady_state: sparse factorization failed");

    Eigen::VectorXcd v(ns);
    for (int k = 0; k < ns; ++k) v(k) = v0(idx[k]);

    double res = std::numeric_limits<double>::infinity();
    for (int step = 0; step < nsteps; ++step) {
        // Materialize both right-hand sides: Solve expressions evaluate into
        // their destination, which here aliases v.
        const Eigen::VectorXcd rhs_mid = v + c * (Sr * v);
        const Eigen::VectorXcd mid = solver.solve(rhs_mid);
        const Eigen::VectorXcd rhs_step = a1 * mid - a2 * v;
        v = solver.solve(rhs_step);
        Complex tr = 0.0;
        for (int k : diag) tr += v(k);
        check_internal(std::abs(tr) > 0.5, "steady_state: trace collapsed during iteration");
        v /= tr;
        res = (Sr * v).cwiseAbs().maxCoeff();
        check_internal(std::isfinite(res), "steady_state: non-finite iterate");
        if (res <= stop_tol) {
            Eigen::VectorXcd full = Eigen::VectorXcd::Zero(Eigen::Index(d) * d);
            for (int k = 0; k < ns; ++k) full(idx[k]) = v(k);
            return finish(devectorize(full, d));
        }
    }
    throw convergence_error("steady_state: residual " + std::to_string(res) + " above " +
                                std::to_string(stop_tol) + " at t_cap " + std::to_string(t_cap),
                            res);
}

}  // namespace qom::liou
