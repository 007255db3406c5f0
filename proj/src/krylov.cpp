#include "porocell/krylov.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <limits>

namespace porocell {

LinearOperator LinearOperator::identity(int n) {
    return {n, [](std::span<const double> x, std::span<double> y) {
                std::copy(x.begin(), x.end(), y.begin());
            }};
}

LinearOperator LinearOperator::from_csr(const SparseMatrix& A) {
    return {A.rows(), [&A](std::span<const double> x, std::span<double> y) { A.matvec(x, y); }};
}

namespace {

using EigenSparse = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;
using Ldlt = Eigen::SimplicialLDLT<EigenSparse, Eigen::Lower, Eigen::AMDOrdering<int>>;

// A CSR symmetric matrix read column-major is its own transpose, so the
// arrays can be reinterpreted as CSC directly.
EigenSparse to_eigen(const SparseMatrix& A) {
    Eigen::Map<const EigenSparse> map(A.rows(), A.cols(), A.nnz(), A.row_ptr().data(),
                                      A.col_idx().data(), A.values().data());
    return EigenSparse(map);
}

}  // namespace

struct SpdFactor::Impl {
    Ldlt ldlt;
    EigenSparse mat;  // kept for iterative refinement
    int n = 0;
};

SpdFactor factorize_spd(const SparseMatrix& A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("factorize_spd: matrix must be square");
    auto impl = std::make_shared<SpdFactor::Impl>();
    impl->n = A.rows();
    impl->mat = to_eigen(A);
    impl->ldlt.compute(impl->mat);
    if (impl->ldlt.info() != Eigen::Success)
        throw NotSpdError("factorize_spd: factorization failed (structurally singular matrix)", -1);
    const auto& d = impl->ldlt.vectorD();
    double dmax = 0.0;
    for (int i = 0; i < impl->n; ++i) dmax = std::max(dmax, std::abs(d[i]));
    for (int i = 0; i < impl->n; ++i) {
        if (!(d[i] > 1e-13 * dmax)) {
            // vectorD is indexed in the permuted ordering; map back.
            const int orig = impl->ldlt.permutationPinv().indices()[i];
            throw NotSpdError("factorize_spd: non-positive pivot at index " + std::to_string(orig),
                              orig);
        }
    }
    SpdFactor f;
    f.impl_ = std::move(impl);
    return f;
}

int SpdFactor::size() const { return impl_ ? impl_->n : 0; }

void SpdFactor::solve(std::span<const double> b, std::span<double> x) const {
    Eigen::Map<const Eigen::VectorXd> bm(b.data(), impl_->n);
    Eigen::Map<Eigen::VectorXd> xm(x.data(), impl_->n);
    xm = impl_->ldlt.solve(bm);
}

std::vector<double> SpdFactor::solve(std::span<const double> b) const {
    std::vector<double> x(impl_->n);
    solve(b, x);
    return x;
}

LinearOperator SpdFactor::as_operator() const {
    auto impl = impl_;
    return {impl->n, [impl](std::span<const double> b, std::span<double> x) {
                Eigen::Map<const Eigen::VectorXd> bm(b.data(), impl->n);
                Eigen::Map<Eigen::VectorXd> xm(x.data(), impl->n);
                xm = impl->ldlt.solve(bm);
            }};
}

struct SymmetricFactor::Impl {
    Eigen::SparseLU<EigenSparse> lu;
    EigenSparse mat;
    int n = 0;
};

// The indefinite path uses a pivoted sparse LU: the saddle-point systems of
// the parameter sweeps are badly scaled and an unpivoted LDL^T loses too much
// accuracy in the extreme corners.
SymmetricFactor factorize_symmetric(const SparseMatrix& A) {
    if (A.rows() != A.cols())
        throw std::invalid_argument("factorize_symmetric: matrix must be square");
    auto impl = std::make_shared<SymmetricFactor::Impl>();
    impl->n = A.rows();
    impl->mat = to_eigen(A);
    impl->lu.compute(impl->mat);
    if (impl->lu.info() != Eigen::Success)
        throw std::runtime_error("factorize_symmetric: factorization failed");
    SymmetricFactor f;
    f.impl_ = std::move(impl);
    return f;
}

int SymmetricFactor::size() const { return impl_ ? impl_->n : 0; }

std::vector<double> SymmetricFactor::solve(std::span<const double> b) const {
    Eigen::Map<const Eigen::VectorXd> bm(b.data(), impl_->n);
    Eigen::VectorXd x = impl_->lu.solve(bm);
    // Iterative refinement: the extreme sweep corners are ill conditioned
    // enough that a single factored solve leaves a visible residual.
    const double bnorm = bm.norm();
    for (int sweep = 0; sweep < 4; ++sweep) {
        Eigen::VectorXd r = bm - impl_->mat * x;
        if (r.norm() <= 1e-14 * bnorm) break;
        x += impl_->lu.solve(r);
    }
    return std::vector<double>(x.data(), x.data() + impl_->n);
}

KrylovResult minres(const LinearOperator& A, const LinearOperator& B, std::span<const double> b,
                    double tol, int maxit) {
    const int n = A.n;
    KrylovResult out;
    out.x.assign(n, 0.0);
    KrylovReport& rep = out.report;

    // Lanczos process on the B-preconditioned operator, Paige-Saunders QR
    // update; phibar tracks the B-norm of the residual.
    std::vector<double> r1(b.begin(), b.end());
    std::vector<double> y(n);
    B.apply(r1, y);
    double beta1 = dot(std::span<const double>(r1), std::span<const double>(y));
    if (beta1 < 0.0) throw std::runtime_error("minres: preconditioner is not positive definite");
    beta1 = std::sqrt(beta1);
    rep.residual_history.push_back(beta1);
    if (beta1 == 0.0) {
        rep.converged = true;
        return out;
    }

    std::vector<double> r2 = r1, v(n), w(n, 0.0), w1(n, 0.0), w2(n, 0.0), tmp(n);
    double oldb = 0.0, beta = beta1, dbar = 0.0, epsln = 0.0, phibar = beta1;
    double cs = -1.0, sn = 0.0, oldeps = 0.0;

    for (int itn = 1; itn <= maxit; ++itn) {
        const double s = 1.0 / beta;
        for (int i = 0; i < n; ++i) v[i] = s * y[i];
        A.apply(v, tmp);
        if (itn >= 2)
            for (int i = 0; i < n; ++i) tmp[i] -= (beta / oldb) * r1[i];
        const double alfa = dot(std::span<const double>(v), std::span<const double>(tmp));
        for (int i = 0; i < n; ++i) tmp[i] -= (alfa / beta) * r2[i];
        r1 = r2;
        r2 = tmp;
        B.apply(r2, y);
        oldb = beta;
        beta = dot(std::span<const double>(r2), std::span<const double>(y));
        if (beta < 0.0) throw std::runtime_error("minres: preconditioner is not positive definite");
        beta = std::sqrt(beta);

        oldeps = epsln;
        const double delta = cs * dbar + sn * alfa;
        const double gbar = sn * dbar - cs * alfa;
        epsln = sn * beta;
        dbar = -cs * beta;
        double gamma = std::sqrt(gbar * gbar + beta * beta);
        gamma = std::max(gamma, std::numeric_limits<double>::epsilon());
        cs = gbar / gamma;
        sn = beta / gamma;
        const double phi = cs * phibar;
        phibar = sn * phibar;

        w1 = w2;
        w2 = w;
        for (int i = 0; i < n; ++i) w[i] = (v[i] - oldeps * w1[i] - delta * w2[i]) / gamma;
        for (int i = 0; i < n; ++i) out.x[i] += phi * w[i];

        rep.iterations = itn;
        rep.residual_history.push_back(phibar);
        if (phibar <= tol * beta1) {
            rep.converged = true;
            break;
        }
        if (beta <= beta1 * 1e-15) {  // Lanczos breakdown: Krylov space is invariant
            rep.converged = true;
            break;
        }
    }
    return out;
}

namespace {

// Extreme eigenvalues of a symmetric tridiagonal matrix by Sturm bisection.
std::pair<double, double> tridiag_extreme_eigs(const std::vector<double>& diag,
                                               const std::vector<double>& off) {
    const int m = static_cast<int>(diag.size());
    double lo = diag[0], hi = diag[0];
    for (int i = 0; i < m; ++i) {
        const double r = (i > 0 ? std::abs(off[i - 1]) : 0.0) + (i < m - 1 ? std::abs(off[i]) : 0.0);
        lo = std::min(lo, diag[i] - r);
        hi = std::max(hi, diag[i] + r);
    }
    auto count_below = [&](double sigma) {
        // Number of eigenvalues < sigma via the Sturm sequence of T - sigma I.
        int count = 0;
        double d = 1.0;
        for (int i = 0; i < m; ++i) {
            const double offsq = i > 0 ? off[i - 1] * off[i - 1] : 0.0;
            d = diag[i] - sigma - (d != 0.0 ? offsq / d : offsq / 1e-300);
            if (d < 0.0) ++count;
        }
        return count;
    };
    auto bisect = [&](int k) {  // k-th smallest eigenvalue (0-based)
        double a = lo - 1e-12, b = hi + 1e-12;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (a + b);
            if (count_below(mid) > k)
                b = mid;
            else
                a = mid;
            if (b - a < 1e-14 * std::max(1.0, std::abs(b))) break;
        }
        return 0.5 * (a + b);
    };
    return {bisect(0), bisect(m - 1)};
}

}  // namespace

KrylovResult pcg_condition_estimate(const LinearOperator& A, const LinearOperator& B,
                                    std::span<const double> b, double tol, int maxit) {
    const int n = A.n;
    KrylovResult out;
    out.x.assign(n, 0.0);
    KrylovReport& rep = out.report;

    std::vector<double> r(b.begin(), b.end()), z(n), p(n), q(n);
    B.apply(r, z);
    double rz = dot(std::span<const double>(r), std::span<const double>(z));
    if (rz < 0.0) throw std::runtime_error("pcg: preconditioner is not positive definite");
    const double rz0 = std::sqrt(rz);
    rep.residual_history.push_back(rz0);
    if (rz0 == 0.0) {
        rep.converged = true;
        return out;
    }
    p = z;

    std::vector<double> alphas, betas;
    for (int itn = 1; itn <= maxit; ++itn) {
        A.apply(p, q);
        const double pq = dot(std::span<const double>(p), std::span<const double>(q));
        if (pq <= 0.0) throw std::runtime_error("pcg: operator is not positive definite");
        const double alpha = rz / pq;
        for (int i = 0; i < n; ++i) {
            out.x[i] += alpha * p[i];
            r[i] -= alpha * q[i];
        }
        B.apply(r, z);
        const double rz_new = dot(std::span<const double>(r), std::span<const double>(z));
        if (rz_new < 0.0) throw std::runtime_error("pcg: preconditioner is not positive definite");
        const double beta = rz_new / rz;
        alphas.push_back(alpha);
        betas.push_back(beta);
        rz = rz_new;
        rep.iterations = itn;
        rep.residual_history.push_back(std::sqrt(rz));
        for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
        if (std::sqrt(rz) <= tol * rz0) {
            rep.converged = true;
            break;
        }
    }

    // Lanczos tridiagonal reconstructed from the CG coefficients.
    const int m = static_cast<int>(alphas.size());
    if (m >= 1) {
        std::vector<double> diag(m), off(std::max(0, m - 1));
        for (int k = 0; k < m; ++k) {
            diag[k] = 1.0 / alphas[k];
            if (k > 0) diag[k] += betas[k - 1] / alphas[k - 1];
            if (k < m - 1) off[k] = std::sqrt(betas[k]) / alphas[k];
        }
        const auto [emin, emax] = tridiag_extreme_eigs(diag, off);
        if (emin > 0.0) rep.cond_estimate = emax / emin;
    }
    return out;
}

}  // namespace porocell
