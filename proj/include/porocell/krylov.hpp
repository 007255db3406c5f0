// Sparse direct factorizations and Krylov solvers: preconditioned MinRes for
// the symmetric indefinite system and PCG with a Lanczos condition-number
// estimate for the SPD preconditioner studies.
#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "porocell/sparse.hpp"

namespace porocell {

struct LinearOperator {
    int n = 0;
    std::function<void(std::span<const double>, std::span<double>)> apply_fn;

    void apply(std::span<const double> x, std::span<double> y) const { apply_fn(x, y); }
    std::vector<double> operator()(std::span<const double> x) const {
        std::vector<double> y(n);
        apply_fn(x, y);
        return y;
    }
    static LinearOperator identity(int n);
    static LinearOperator from_csr(const SparseMatrix& A);
};

class NotSpdError : public std::runtime_error {
  public:
    NotSpdError(const std::string& what, int pivot) : std::runtime_error(what), pivot_index(pivot) {}
    int pivot_index = -1;
};

// Sparse symmetric factorization of an SPD matrix (fill-reducing LDL^T via
// Eigen::SimplicialLDLT). Throws NotSpdError naming the offending pivot when
// the matrix is not numerically positive definite.
class SpdFactor {
  public:
    SpdFactor() = default;
    std::vector<double> solve(std::span<const double> b) const;
    void solve(std::span<const double> b, std::span<double> x) const;
    int size() const;
    LinearOperator as_operator() const;

  private:
    friend SpdFactor factorize_spd(const SparseMatrix&);
    friend class SymmetricFactor;
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

SpdFactor factorize_spd(const SparseMatrix& A);

// Unpivoted LDL^T for symmetric quasi-definite matrices (the monolithic
// saddle-point operator); solves carry one step of iterative refinement.
class SymmetricFactor {
  public:
    SymmetricFactor() = default;
    std::vector<double> solve(std::span<const double> b) const;
    int size() const;

  private:
    friend SymmetricFactor factorize_symmetric(const SparseMatrix&);
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

SymmetricFactor factorize_symmetric(const SparseMatrix& A);

struct KrylovReport {
    int iterations = 0;
    bool converged = false;
    std::vector<double> residual_history;  // preconditioned residual norms, starts at iteration 0
    std::optional<double> cond_estimate;
};

struct KrylovResult {
    std::vector<double> x;
    KrylovReport report;
};

// Preconditioned MinRes for symmetric A with SPD preconditioner B ~ A^{-1}.
// Convergence is measured by the B-weighted residual norm sqrt(r^T B r)
// relative to its initial value; zero initial guess; a Lanczos breakdown is
// treated as convergence.
KrylovResult minres(const LinearOperator& A, const LinearOperator& B, std::span<const double> b,
                    double tol, int maxit);

// Preconditioned CG; accumulates the Lanczos tridiagonal from the CG
// coefficients and reports the ratio of its extreme eigenvalues as the
// spectral condition estimate of B A.
KrylovResult pcg_condition_estimate(const LinearOperator& A, const LinearOperator& B,
                                    std::span<const double> b, double tol, int maxit);

}  // namespace porocell
