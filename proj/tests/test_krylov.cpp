#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "porocell/krylov.hpp"

using namespace porocell;

namespace {

SparseMatrix diag_matrix(const std::vector<double>& d) {
    TripletList t(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) t.add(static_cast<int>(i), static_cast<int>(i), d[i]);
    return SparseMatrix::from_triplets(t);
}

SparseMatrix laplacian_1d(int n) {
    TripletList t(n, n);
    for (int i = 0; i < n; ++i) {
        t.add(i, i, 2.0);
        if (i > 0) t.add(i, i - 1, -1.0);
        if (i + 1 < n) t.add(i, i + 1, -1.0);
    }
    return SparseMatrix::from_triplets(t);
}

std::vector<double> random_vector(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> v(n);
    for (double& x : v) x = dist(rng);
    return v;
}

}  // namespace

TEST_CASE("factorize_spd: identity solve is the identity") {
    const SparseMatrix I = SparseMatrix::identity(6);
    const SpdFactor f = factorize_spd(I);
    const auto b = random_vector(6, 1);
    const auto x = f.solve(b);
    for (int i = 0; i < 6; ++i) CHECK(x[i] == doctest::Approx(b[i]));
}

TEST_CASE("factorize_spd: 1D Laplacian agrees with the dense oracle") {
    const SparseMatrix A = laplacian_1d(5);
    const SpdFactor f = factorize_spd(A);
    const auto b = random_vector(5, 2);
    const auto x = f.solve(b);
    const auto xd = oracle::dense_solve(oracle::to_dense(A), b);
    for (int i = 0; i < 5; ++i) CHECK(x[i] == doctest::Approx(xd[i]).epsilon(1e-12));
}

TEST_CASE("factorize_spd: indefinite matrix raises NOT_SPD naming the pivot") {
    const SparseMatrix A = diag_matrix({1.0, -1.0});
    try {
        factorize_spd(A);
        FAIL("expected NotSpdError");
    } catch (const NotSpdError& e) {
        CHECK(e.pivot_index == 1);
    }
}

TEST_CASE("factorize_spd: singular matrix raises NOT_SPD") {
    // P1 Neumann stiffness has the constants in its kernel
    TripletList t(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t.add(i, j, i == j ? 1.0 : -0.5);
    CHECK_THROWS_AS(factorize_spd(SparseMatrix::from_triplets(t)), NotSpdError);
}

TEST_CASE("linear operators are linear") {
    const SparseMatrix A = laplacian_1d(12);
    const LinearOperator op = LinearOperator::from_csr(A);
    const auto x = random_vector(12, 3), y = random_vector(12, 4);
    std::vector<double> xy(12);
    for (int i = 0; i < 12; ++i) xy[i] = 2.0 * x[i] - 3.0 * y[i];
    const auto lhs = op(xy);
    const auto ax = op(x), ay = op(y);
    for (int i = 0; i < 12; ++i)
        CHECK(lhs[i] == doctest::Approx(2.0 * ax[i] - 3.0 * ay[i]).epsilon(1e-12));
}

TEST_CASE("minres: perfect preconditioner converges in at most two iterations") {
    const SparseMatrix A = laplacian_1d(20);
    const SpdFactor f = factorize_spd(A);
    const auto b = random_vector(20, 5);
    const KrylovResult res =
        minres(LinearOperator::from_csr(A), f.as_operator(), b, 1e-12, 50);
    CHECK(res.report.converged);
    CHECK(res.report.iterations <= 2);
}

TEST_CASE("minres: 2x2 diagonal system solved exactly within two iterations") {
    const SparseMatrix A = diag_matrix({1.0, 2.0});
    const std::vector<double> b{1.0, 1.0};
    const KrylovResult res =
        minres(LinearOperator::from_csr(A), LinearOperator::identity(2), b, 1e-12, 10);
    CHECK(res.report.converged);
    CHECK(res.report.iterations <= 2);
    CHECK(res.x[0] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(res.x[1] == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("minres: residual history is non-increasing, indefinite systems converge") {
    // symmetric indefinite saddle-point style matrix
    const int n = 30;
    TripletList t(n, n);
    for (int i = 0; i < n; ++i) {
        t.add(i, i, i < 20 ? 2.0 : -1.5);
        if (i + 1 < n) {
            t.add(i, i + 1, 0.5);
            t.add(i + 1, i, 0.5);
        }
    }
    const SparseMatrix A = SparseMatrix::from_triplets(t);
    const auto b = random_vector(n, 7);
    const KrylovResult res =
        minres(LinearOperator::from_csr(A), LinearOperator::identity(n), b, 1e-10, 200);
    CHECK(res.report.converged);
    for (std::size_t k = 1; k < res.report.residual_history.size(); ++k)
        CHECK(res.report.residual_history[k] <=
              res.report.residual_history[k - 1] * (1.0 + 1e-12));
    const double rel = res.report.residual_history.back() / res.report.residual_history.front();
    CHECK(rel <= 1e-10);
}

TEST_CASE("minres: hitting the iteration cap reports converged = false") {
    const SparseMatrix A = laplacian_1d(100);
    const auto b = random_vector(100, 8);
    const KrylovResult res =
        minres(LinearOperator::from_csr(A), LinearOperator::identity(100), b, 1e-14, 3);
    CHECK(!res.report.converged);
    CHECK(res.report.iterations == 3);
}

TEST_CASE("pcg: perfectly preconditioned system has unit condition estimate") {
    const SparseMatrix A = laplacian_1d(25);
    const SpdFactor f = factorize_spd(A);
    const auto b = random_vector(25, 9);
    const KrylovResult res =
        pcg_condition_estimate(LinearOperator::from_csr(A), f.as_operator(), b, 1e-12, 50);
    CHECK(res.report.converged);
    CHECK(res.report.iterations <= 2);
    REQUIRE(res.report.cond_estimate.has_value());
    CHECK(*res.report.cond_estimate == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("pcg: condition estimate recovers the spectrum of diag(1, 10)") {
    const SparseMatrix A = diag_matrix({1.0, 10.0});
    const std::vector<double> b{1.0, 1.0};
    const KrylovResult res =
        pcg_condition_estimate(LinearOperator::from_csr(A), LinearOperator::identity(2), b,
                               1e-12, 10);
    CHECK(res.report.converged);
    REQUIRE(res.report.cond_estimate.has_value());
    CHECK(*res.report.cond_estimate == doctest::Approx(10.0).epsilon(1e-8));
}

TEST_CASE("minres and pcg agree on SPD systems") {
    const SparseMatrix A = laplacian_1d(40);
    const auto b = random_vector(40, 10);
    const LinearOperator op = LinearOperator::from_csr(A);
    const LinearOperator id = LinearOperator::identity(40);
    const auto xm = minres(op, id, b, 1e-12, 500).x;
    const auto xc = pcg_condition_estimate(op, id, b, 1e-12, 500).x;
    for (int i = 0; i < 40; ++i) CHECK(xm[i] == doctest::Approx(xc[i]).epsilon(1e-8));
}

TEST_CASE("symmetric factor: quasi-definite solve with small residual") {
    // [[ A, B^T ], [ B, -C ]] with SPD A and C
    const int m = 12, k = 5, n = m + k;
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Eigen::MatrixXd Bd = Eigen::MatrixXd::NullaryExpr(k, m, [&]() { return dist(rng); });
    TripletList t(n, n);
    for (int i = 0; i < m; ++i) t.add(i, i, 4.0);
    for (int i = 0; i < k; ++i) t.add(m + i, m + i, -2.0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < m; ++j) {
            t.add(m + i, j, Bd(i, j));
            t.add(j, m + i, Bd(i, j));
        }
    const SparseMatrix A = SparseMatrix::from_triplets(t);
    const auto b = random_vector(n, 12);
    const SymmetricFactor f = factorize_symmetric(A);
    const auto x = f.solve(b);
    auto r = A.apply(x);
    for (int i = 0; i < n; ++i) r[i] -= b[i];
    CHECK(norm2(r) <= 1e-12 * norm2(b));
}
