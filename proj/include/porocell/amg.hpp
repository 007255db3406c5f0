// Classical unknown-based algebraic multigrid: Ruge-Stuben coarsening with a
// strong threshold theta, direct interpolation, Galerkin coarse operators and
// a symmetric Gauss-Seidel V-cycle usable as an SPD preconditioner.
#pragma once

#include <string>
#include <vector>

#include "porocell/krylov.hpp"
#include "porocell/sparse.hpp"

namespace porocell {

struct AmgOptions {
    double theta = 0.25;  // strength threshold in [0, 1]
    int nu = 1;           // smoothing sweeps per cycle side
    int max_coarse = 64;  // direct-solve size for the coarsest level
    int max_levels = 25;
    // Unknown-based treatment: rows only coarsen against and interpolate
    // from DOFs of the same unknown (e.g. displacement component, pressure
    // field); smoothing and Galerkin products act on the full matrix. Empty
    // means a single unknown (plain scalar AMG).
    std::vector<int> components;
};

struct AmgLevel {
    SparseMatrix A;
    SparseMatrix P;  // interpolation to this level from the next coarser one
    SparseMatrix R;  // restriction = P^T
    int n_coarse = 0;
};

struct AmgHierarchy {
    std::vector<AmgLevel> levels;  // levels[k].P maps level k+1 -> level k
    SparseMatrix coarse_matrix;
    SymmetricFactor coarse_factor;
    bool coarse_shifted = false;  // diagonal shift applied to factor a singular coarse level
    double theta = 0.25;
    int nu = 1;

    int num_levels() const { return static_cast<int>(levels.size()) + 1; }
    int size() const { return levels.empty() ? coarse_matrix.rows() : levels.front().A.rows(); }
    double operator_complexity() const;
    // Level sizes, nonzeros and setup flags serialized as a JSON string.
    std::string summary_json() const;
};

// Sets up the hierarchy for a symmetric matrix with nonnegative diagonal.
// Strong connections are -a_ij >= theta * max_k(-a_ik); rows whose strongest
// coupling is nonnegative have no strong connections and are smoothed only.
AmgHierarchy amg_setup(const SparseMatrix& A, double theta, int nu, AmgOptions opts = {});

// One V(nu, nu) cycle approximating A^{-1} r; linear, and symmetric by the
// forward/backward Gauss-Seidel pairing.
std::vector<double> vcycle(const AmgHierarchy& h, std::span<const double> r);

// k stationary iterations x <- x + V(b - A x) starting from zero.
std::vector<double> vcycle_iterations(const AmgHierarchy& h, std::span<const double> b, int k);

LinearOperator vcycle_operator(const AmgHierarchy& h, int cycles = 1);

}  // namespace porocell
