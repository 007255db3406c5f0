// Block-diagonal preconditioners for the three-field system: the coupled
// pressure-block Riesz map, its diagonal variants, the full-Dirichlet version
// with the zero-mean projection handled by a rank-one Sherman-Morrison-
// Woodbury update, and the single-domain baseline without the membrane term.
// Block inverses are either exact sparse factorizations or AMG V-cycles.
#pragma once

#include <memory>
#include <optional>

#include "porocell/amg.hpp"
#include "porocell/krylov.hpp"
#include "porocell/system.hpp"

namespace porocell {

enum class PrecondKind : std::uint8_t { Robust, Diag, DirichletP0, DiagP0, NaiveSingle };
enum class PrecondMode : std::uint8_t { Exact, Amg };

struct PrecondOptions {
    PrecondMode mode = PrecondMode::Exact;
    double theta_q = 0.7;  // strong threshold for the pressure blocks
    int nu_q = 1;
    double theta_e = 0.5;  // strong threshold for the elasticity block
    int nu_e = 3;
    // Two stationary V-cycle iterations on the displacement block: direct
    // interpolation leaves a single cycle at cond(VA) ~ 2.5 on the P2
    // elasticity operator, which would cost more MinRes iterations than the
    // budget over exact block inverses allows.
    int e_cycles = 2;
    int smw_nu = 5;      // smoothing for the SMW-updated block in AMG mode
    int smw_cycles = 2;  // V-cycles per application of that block
};

class SmwBreakdownError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// One diagonal block: an exact factorization or an AMG hierarchy applied as
// a fixed number of V-cycles.
struct BlockApply {
    int n = 0;
    std::optional<SpdFactor> factor;
    std::shared_ptr<const AmgHierarchy> amg;
    int cycles = 1;

    void solve(std::span<const double> b, std::span<double> x) const;
};

// Rank-one SMW update: (A - y y^T)^{-1} b = A^{-1} b + w (w^T b) / denom with
// w = A^{-1} y and denom = 1 - y^T w, both precomputed at setup.
struct SmwData {
    std::vector<double> w;
    double denom = 1.0;
};

// Throws SmwBreakdownError when |1 - y^T A^{-1} y| < 1e-12.
SmwData smw_precompute(const BlockApply& block, std::span<const double> y);
// x = A^{-1} b + w (w^T b) / denom.
void smw_apply(const SmwData& smw, const BlockApply& block, std::span<const double> b,
               std::span<double> x);

class Preconditioner {
  public:
    PrecondKind kind = PrecondKind::Robust;
    PrecondMode mode = PrecondMode::Exact;

    int size() const { return nd_ + nT_ + nF_; }
    void apply(std::span<const double> r, std::span<double> z) const;
    LinearOperator op() const;

    double smw_denominator() const;
    const BlockApply& displacement_block() const { return disp_; }

  private:
    friend Preconditioner build_preconditioner(PrecondKind, const DiscreteSystem&,
                                               const PrecondOptions&,
                                               std::shared_ptr<const BlockApply>);
    int nd_ = 0, nT_ = 0, nF_ = 0;
    BlockApply disp_;
    std::optional<BlockApply> coupled_;          // Robust / DirichletP0 pressure block
    std::optional<BlockApply> pT_, pF_;          // split variants
    std::optional<SmwData> smw_;                 // DirichletP0 (coupled) or DiagP0 (pT)
};

// Assembles the pressure-block inner-product matrix of the coupled (Robust /
// DirichletP0) preconditioner over the concatenated [p_T; p_F] DOFs, with the
// system's fluid Dirichlet DOFs eliminated.
SparseMatrix robust_pressure_matrix(const DiscreteSystem& sys);

std::shared_ptr<const BlockApply> make_displacement_solver(const DiscreteSystem& sys,
                                                           const PrecondOptions& opts);

Preconditioner build_preconditioner(PrecondKind kind, const DiscreteSystem& sys,
                                    const PrecondOptions& opts,
                                    std::shared_ptr<const BlockApply> shared_disp = nullptr);

// Named builders mirroring the preconditioner catalog.
Preconditioner build_robust(const DiscreteSystem& sys, const PrecondOptions& opts);
Preconditioner build_diag(const DiscreteSystem& sys, const PrecondOptions& opts);
Preconditioner build_dirichlet_p0(const DiscreteSystem& sys, const PrecondOptions& opts);
Preconditioner build_diag_p0(const DiscreteSystem& sys, const PrecondOptions& opts);
Preconditioner build_naive_single(const DiscreteSystem& sys, const PrecondOptions& opts);

}  // namespace porocell
