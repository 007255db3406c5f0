#include "porocell/precond.hpp"

#include <cmath>

namespace porocell {

void BlockApply::solve(std::span<const double> b, std::span<double> x) const {
    if (factor) {
        factor->solve(b, x);
        return;
    }
    const std::vector<double> sol = vcycle_iterations(*amg, b, cycles);
    std::copy(sol.begin(), sol.end(), x.begin());
}

namespace {

BlockApply make_block(const SparseMatrix& A, const PrecondOptions& opts, double theta, int nu,
                      int cycles, const char* block_name, std::vector<int> components = {}) {
    BlockApply ba;
    ba.n = A.rows();
    if (opts.mode == PrecondMode::Exact) {
        try {
            ba.factor = factorize_spd(A);
        } catch (const NotSpdError& e) {
            throw NotSpdError(std::string(block_name) + ": " + e.what(), e.pivot_index);
        }
    } else {
        AmgOptions amg_opts;
        amg_opts.components = std::move(components);
        ba.amg = std::make_shared<AmgHierarchy>(amg_setup(A, theta, nu, std::move(amg_opts)));
        ba.cycles = cycles;
    }
    return ba;
}

// Unknown labels: displacement components for the elasticity block, the two
// pressure fields for the coupled block.
std::vector<int> displacement_components(int ndofs) {
    std::vector<int> comp(ndofs);
    for (int i = 0; i < ndofs; ++i) comp[i] = i % 2;
    return comp;
}

std::vector<int> pressure_components(int nT, int nF) {
    std::vector<int> comp(nT + nF, 0);
    std::fill(comp.begin() + nT, comp.end(), 1);
    return comp;
}

// Homogeneous elimination of the system's fluid Dirichlet DOFs inside the
// pressure block (offset nT when the block spans [p_T; p_F], 0 otherwise).
void eliminate_fluid_bc(SparseMatrix& A, const DiscreteSystem& sys, int offset) {
    if (sys.fluid_bc_dofs.empty()) return;
    std::vector<int> dofs;
    dofs.reserve(sys.fluid_bc_dofs.size());
    for (int d : sys.fluid_bc_dofs) dofs.push_back(offset + d);
    std::vector<double> rhs(A.rows(), 0.0);
    A.eliminate_dirichlet(rhs, dofs, std::vector<double>(dofs.size(), 0.0));
}

SparseMatrix fluid_norm_matrix(const DiscreteSystem& sys, double mass_weight, bool with_membrane) {
    const Params& p = sys.params;
    std::vector<std::pair<double, const SparseMatrix*>> terms = {{mass_weight, &sys.M_F},
                                                                 {1.0, &sys.K_F}};
    if (with_membrane && p.lp > 0.0) terms.push_back({p.lp, &sys.T_ifc});
    SparseMatrix A = csr_weighted_sum(terms);
    eliminate_fluid_bc(A, sys, 0);
    return A;
}

std::vector<double> projection_vector(const DiscreteSystem& sys, int padded_size) {
    // y = m / sqrt(|Omega|) over the p_T DOFs, zero-padded to the block size.
    std::vector<double> y(padded_size, 0.0);
    const double s = 1.0 / std::sqrt(sys.domain_area);
    for (std::size_t i = 0; i < sys.qt_integrals.size(); ++i) y[i] = s * sys.qt_integrals[i];
    return y;
}

void smw_correct(const SmwData& smw, std::span<const double> r, std::span<double> z) {
    double wr = 0.0;
    for (std::size_t i = 0; i < smw.w.size(); ++i) wr += smw.w[i] * r[i];
    const double c = wr / smw.denom;
    for (std::size_t i = 0; i < smw.w.size(); ++i) z[i] += c * smw.w[i];
}

}  // namespace

SmwData smw_precompute(const BlockApply& block, std::span<const double> y) {
    SmwData smw;
    smw.w.assign(block.n, 0.0);
    block.solve(y, smw.w);
    double yw = 0.0;
    for (int i = 0; i < block.n; ++i) yw += y[i] * smw.w[i];
    smw.denom = 1.0 - yw;
    if (std::abs(smw.denom) < 1e-12)
        throw SmwBreakdownError("SMW breakdown: 1 - y^T A^{-1} y is numerically zero");
    return smw;
}

void smw_apply(const SmwData& smw, const BlockApply& block, std::span<const double> b,
               std::span<double> x) {
    block.solve(b, x);
    smw_correct(smw, b, x);
}

SparseMatrix robust_pressure_matrix(const DiscreteSystem& sys) {
    const Params& p = sys.params;
    const int nT = sys.nT(), nF = sys.nF();
    const double il = 1.0 / p.lambda;
    TripletList t(nT + nF, nT + nF);
    t.add_block(sys.M_T, 0, 0, il + 1.0);
    t.add_block(sys.M_TF, 0, nT, -p.alpha * il);
    t.add_block(sys.M_TF, nT, 0, -p.alpha * il);
    t.add_block(sys.M_F, nT, nT, p.alpha * p.alpha * il + p.c0);
    t.add_block(sys.K_F, nT, nT, 1.0);
    if (p.lp > 0.0) t.add_block(sys.T_ifc, nT, nT, p.lp);
    SparseMatrix A = SparseMatrix::from_triplets(t);
    eliminate_fluid_bc(A, sys, nT);
    return A;
}

std::shared_ptr<const BlockApply> make_displacement_solver(const DiscreteSystem& sys,
                                                           const PrecondOptions& opts) {
    return std::make_shared<const BlockApply>(
        make_block(sys.E, opts, opts.theta_e, opts.nu_e, opts.e_cycles, "displacement block",
                   displacement_components(sys.E.rows())));
}

Preconditioner build_preconditioner(PrecondKind kind, const DiscreteSystem& sys,
                                    const PrecondOptions& opts,
                                    std::shared_ptr<const BlockApply> shared_disp) {
    const Params& p = sys.params;
    Preconditioner B;
    B.kind = kind;
    B.mode = opts.mode;
    B.nd_ = sys.nd();
    B.nT_ = sys.nT();
    B.nF_ = sys.nF();
    B.disp_ = shared_disp ? *shared_disp : *make_displacement_solver(sys, opts);

    const double il = 1.0 / p.lambda;
    switch (kind) {
        case PrecondKind::Robust: {
            B.coupled_ = make_block(robust_pressure_matrix(sys), opts, opts.theta_q, opts.nu_q, 1,
                                    "pressure block", pressure_components(sys.nT(), sys.nF()));
            break;
        }
        case PrecondKind::DirichletP0: {
            if (sys.regime == BcRegime::Mixed)
                throw std::invalid_argument(
                    "build_preconditioner: the P0-projected variant requires full displacement "
                    "Dirichlet boundary conditions");
            B.coupled_ = make_block(robust_pressure_matrix(sys), opts, opts.theta_q, opts.smw_nu,
                                    opts.smw_cycles, "pressure block",
                                    pressure_components(sys.nT(), sys.nF()));
            B.smw_ = smw_precompute(*B.coupled_, projection_vector(sys, sys.nT() + sys.nF()));
            break;
        }
        case PrecondKind::Diag: {
            B.pT_ = make_block(sys.M_T, opts, opts.theta_q, opts.nu_q, 1, "total pressure block");
            B.pF_ = make_block(fluid_norm_matrix(sys, p.c0, true), opts, opts.theta_q, opts.nu_q, 1,
                               "fluid pressure block");
            break;
        }
        case PrecondKind::DiagP0: {
            if (sys.regime == BcRegime::Mixed)
                throw std::invalid_argument(
                    "build_preconditioner: the P0-projected variant requires full displacement "
                    "Dirichlet boundary conditions");
            B.pT_ = make_block(sys.M_T.scaled(il + 1.0), opts, opts.theta_q, opts.smw_nu,
                               opts.smw_cycles, "total pressure block");
            B.smw_ = smw_precompute(*B.pT_, projection_vector(sys, sys.nT()));
            B.pF_ = make_block(fluid_norm_matrix(sys, p.alpha * p.alpha * il, true), opts,
                               opts.theta_q, opts.nu_q, 1, "fluid pressure block");
            break;
        }
        case PrecondKind::NaiveSingle: {
            B.pT_ = make_block(sys.M_T, opts, opts.theta_q, opts.nu_q, 1, "total pressure block");
            B.pF_ = make_block(fluid_norm_matrix(sys, p.alpha * p.alpha * il, false), opts,
                               opts.theta_q, opts.nu_q, 1, "fluid pressure block");
            break;
        }
    }
    return B;
}

void Preconditioner::apply(std::span<const double> r, std::span<double> z) const {
    disp_.solve(r.subspan(0, nd_), z.subspan(0, nd_));
    if (coupled_) {
        auto rp = r.subspan(nd_, nT_ + nF_);
        auto zp = z.subspan(nd_, nT_ + nF_);
        coupled_->solve(rp, zp);
        if (smw_) smw_correct(*smw_, rp, zp);
        return;
    }
    auto rT = r.subspan(nd_, nT_);
    auto zT = z.subspan(nd_, nT_);
    pT_->solve(rT, zT);
    if (smw_) smw_correct(*smw_, rT, zT);
    pF_->solve(r.subspan(nd_ + nT_, nF_), z.subspan(nd_ + nT_, nF_));
}

LinearOperator Preconditioner::op() const {
    const Preconditioner* self = this;
    return {size(), [self](std::span<const double> r, std::span<double> z) { self->apply(r, z); }};
}

double Preconditioner::smw_denominator() const {
    if (!smw_) throw std::logic_error("smw_denominator: preconditioner has no SMW data");
    return smw_->denom;
}

Preconditioner build_robust(const DiscreteSystem& sys, const PrecondOptions& opts) {
    return build_preconditioner(PrecondKind::Robust, sys, opts);
}
Preconditioner build_diag(const DiscreteSystem& sys, const PrecondOptions& opts) {
    return build_preconditioner(PrecondKind::Diag, sys, opts);
}
Preconditioner build_dirichlet_p0(const DiscreteSystem& sys, const PrecondOptions& opts) {
    return build_preconditioner(PrecondKind::DirichletP0, sys, opts);
}
Preconditioner build_diag_p0(const DiscreteSystem& sys, const PrecondOptions& opts) {
    return build_preconditioner(PrecondKind::DiagP0, sys, opts);
}
Preconditioner build_naive_single(const DiscreteSystem& sys, const PrecondOptions& opts) {
    return build_preconditioner(PrecondKind::NaiveSingle, sys, opts);
}

}  // namespace porocell
