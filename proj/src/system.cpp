#include "porocell/system.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace porocell {

BoundaryConfig boundary_config(BcRegime regime) {
    switch (regime) {
        case BcRegime::Mixed: return BoundaryConfig::mixed();
        case BcRegime::FullDirichlet: return BoundaryConfig::full_dirichlet();
        case BcRegime::AllDirichlet: return BoundaryConfig::all_dirichlet();
    }
    throw std::invalid_argument("boundary_config: unknown regime");
}

SparseMatrix BlockOperator::monolithic() const {
    TripletList trip(size(), size());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (blocks[i][j]) trip.add_block(*blocks[i][j], offset(i), offset(j));
    return SparseMatrix::from_triplets(trip);
}

ProblemData ProblemData::homogeneous() {
    auto zero_s = [](double, double) { return 0.0; };
    auto zero_g = [](double, double) { return Vec2{0.0, 0.0}; };
    auto zero_v = [](double, double) { return Vec2{0.0, 0.0}; };
    auto zero_m = [](double, double) { return Mat2{}; };
    ProblemData d;
    d.f = {zero_v, zero_m};
    d.g_intra = {zero_s, zero_g};
    d.g_extra = {zero_s, zero_g};
    d.p_osm = {zero_s, zero_g};
    d.d_bc = {zero_v, zero_m};
    d.p_bc_intra = {zero_s, zero_g};
    d.p_bc_extra = {zero_s, zero_g};
    return d;
}

namespace {

SparseMatrix concat_diag(const SparseMatrix& a, const SparseMatrix& b) {
    TripletList t(a.rows() + b.rows(), a.cols() + b.cols());
    t.add_block(a, 0, 0);
    t.add_block(b, a.rows(), a.cols());
    return SparseMatrix::from_triplets(t);
}

SparseMatrix vstack(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("vstack: column mismatch");
    TripletList t(a.rows() + b.rows(), a.cols());
    t.add_block(a, 0, 0);
    t.add_block(b, a.rows(), 0);
    return SparseMatrix::from_triplets(t);
}

SparseMatrix slice(const SparseMatrix& m, int r0, int r1, int c0, int c1) {
    TripletList t(r1 - r0, c1 - c0);
    const auto& rp = m.row_ptr();
    const auto& ci = m.col_idx();
    const auto& v = m.values();
    for (int i = r0; i < r1; ++i)
        for (int k = rp[i]; k < rp[i + 1]; ++k)
            if (ci[k] >= c0 && ci[k] < c1) t.add(i - r0, ci[k] - c0, v[k]);
    return SparseMatrix::from_triplets(t);
}

}  // namespace

DiscreteSystem::Fields DiscreteSystem::split(std::span<const double> x) const {
    Fields f;
    const int nti = spaces.QT_i.ndofs, nte = spaces.QT_e.ndofs;
    const int nfi = spaces.QF_i.ndofs, nfe = spaces.QF_e.ndofs;
    auto copy = [&x](int off, int n) { return std::vector<double>(x.begin() + off, x.begin() + off + n); };
    f.d = copy(0, nd());
    f.pT_i = copy(nd(), nti);
    f.pT_e = copy(nd() + nti, nte);
    f.pF_i = copy(nd() + nT(), nfi);
    f.pF_e = copy(nd() + nT() + nfi, nfe);
    return f;
}

DiscreteSystem build_system(const Mesh& mesh, const Params& params, const BcRegime regime,
                            const ProblemData& data) {
    params.validate();
    DiscreteSystem sys;
    sys.mesh = mesh;
    sys.params = params;
    sys.regime = regime;
    sys.spaces = build_spaces(sys.mesh);
    const Spaces& sp = sys.spaces;

    const int nd = sp.V.ndofs;
    const int nT = sp.QT_i.ndofs + sp.QT_e.ndofs;
    const int nF = sp.QF_i.ndofs + sp.QF_e.ndofs;
    sys.op.block_size = {nd, nT, nF};

    // Parameter-independent ingredients over concatenated pressure DOFs.
    SparseMatrix E_raw = assemble_elasticity(sys.mesh, sp.V);
    const SparseMatrix B = vstack(assemble_div_coupling(sys.mesh, sp.V, sp.QT_i),
                                  assemble_div_coupling(sys.mesh, sp.V, sp.QT_e));
    sys.M_T = concat_diag(assemble_mass(sys.mesh, sp.QT_i, sp.QT_i, 1.0),
                          assemble_mass(sys.mesh, sp.QT_e, sp.QT_e, 1.0));
    sys.M_TF = concat_diag(assemble_mass(sys.mesh, sp.QT_i, sp.QF_i, 1.0),
                           assemble_mass(sys.mesh, sp.QT_e, sp.QF_e, 1.0));
    sys.M_F = concat_diag(assemble_mass(sys.mesh, sp.QF_i, sp.QF_i, 1.0),
                          assemble_mass(sys.mesh, sp.QF_e, sp.QF_e, 1.0));
    sys.K_F = concat_diag(assemble_stiffness(sys.mesh, sp.QF_i, params.kappa),
                          assemble_stiffness(sys.mesh, sp.QF_e, params.kappa));
    sys.T_ifc = assemble_interface_jump(sys.mesh, sp.QF_i, sp.QF_e, 1.0);

    const ScalarField one{[](double, double) { return 1.0; },
                          [](double, double) { return Vec2{0.0, 0.0}; }};
    {
        auto mi = assemble_scalar_load(sys.mesh, sp.QT_i, one);
        auto me = assemble_scalar_load(sys.mesh, sp.QT_e, one);
        sys.qt_integrals = mi;
        sys.qt_integrals.insert(sys.qt_integrals.end(), me.begin(), me.end());
    }
    sys.domain_area = 0.0;
    for (int c = 0; c < sys.mesh.num_cells(); ++c) sys.domain_area += sys.mesh.cell_area(c);

    // Block rows of the operator form: the (2,2) block carries -1/lambda M_T,
    // the (2,3) block +alpha/lambda M_TF, and the (3,3) block
    // -(alpha^2/lambda + c0) M_F - K - lp T.
    const double inv_lambda = 1.0 / params.lambda;
    const SparseMatrix A22 = sys.M_T.scaled(-inv_lambda);
    const SparseMatrix A23 = sys.M_TF.scaled(params.alpha * inv_lambda);
    std::vector<std::pair<double, const SparseMatrix*>> a33_terms = {
        {-(params.alpha * params.alpha * inv_lambda + params.c0), &sys.M_F}, {-1.0, &sys.K_F}};
    if (params.lp > 0.0) a33_terms.push_back({-params.lp, &sys.T_ifc});
    const SparseMatrix A33 = csr_weighted_sum(a33_terms);

    TripletList trip(sys.op.size(), sys.op.size());
    trip.add_block(E_raw, 0, 0);
    trip.add_block(B.transposed(), 0, nd);
    trip.add_block(B, nd, 0);
    trip.add_block(A22, nd, nd);
    trip.add_block(A23, nd, nd + nT);
    trip.add_block(A23.transposed(), nd + nT, nd);
    trip.add_block(A33, nd + nT, nd + nT);
    sys.mono = SparseMatrix::from_triplets(trip);

    // Right-hand side.
    BlockVector rhs;
    rhs.d = assemble_vector_load(sys.mesh, sp.V, data.f);
    if (data.stress_jump) {
        const auto tr = assemble_interface_traction(sys.mesh, sp.V, *data.stress_jump);
        for (int i = 0; i < nd; ++i) rhs.d[i] += tr[i];
    }
    rhs.pT.assign(nT, 0.0);
    {
        auto gi = assemble_scalar_load(sys.mesh, sp.QF_i, data.g_intra);
        auto ge = assemble_scalar_load(sys.mesh, sp.QF_e, data.g_extra);
        rhs.pF = gi;
        rhs.pF.insert(rhs.pF.end(), ge.begin(), ge.end());
        const auto osm =
            assemble_interface_pressure_load(sys.mesh, sp.QF_i, sp.QF_e, params.lp, data.p_osm);
        for (int i = 0; i < nF; ++i) rhs.pF[i] += osm[i];
    }
    sys.rhs = rhs.monolithic();

    // Boundary conditions: symmetric elimination on the monolithic system.
    DirichletData disp_bc = displacement_dirichlet(sys.mesh, sp.V, data.d_bc);
    sys.disp_bc_dofs = disp_bc.dofs;
    DirichletData all_bc = disp_bc;  // displacement block sits at offset 0
    {
        const DirichletData fi = fluid_dirichlet(sys.mesh, sp.QF_i, data.p_bc_intra);
        const DirichletData fe = fluid_dirichlet(sys.mesh, sp.QF_e, data.p_bc_extra);
        const int off_f = nd + nT;
        for (std::size_t k = 0; k < fi.dofs.size(); ++k) {
            sys.fluid_bc_dofs.push_back(fi.dofs[k]);
            all_bc.append(off_f + fi.dofs[k], fi.values[k]);
        }
        for (std::size_t k = 0; k < fe.dofs.size(); ++k) {
            sys.fluid_bc_dofs.push_back(sp.QF_i.ndofs + fe.dofs[k]);
            all_bc.append(off_f + sp.QF_i.ndofs + fe.dofs[k], fe.values[k]);
        }
    }
    apply_dirichlet(sys.mono, sys.rhs, all_bc);

    // Elasticity block with homogeneous elimination for the preconditioners.
    sys.E = E_raw;
    {
        std::vector<double> dummy(nd, 0.0);
        sys.E.eliminate_dirichlet(dummy, disp_bc.dofs, std::vector<double>(disp_bc.dofs.size(), 0.0));
    }

    // Store the eliminated blocks.
    const int o1 = nd, o2 = nd + nT, o3 = sys.op.size();
    sys.op.blocks[0][0] = slice(sys.mono, 0, o1, 0, o1);
    sys.op.blocks[0][1] = slice(sys.mono, 0, o1, o1, o2);
    sys.op.blocks[1][0] = slice(sys.mono, o1, o2, 0, o1);
    sys.op.blocks[1][1] = slice(sys.mono, o1, o2, o1, o2);
    sys.op.blocks[1][2] = slice(sys.mono, o1, o2, o2, o3);
    sys.op.blocks[2][1] = slice(sys.mono, o2, o3, o1, o2);
    sys.op.blocks[2][2] = slice(sys.mono, o2, o3, o2, o3);
    return sys;
}

ManufacturedSolution manufactured_solution(const Params& params) {
    using std::cos;
    using std::sin;
    const double pi = std::numbers::pi;
    const double a = params.alpha;
    const double c0 = params.c0;
    const double kappa = params.kappa;

    ManufacturedSolution m;
    m.d.value = [pi](double x, double y) {
        return Vec2{2.0 * pi * sin(2.0 * pi * x) * cos(2.0 * pi * y),
                    -2.0 * pi * cos(2.0 * pi * x) * sin(2.0 * pi * y)};
    };
    m.d.grad = [pi](double x, double y) {
        Mat2 g;
        const double s = 4.0 * pi * pi;
        g.g[0][0] = s * cos(2.0 * pi * x) * cos(2.0 * pi * y);
        g.g[0][1] = -s * sin(2.0 * pi * x) * sin(2.0 * pi * y);
        g.g[1][0] = s * sin(2.0 * pi * x) * sin(2.0 * pi * y);
        g.g[1][1] = -s * cos(2.0 * pi * x) * cos(2.0 * pi * y);
        return g;
    };

    auto p_core = [pi](double x, double y) { return sin(pi * x) * cos(3.4 * pi * y); };
    auto p_grad = [pi](double x, double y) {
        return Vec2{pi * cos(pi * x) * cos(3.4 * pi * y),
                    -3.4 * pi * sin(pi * x) * sin(3.4 * pi * y)};
    };
    m.pF_intra = {p_core, p_grad};
    m.pF_extra = {[p_core](double x, double y) { return 1.0 + p_core(x, y); }, p_grad};
    m.pT_intra = {[p_core, a](double x, double y) { return a * p_core(x, y); },
                  [p_grad, a](double x, double y) { return a * p_grad(x, y); }};
    m.pT_extra = {[p_core, a](double x, double y) { return a * (1.0 + p_core(x, y)); },
                  [p_grad, a](double x, double y) { return a * p_grad(x, y); }};

    ProblemData data = ProblemData::homogeneous();
    // Momentum forcing f = -div eps(d) + grad p_T with div d = 0, so
    // -div eps(d) = -Laplace(d)/2; grad p_T = alpha grad p_F in each subdomain.
    data.f.value = [pi, a, p_grad](double x, double y) {
        const double s = 8.0 * pi * pi * pi;
        const Vec2 gp = p_grad(x, y);
        return Vec2{s * sin(2.0 * pi * x) * cos(2.0 * pi * y) + a * gp.x,
                    -s * cos(2.0 * pi * x) * sin(2.0 * pi * y) + a * gp.y};
    };
    // Fluid forcing g = -c0 p_F + kappa Laplace(p_F) per subdomain.
    const double lap_coef = -(1.0 + 3.4 * 3.4) * pi * pi;
    data.g_intra.value = [=](double x, double y) {
        return -c0 * p_core(x, y) + kappa * lap_coef * p_core(x, y);
    };
    data.g_extra.value = [=](double x, double y) {
        return -c0 * (1.0 + p_core(x, y)) + kappa * lap_coef * p_core(x, y);
    };
    // Constant osmotic pressure balancing the jump [[p_F]] = -1, so the
    // membrane condition holds exactly (the normal flux vanishes at x = 1/2).
    data.p_osm.value = [](double, double) { return 1.0; };
    // The exact solution violates total-stress continuity across the
    // membrane: [[ (eps(d) - p_T I) n ]] = -[[p_T]] n = alpha n.
    data.stress_jump = [a](double, double, Vec2 n) { return Vec2{a * n.x, a * n.y}; };
    data.d_bc = m.d;
    data.p_bc_intra = m.pF_intra;
    data.p_bc_extra = m.pF_extra;
    m.data = data;
    return m;
}

ManufacturedProblem manufactured_problem(const Params& params, int n, BcRegime regime) {
    Mesh mesh = build_box_mesh(n, 0.5);
    mark_boundaries(mesh, boundary_config(regime));
    ManufacturedSolution exact = manufactured_solution(params);
    ManufacturedProblem mp{build_system(mesh, params, regime, exact.data), std::move(exact)};
    return mp;
}

std::vector<double> backward_euler_source(const Mesh& mesh, const Spaces& spaces,
                                          const PhysicalParams& phys, const ScalarField& g_phys,
                                          std::span<const double> prev_d,
                                          std::span<const double> prev_pF) {
    const Params p = rescale(phys);
    const double scale = -phys.tau / (2.0 * phys.mu);

    // (g_tilde, q) = -tau/(2 mu) (g, q) - c0~ (p^{k-1}, q) - alpha~ (div d^{k-1}, q).
    auto gi = assemble_scalar_load(mesh, spaces.QF_i, g_phys);
    auto ge = assemble_scalar_load(mesh, spaces.QF_e, g_phys);
    std::vector<double> load = gi;
    load.insert(load.end(), ge.begin(), ge.end());
    for (double& v : load) v *= scale;

    const SparseMatrix M_F = concat_diag(assemble_mass(mesh, spaces.QF_i, spaces.QF_i, 1.0),
                                         assemble_mass(mesh, spaces.QF_e, spaces.QF_e, 1.0));
    const SparseMatrix B_F = vstack(assemble_div_coupling(mesh, spaces.V, spaces.QF_i),
                                    assemble_div_coupling(mesh, spaces.V, spaces.QF_e));
    std::vector<double> mp(load.size()), bd(load.size());
    M_F.matvec(prev_pF, mp);
    B_F.matvec(prev_d, bd);
    // B already carries -(div ., q), so -alpha~ (div d, q) = +alpha~ B d.
    for (std::size_t i = 0; i < load.size(); ++i) load[i] += -p.c0 * mp[i] + p.alpha * bd[i];
    return load;
}

}  // namespace porocell
