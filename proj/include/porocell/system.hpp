// Discrete three-field block system -- displacement, total pressure, fluid
// pressure -- of the two-domain poroelastic model, in its symmetric
// indefinite operator form, together with the manufactured-solution problem
// and the backward-Euler history source.
#pragma once

#include <optional>

#include "porocell/assembly.hpp"
#include "porocell/params.hpp"

namespace porocell {

enum class BcRegime : std::uint8_t {
    Mixed,          // Gamma_d = {x=0}, traction elsewhere; no-flux fluid boundary
    FullDirichlet,  // clamped displacement on all of the boundary; no-flux fluid
    AllDirichlet,   // clamped displacement and prescribed fluid pressure everywhere
};

BoundaryConfig boundary_config(BcRegime regime);

// 3x3 block layout over the (d, p_T, p_F) partition. The (0,2)/(2,0) blocks
// are structurally zero.
struct BlockOperator {
    std::array<int, 3> block_size{0, 0, 0};
    std::array<std::array<std::optional<SparseMatrix>, 3>, 3> blocks;

    int offset(int b) const {
        int o = 0;
        for (int i = 0; i < b; ++i) o += block_size[i];
        return o;
    }
    int size() const { return block_size[0] + block_size[1] + block_size[2]; }
    SparseMatrix monolithic() const;
};

// Analytic data defining the right-hand side and boundary values.
struct ProblemData {
    VectorField f;                               // body force
    ScalarField g_intra, g_extra;                // fluid sources per subdomain
    ScalarField p_osm;                           // osmotic pressure on the membrane
    std::optional<InterfaceVectorField> stress_jump;  // prescribed total-stress jump
    VectorField d_bc;                            // displacement values on Gamma_d
    ScalarField p_bc_intra, p_bc_extra;          // fluid pressure values on Gamma_p

    static ProblemData homogeneous();
};

struct DiscreteSystem {
    Mesh mesh;
    Spaces spaces;
    Params params;
    BcRegime regime = BcRegime::Mixed;

    BlockOperator op;          // Dirichlet-eliminated blocks
    SparseMatrix mono;         // monolithic matrix, Dirichlet-eliminated
    std::vector<double> rhs;   // monolithic right-hand side

    // Ingredients reused by the preconditioners (assembled without boundary
    // conditions, over the concatenated intra/extra pressure DOFs):
    SparseMatrix E;       // elasticity with homogeneous Dirichlet elimination
    SparseMatrix M_T;     // total-pressure mass
    SparseMatrix M_TF;    // total/fluid cross mass (identical layouts)
    SparseMatrix M_F;     // fluid mass
    SparseMatrix K_F;     // kappa-weighted fluid stiffness
    SparseMatrix T_ifc;   // unit-coefficient membrane jump form
    std::vector<double> qt_integrals;  // m_i = int phi_i over the domain (p_T basis)
    double domain_area = 0.0;

    std::vector<int> disp_bc_dofs;   // constrained displacement DOFs (block-local)
    std::vector<int> fluid_bc_dofs;  // constrained fluid DOFs (block-local, concatenated)

    int nd() const { return op.block_size[0]; }
    int nT() const { return op.block_size[1]; }
    int nF() const { return op.block_size[2]; }
    int size() const { return op.size(); }

    // Splits a monolithic coefficient vector into the five per-space vectors.
    struct Fields {
        std::vector<double> d, pT_i, pT_e, pF_i, pF_e;
    };
    Fields split(std::span<const double> x) const;
};

// Assembles the full block operator of the total-pressure system with the
// given boundary regime and analytic data; applies symmetric Dirichlet
// elimination to the monolithic matrix, right-hand side and stored blocks.
DiscreteSystem build_system(const Mesh& mesh, const Params& params, const BcRegime regime,
                            const ProblemData& data);

// Exact fields of the manufactured problem together with its forcing.
struct ManufacturedSolution {
    VectorField d;
    ScalarField pF_intra, pF_extra;
    ScalarField pT_intra, pT_extra;
    ProblemData data;
};

ManufacturedSolution manufactured_solution(const Params& params);

struct ManufacturedProblem {
    DiscreteSystem system;
    ManufacturedSolution exact;
};

// Unit-square manufactured problem on an n x n box mesh.
ManufacturedProblem manufactured_problem(const Params& params, int n, BcRegime regime);

// Backward-Euler history source for the fluid equation: the static-system
// right-hand side (g_tilde, q_F) built from the previous step's displacement
// and fluid pressure plus the physical source g. Returns the fluid-block
// load over the concatenated (intra, extra) DOFs.
std::vector<double> backward_euler_source(const Mesh& mesh, const Spaces& spaces,
                                          const PhysicalParams& phys, const ScalarField& g_phys,
                                          std::span<const double> prev_d,
                                          std::span<const double> prev_pF);

}  // namespace porocell
