// Element assembly of the bilinear forms of the two-domain total-pressure
// system: elasticity, divergence coupling, weighted masses, pressure
// stiffness, the membrane jump form and the load vectors.
#pragma once

#include <functional>
#include <vector>

#include "porocell/mesh.hpp"
#include "porocell/space.hpp"
#include "porocell/sparse.hpp"

namespace porocell {

// (eps(d), eps(v)) over the whole domain; symmetric positive semi-definite
// until displacement Dirichlet rows are eliminated.
SparseMatrix assemble_elasticity(const Mesh& mesh, const Space& V);

// B[q, v] = -(div phi_v, psi_q) over Q's region; rows Q, cols V.
SparseMatrix assemble_div_coupling(const Mesh& mesh, const Space& V, const Space& Q);

// weight * (phi_a, phi_b) over the shared region of Qa, Qb (identical layouts).
SparseMatrix assemble_mass(const Mesh& mesh, const Space& Qa, const Space& Qb, double weight);

// kappa * (grad p, grad q) over Q's region.
SparseMatrix assemble_stiffness(const Mesh& mesh, const Space& Q, double kappa);

// lp * ([[p]], [[q]])_Gamma over the concatenated (intra, extra) fluid DOFs,
// with [[q]] = q_i - q_e. Zero matrix when no interface facets exist.
SparseMatrix assemble_interface_jump(const Mesh& mesh, const Space& QF_i, const Space& QF_e,
                                     double lp);

std::vector<double> assemble_vector_load(const Mesh& mesh, const Space& V, const VectorField& f);
std::vector<double> assemble_scalar_load(const Mesh& mesh, const Space& Q, const ScalarField& g);

// lp * (p_osm, [[q]])_Gamma over the concatenated fluid DOFs.
std::vector<double> assemble_interface_pressure_load(const Mesh& mesh, const Space& QF_i,
                                                     const Space& QF_e, double lp,
                                                     const ScalarField& p_osm);

// Prescribed jump of the total stress across the membrane: adds
// int_Gamma s(x, n) . v ds to the displacement load, n oriented intra->extra.
using InterfaceVectorField = std::function<Vec2(double, double, Vec2)>;
std::vector<double> assemble_interface_traction(const Mesh& mesh, const Space& V,
                                                const InterfaceVectorField& s);

// Three-block right-hand side of the discrete system.
struct BlockVector {
    std::vector<double> d, pT, pF;
    std::vector<double> monolithic() const;
};

// Constrained DOFs with boundary values.
struct DirichletData {
    std::vector<int> dofs;
    std::vector<double> values;
    void append(int dof, double value) {
        dofs.push_back(dof);
        values.push_back(value);
    }
};

// Displacement DOFs on Gamma_d facets with interpolated boundary values.
DirichletData displacement_dirichlet(const Mesh& mesh, const Space& V, const VectorField& value);
// Fluid-pressure DOFs of one subdomain space on Gamma_p facets.
DirichletData fluid_dirichlet(const Mesh& mesh, const Space& QF, const ScalarField& value);

// Symmetric elimination on a square matrix (wrapper over the CSR routine).
void apply_dirichlet(SparseMatrix& A, std::vector<double>& rhs, const DirichletData& bc);

}  // namespace porocell
