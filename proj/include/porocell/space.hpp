// Taylor-Hood type spaces on the two-domain mesh: a globally continuous
// vector P2 displacement space and per-subdomain scalar P1 pressure spaces
// (interface vertices carry one DOF per side, making the pressures
// discontinuous across the membrane).
#pragma once

#include <array>
#include <functional>
#include <vector>

#include "porocell/mesh.hpp"

namespace porocell {

struct Mat2 {
    // g[i][j] = d(component i)/d(x_j)
    std::array<std::array<double, 2>, 2> g{{{0, 0}, {0, 0}}};
};

struct ScalarField {
    std::function<double(double, double)> value;
    std::function<Vec2(double, double)> grad;
};

struct VectorField {
    std::function<Vec2(double, double)> value;
    std::function<Mat2(double, double)> grad;
};

enum class Elem { P1, P2 };

struct BasisEval {
    int count = 0;
    std::array<double, 6> val{};
    std::array<Vec2, 6> grad_ref{};  // reference-coordinate gradients (d/dxi, d/deta)
};

// Lagrange basis on the reference triangle (0,0)-(1,0)-(0,1) at a barycentric
// point. P1 yields the 3 vertex functions; P2 additionally the midpoint
// function of the edge opposite each vertex (indices 3..5).
BasisEval eval_basis(Elem elem, double b0, double b1, double b2);

enum class SpaceKind : std::uint8_t { VectorP2, ScalarP1 };
enum class Region : std::uint8_t { Intra, Extra, All };

struct Space {
    SpaceKind kind = SpaceKind::ScalarP1;
    Region region = Region::All;
    int ndofs = 0;
    int dofs_per_cell = 0;  // 12 for vector P2, 3 for scalar P1
    // Per mesh cell, the global DOFs of the local basis; first entry -1 for
    // cells outside the space's region. Vector P2 order: x/y components of
    // the 3 vertex then 3 edge-midpoint functions.
    std::vector<std::array<int, 12>> cell_dofs;
    std::vector<Vec2> dof_coords;
    // Scalar spaces: vertex -> DOF (or -1). Vector space: vertex/facet ->
    // scalar node, DOF = 2*node + component.
    std::vector<int> vertex_node;
    std::vector<int> edge_node;

    bool active(int cell) const { return cell_dofs[cell][0] >= 0; }
};

struct Spaces {
    Space V;     // displacement, vector P2, continuous over the whole domain
    Space QT_i;  // total pressure, intracellular
    Space QT_e;  // total pressure, extracellular
    Space QF_i;  // fluid pressure, intracellular
    Space QF_e;  // fluid pressure, extracellular
};

// Builds the five spaces of the degree-s Taylor-Hood discretization.
// Only s = 2 is supported.
Spaces build_spaces(const Mesh& mesh, int degree = 2);

Space build_vector_p2(const Mesh& mesh);
Space build_scalar_p1(const Mesh& mesh, Region region);

// Nodal interpolation of an analytic field.
std::vector<double> interpolate(const Space& space, const ScalarField& f);
std::vector<double> interpolate(const Space& space, const VectorField& f);

// Affine map data of one triangle.
struct CellGeometry {
    Vec2 p0;
    double j[2][2];      // Jacobian columns (p1-p0, p2-p0)
    double jinvT[2][2];  // inverse transpose, maps reference to physical gradients
    double detj;         // twice the cell area
};

CellGeometry cell_geometry(const Mesh& mesh, int c);
Vec2 physical_grad(const CellGeometry& g, Vec2 grad_ref);
Vec2 map_point(const CellGeometry& g, double b1, double b2);

struct ErrorNorms {
    double l2 = 0.0;
    double h1_semi = 0.0;
};

// L2 and H1-seminorm error of a coefficient vector against an analytic field,
// integrated with the degree-6 rule over the space's region.
ErrorNorms error_norms(const Mesh& mesh, const Space& space, const std::vector<double>& coeffs,
                       const ScalarField& exact);
ErrorNorms error_norms(const Mesh& mesh, const Space& space, const std::vector<double>& coeffs,
                       const VectorField& exact);

}  // namespace porocell
