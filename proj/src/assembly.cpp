#include "porocell/assembly.hpp"

#include <stdexcept>

#include "porocell/quadrature.hpp"

namespace porocell {

namespace {

// eps(phi_a e_c) : eps(phi_b e_d) for physical gradients ga, gb.
double strain_product(Vec2 ga, int c, Vec2 gb, int d) {
    if (c == 0 && d == 0) return ga.x * gb.x + 0.5 * ga.y * gb.y;
    if (c == 0 && d == 1) return 0.5 * ga.y * gb.x;
    if (c == 1 && d == 0) return 0.5 * ga.x * gb.y;
    return ga.y * gb.y + 0.5 * ga.x * gb.x;
}

}  // namespace

SparseMatrix assemble_elasticity(const Mesh& mesh, const Space& V) {
    if (V.kind != SpaceKind::VectorP2)
        throw std::invalid_argument("assemble_elasticity: vector P2 space expected");
    const TriQuadrature& quad = TriQuadrature::degree4();
    TripletList trip(V.ndofs, V.ndofs);
    double local[12][12];
    for (int c = 0; c < mesh.num_cells(); ++c) {
        const CellGeometry g = cell_geometry(mesh, c);
        for (auto& row : local)
            for (double& v : row) v = 0.0;
        for (const TriQuadPoint& qp : quad.pts) {
            const BasisEval be = eval_basis(Elem::P2, qp.b0, qp.b1, qp.b2);
            Vec2 pg[6];
            for (int a = 0; a < 6; ++a) pg[a] = physical_grad(g, be.grad_ref[a]);
            const double w = qp.w * g.detj;
            for (int A = 0; A < 12; ++A)
                for (int B = A; B < 12; ++B)
                    local[A][B] += w * strain_product(pg[A / 2], A % 2, pg[B / 2], B % 2);
        }
        for (int A = 0; A < 12; ++A)
            for (int B = A; B < 12; ++B) {
                trip.add(V.cell_dofs[c][A], V.cell_dofs[c][B], local[A][B]);
                if (B != A) trip.add(V.cell_dofs[c][B], V.cell_dofs[c][A], local[A][B]);
            }
    }
    return SparseMatrix::from_triplets(trip);
}

SparseMatrix assemble_div_coupling(const Mesh& mesh, const Space& V, const Space& Q) {
    if (V.kind != SpaceKind::VectorP2 || Q.kind != SpaceKind::ScalarP1)
        throw std::invalid_argument("assemble_div_coupling: expected (vector P2, scalar P1)");
    const TriQuadrature& quad = TriQuadrature::degree4();
    TripletList trip(Q.ndofs, V.ndofs);
    for (int c = 0; c < mesh.num_cells(); ++c) {
        if (!Q.active(c)) continue;
        const CellGeometry g = cell_geometry(mesh, c);
        double local[3][12] = {};
        for (const TriQuadPoint& qp : quad.pts) {
            const BasisEval bv = eval_basis(Elem::P2, qp.b0, qp.b1, qp.b2);
            const BasisEval bq = eval_basis(Elem::P1, qp.b0, qp.b1, qp.b2);
            const double w = qp.w * g.detj;
            for (int a = 0; a < 6; ++a) {
                const Vec2 ga = physical_grad(g, bv.grad_ref[a]);
                const double comp[2] = {ga.x, ga.y};
                for (int cc = 0; cc < 2; ++cc)
                    for (int q = 0; q < 3; ++q) local[q][2 * a + cc] -= w * comp[cc] * bq.val[q];
            }
        }
        for (int q = 0; q < 3; ++q)
            for (int A = 0; A < 12; ++A)
                trip.add(Q.cell_dofs[c][q], V.cell_dofs[c][A], local[q][A]);
    }
    return SparseMatrix::from_triplets(trip);
}

SparseMatrix assemble_mass(const Mesh& mesh, const Space& Qa, const Space& Qb, double weight) {
    if (Qa.kind != SpaceKind::ScalarP1 || Qb.kind != SpaceKind::ScalarP1)
        throw std::invalid_argument("assemble_mass: scalar P1 spaces expected");
    if (Qa.region != Qb.region)
        throw std::invalid_argument("assemble_mass: spaces live on different subdomains");
    const TriQuadrature& quad = TriQuadrature::degree4();
    TripletList trip(Qa.ndofs, Qb.ndofs);
    for (int c = 0; c < mesh.num_cells(); ++c) {
        if (!Qa.active(c)) continue;
        const CellGeometry g = cell_geometry(mesh, c);
        double local[3][3] = {};
        for (const TriQuadPoint& qp : quad.pts) {
            const BasisEval be = eval_basis(Elem::P1, qp.b0, qp.b1, qp.b2);
            const double w = weight * qp.w * g.detj;
            for (int a = 0; a < 3; ++a)
                for (int b = a; b < 3; ++b) local[a][b] += w * be.val[a] * be.val[b];
        }
        for (int a = 0; a < 3; ++a)
            for (int b = a; b < 3; ++b) {
                trip.add(Qa.cell_dofs[c][a], Qb.cell_dofs[c][b], local[a][b]);
                if (b != a) trip.add(Qa.cell_dofs[c][b], Qb.cell_dofs[c][a], local[a][b]);
            }
    }
    return SparseMatrix::from_triplets(trip);
}

SparseMatrix assemble_stiffness(const Mesh& mesh, const Space& Q, double kappa) {
    if (Q.kind != SpaceKind::ScalarP1)
        throw std::invalid_argument("assemble_stiffness: scalar P1 space expected");
    const TriQuadrature& quad = TriQuadrature::degree4();
    TripletList trip(Q.ndofs, Q.ndofs);
    for (int c = 0; c < mesh.num_cells(); ++c) {
        if (!Q.active(c)) continue;
        const CellGeometry g = cell_geometry(mesh, c);
        double local[3][3] = {};
        for (const TriQuadPoint& qp : quad.pts) {
            const BasisEval be = eval_basis(Elem::P1, qp.b0, qp.b1, qp.b2);
            Vec2 pg[3];
            for (int a = 0; a < 3; ++a) pg[a] = physical_grad(g, be.grad_ref[a]);
            const double w = kappa * qp.w * g.detj;
            for (int a = 0; a < 3; ++a)
                for (int b = a; b < 3; ++b) local[a][b] += w * dot(pg[a], pg[b]);
        }
        for (int a = 0; a < 3; ++a)
            for (int b = a; b < 3; ++b) {
                trip.add(Q.cell_dofs[c][a], Q.cell_dofs[c][b], local[a][b]);
                if (b != a) trip.add(Q.cell_dofs[c][b], Q.cell_dofs[c][a], local[a][b]);
            }
    }
    return SparseMatrix::from_triplets(trip);
}

SparseMatrix assemble_interface_jump(const Mesh& mesh, const Space& QF_i, const Space& QF_e,
                                     double lp) {
    const int ni = QF_i.ndofs, ne = QF_e.ndofs;
    TripletList trip(ni + ne, ni + ne);
    const LineQuadrature& quad = LineQuadrature::gauss2();
    for (int f : mesh.interface_facets()) {
        const Facet& fc = mesh.facets[f];
        const double len = mesh.facet_length(f);
        // Concatenated trace DOFs (intra endpoints then extra endpoints) and
        // the jump sign [[q]] = q_i - q_e.
        const int dof[4] = {QF_i.vertex_node[fc.verts[0]], QF_i.vertex_node[fc.verts[1]],
                            ni + QF_e.vertex_node[fc.verts[0]], ni + QF_e.vertex_node[fc.verts[1]]};
        const double sign[4] = {1.0, 1.0, -1.0, -1.0};
        double local[4][4] = {};
        for (const LineQuadPoint& qp : quad.pts) {
            const double tr[4] = {1.0 - qp.t, qp.t, 1.0 - qp.t, qp.t};
            const double w = lp * len * qp.w;
            for (int a = 0; a < 4; ++a)
                for (int b = a; b < 4; ++b) local[a][b] += w * sign[a] * tr[a] * sign[b] * tr[b];
        }
        for (int a = 0; a < 4; ++a)
            for (int b = a; b < 4; ++b) {
                trip.add(dof[a], dof[b], local[a][b]);
                if (b != a) trip.add(dof[b], dof[a], local[a][b]);
            }
    }
    return SparseMatrix::from_triplets(trip);
}

std::vector<double> assemble_vector_load(const Mesh& mesh, const Space& V, const VectorField& f) {
    const TriQuadrature& quad = TriQuadrature::degree6();
    std::vector<double> F(V.ndofs, 0.0);
    for (int c = 0; c < mesh.num_cells(); ++c) {
        const CellGeometry g = cell_geometry(mesh, c);
        for (const TriQuadPoint& qp : quad.pts) {
            const BasisEval be = eval_basis(Elem::P2, qp.b0, qp.b1, qp.b2);
            const Vec2 x = map_point(g, qp.b1, qp.b2);
            const Vec2 fx = f.value(x.x, x.y);
            const double w = qp.w * g.detj;
            for (int a = 0; a < 6; ++a) {
                F[V.cell_dofs[c][2 * a]] += w * fx.x * be.val[a];
                F[V.cell_dofs[c][2 * a + 1]] += w * fx.y * be.val[a];
            }
        }
    }
    return F;
}

std::vector<double> assemble_scalar_load(const Mesh& mesh, const Space& Q, const ScalarField& g) {
    const TriQuadrature& quad = TriQuadrature::degree6();
    std::vector<double> F(Q.ndofs, 0.0);
    for (int c = 0; c < mesh.num_cells(); ++c) {
        if (!Q.active(c)) continue;
        const CellGeometry geo = cell_geometry(mesh, c);
        for (const TriQuadPoint& qp : quad.pts) {
            const BasisEval be = eval_basis(Elem::P1, qp.b0, qp.b1, qp.b2);
            const Vec2 x = map_point(geo, qp.b1, qp.b2);
            const double w = qp.w * geo.detj * g.value(x.x, x.y);
            for (int a = 0; a < 3; ++a) F[Q.cell_dofs[c][a]] += w * be.val[a];
        }
    }
    return F;
}

std::vector<double> assemble_interface_pressure_load(const Mesh& mesh, const Space& QF_i,
                                                     const Space& QF_e, double lp,
                                                     const ScalarField& p_osm) {
    const int ni = QF_i.ndofs;
    std::vector<double> F(ni + QF_e.ndofs, 0.0);
    const LineQuadrature& quad = LineQuadrature::gauss4();
    for (int f : mesh.interface_facets()) {
        const Facet& fc = mesh.facets[f];
        const double len = mesh.facet_length(f);
        const Vec2 p = mesh.vertices[fc.verts[0]], q = mesh.vertices[fc.verts[1]];
        const int dof[4] = {QF_i.vertex_node[fc.verts[0]], QF_i.vertex_node[fc.verts[1]],
                            ni + QF_e.vertex_node[fc.verts[0]], ni + QF_e.vertex_node[fc.verts[1]]};
        const double sign[4] = {1.0, 1.0, -1.0, -1.0};
        for (const LineQuadPoint& qp : quad.pts) {
            const Vec2 x = p + qp.t * (q - p);
            const double w = lp * len * qp.w * p_osm.value(x.x, x.y);
            const double tr[4] = {1.0 - qp.t, qp.t, 1.0 - qp.t, qp.t};
            for (int a = 0; a < 4; ++a) F[dof[a]] += w * sign[a] * tr[a];
        }
    }
    return F;
}

std::vector<double> assemble_interface_traction(const Mesh& mesh, const Space& V,
                                                const InterfaceVectorField& s) {
    std::vector<double> F(V.ndofs, 0.0);
    const LineQuadrature& quad = LineQuadrature::gauss4();
    for (int f : mesh.interface_facets()) {
        const Facet& fc = mesh.facets[f];
        const int cell = fc.intra_cell;  // displacement traces agree on both sides
        const double len = mesh.facet_length(f);
        const Vec2 nrm = mesh.interface_normal(f);
        const Vec2 p = mesh.vertices[fc.verts[0]], q = mesh.vertices[fc.verts[1]];
        // Locate the facet endpoints among the cell's local vertices.
        int lv0 = -1, lv1 = -1;
        for (int l = 0; l < 3; ++l) {
            if (mesh.cells[cell][l] == fc.verts[0]) lv0 = l;
            if (mesh.cells[cell][l] == fc.verts[1]) lv1 = l;
        }
        for (const LineQuadPoint& qp : quad.pts) {
            double bary[3] = {0.0, 0.0, 0.0};
            bary[lv0] = 1.0 - qp.t;
            bary[lv1] = qp.t;
            const BasisEval be = eval_basis(Elem::P2, bary[0], bary[1], bary[2]);
            const Vec2 x = p + qp.t * (q - p);
            const Vec2 sx = s(x.x, x.y, nrm);
            const double w = len * qp.w;
            for (int a = 0; a < 6; ++a) {
                F[V.cell_dofs[cell][2 * a]] += w * sx.x * be.val[a];
                F[V.cell_dofs[cell][2 * a + 1]] += w * sx.y * be.val[a];
            }
        }
    }
    return F;
}

std::vector<double> BlockVector::monolithic() const {
    std::vector<double> out;
    out.reserve(d.size() + pT.size() + pF.size());
    out.insert(out.end(), d.begin(), d.end());
    out.insert(out.end(), pT.begin(), pT.end());
    out.insert(out.end(), pF.begin(), pF.end());
    return out;
}

DirichletData displacement_dirichlet(const Mesh& mesh, const Space& V, const VectorField& value) {
    std::vector<char> seen(V.ndofs, 0);
    std::vector<double> vals(V.ndofs, 0.0);
    const int nv = mesh.num_vertices();
    auto constrain_node = [&](int node) {
        const Vec2 x = V.dof_coords[2 * node];
        const Vec2 v = value.value(x.x, x.y);
        seen[2 * node] = seen[2 * node + 1] = 1;
        vals[2 * node] = v.x;
        vals[2 * node + 1] = v.y;
    };
    for (int f = 0; f < mesh.num_facets(); ++f) {
        const Facet& fc = mesh.facets[f];
        if (fc.kind != FacetKind::Boundary || fc.disp != DispTag::Dirichlet) continue;
        constrain_node(fc.verts[0]);
        constrain_node(fc.verts[1]);
        constrain_node(nv + f);
    }
    DirichletData bc;
    for (int i = 0; i < V.ndofs; ++i)
        if (seen[i]) bc.append(i, vals[i]);
    return bc;
}

DirichletData fluid_dirichlet(const Mesh& mesh, const Space& QF, const ScalarField& value) {
    std::vector<char> seen(QF.ndofs, 0);
    std::vector<double> vals(QF.ndofs, 0.0);
    for (int f = 0; f < mesh.num_facets(); ++f) {
        const Facet& fc = mesh.facets[f];
        if (fc.kind != FacetKind::Boundary || fc.fluid != FluidTag::Pressure) continue;
        for (int v : fc.verts) {
            const int dof = QF.vertex_node[v];
            if (dof < 0) continue;
            seen[dof] = 1;
            vals[dof] = value.value(mesh.vertices[v].x, mesh.vertices[v].y);
        }
    }
    DirichletData bc;
    for (int i = 0; i < QF.ndofs; ++i)
        if (seen[i]) bc.append(i, vals[i]);
    return bc;
}

void apply_dirichlet(SparseMatrix& A, std::vector<double>& rhs, const DirichletData& bc) {
    A.eliminate_dirichlet(rhs, bc.dofs, bc.values);
}

}  // namespace porocell
