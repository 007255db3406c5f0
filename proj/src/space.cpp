#include "porocell/space.hpp"

#include <cmath>
#include <stdexcept>

#include "porocell/quadrature.hpp"

namespace porocell {

BasisEval eval_basis(Elem elem, double b0, double b1, double b2) {
    BasisEval e;
    // Reference gradients of the barycentric coordinates.
    static constexpr Vec2 gl[3] = {{-1.0, -1.0}, {1.0, 0.0}, {0.0, 1.0}};
    const double l[3] = {b0, b1, b2};
    if (elem == Elem::P1) {
        e.count = 3;
        for (int i = 0; i < 3; ++i) {
            e.val[i] = l[i];
            e.grad_ref[i] = gl[i];
        }
        return e;
    }
    e.count = 6;
    for (int i = 0; i < 3; ++i) {
        e.val[i] = l[i] * (2.0 * l[i] - 1.0);
        e.grad_ref[i] = (4.0 * l[i] - 1.0) * gl[i];
    }
    // Edge function 3+k belongs to the edge opposite vertex k.
    for (int k = 0; k < 3; ++k) {
        const int i = (k + 1) % 3, j = (k + 2) % 3;
        e.val[3 + k] = 4.0 * l[i] * l[j];
        e.grad_ref[3 + k] = 4.0 * l[i] * gl[j] + 4.0 * l[j] * gl[i];
    }
    return e;
}

namespace {

bool cell_in_region(const Mesh& mesh, int c, Region r) {
    if (r == Region::All) return true;
    return mesh.cell_subdomain[c] == (r == Region::Intra ? Subdomain::Intra : Subdomain::Extra);
}

}  // namespace

Space build_vector_p2(const Mesh& mesh) {
    Space s;
    s.kind = SpaceKind::VectorP2;
    s.region = Region::All;
    s.dofs_per_cell = 12;
    const int nv = mesh.num_vertices();
    const int ne = mesh.num_facets();
    s.vertex_node.resize(nv);
    s.edge_node.resize(ne);
    for (int v = 0; v < nv; ++v) s.vertex_node[v] = v;
    for (int f = 0; f < ne; ++f) s.edge_node[f] = nv + f;
    const int nodes = nv + ne;
    s.ndofs = 2 * nodes;
    s.dof_coords.resize(s.ndofs);
    for (int v = 0; v < nv; ++v) s.dof_coords[2 * v] = s.dof_coords[2 * v + 1] = mesh.vertices[v];
    for (int f = 0; f < ne; ++f) {
        const Facet& fc = mesh.facets[f];
        const Vec2 mid = 0.5 * (mesh.vertices[fc.verts[0]] + mesh.vertices[fc.verts[1]]);
        s.dof_coords[2 * (nv + f)] = s.dof_coords[2 * (nv + f) + 1] = mid;
    }
    s.cell_dofs.assign(mesh.num_cells(), {});
    for (int c = 0; c < mesh.num_cells(); ++c) {
        auto& cd = s.cell_dofs[c];
        for (int lv = 0; lv < 3; ++lv) {
            const int node = mesh.cells[c][lv];
            cd[2 * lv] = 2 * node;
            cd[2 * lv + 1] = 2 * node + 1;
        }
        for (int le = 0; le < 3; ++le) {
            const int node = nv + mesh.cell_facets[c][le];
            cd[6 + 2 * le] = 2 * node;
            cd[6 + 2 * le + 1] = 2 * node + 1;
        }
    }
    return s;
}

Space build_scalar_p1(const Mesh& mesh, Region region) {
    Space s;
    s.kind = SpaceKind::ScalarP1;
    s.region = region;
    s.dofs_per_cell = 3;
    s.vertex_node.assign(mesh.num_vertices(), -1);
    // Deterministic numbering: vertices in index order, restricted to the
    // region's cells. Interface vertices appear in both subdomain spaces.
    std::vector<bool> present(mesh.num_vertices(), false);
    for (int c = 0; c < mesh.num_cells(); ++c) {
        if (!cell_in_region(mesh, c, region)) continue;
        for (int lv = 0; lv < 3; ++lv) present[mesh.cells[c][lv]] = true;
    }
    for (int v = 0; v < mesh.num_vertices(); ++v) {
        if (present[v]) {
            s.vertex_node[v] = s.ndofs++;
            s.dof_coords.push_back(mesh.vertices[v]);
        }
    }
    s.cell_dofs.assign(mesh.num_cells(), {});
    for (int c = 0; c < mesh.num_cells(); ++c) {
        auto& cd = s.cell_dofs[c];
        if (!cell_in_region(mesh, c, region)) {
            cd[0] = -1;
            continue;
        }
        for (int lv = 0; lv < 3; ++lv) cd[lv] = s.vertex_node[mesh.cells[c][lv]];
    }
    return s;
}

Spaces build_spaces(const Mesh& mesh, int degree) {
    if (degree != 2)
        throw std::invalid_argument("build_spaces: only the Taylor-Hood degree s = 2 is supported");
    Spaces sp;
    sp.V = build_vector_p2(mesh);
    sp.QT_i = build_scalar_p1(mesh, Region::Intra);
    sp.QT_e = build_scalar_p1(mesh, Region::Extra);
    sp.QF_i = build_scalar_p1(mesh, Region::Intra);
    sp.QF_e = build_scalar_p1(mesh, Region::Extra);
    return sp;
}

std::vector<double> interpolate(const Space& space, const ScalarField& f) {
    if (space.kind != SpaceKind::ScalarP1)
        throw std::invalid_argument("interpolate: scalar field on a vector space");
    std::vector<double> u(space.ndofs);
    for (int i = 0; i < space.ndofs; ++i) u[i] = f.value(space.dof_coords[i].x, space.dof_coords[i].y);
    return u;
}

std::vector<double> interpolate(const Space& space, const VectorField& f) {
    if (space.kind != SpaceKind::VectorP2)
        throw std::invalid_argument("interpolate: vector field on a scalar space");
    std::vector<double> u(space.ndofs);
    for (int i = 0; i < space.ndofs; i += 2) {
        const Vec2 v = f.value(space.dof_coords[i].x, space.dof_coords[i].y);
        u[i] = v.x;
        u[i + 1] = v.y;
    }
    return u;
}

CellGeometry cell_geometry(const Mesh& mesh, int c) {
    const auto& t = mesh.cells[c];
    CellGeometry g;
    g.p0 = mesh.vertices[t[0]];
    const Vec2 e1 = mesh.vertices[t[1]] - g.p0;
    const Vec2 e2 = mesh.vertices[t[2]] - g.p0;
    g.j[0][0] = e1.x;
    g.j[0][1] = e2.x;
    g.j[1][0] = e1.y;
    g.j[1][1] = e2.y;
    g.detj = e1.x * e2.y - e1.y * e2.x;
    const double inv = 1.0 / g.detj;
    // J^{-T} = 1/det [[ e2.y, -e1.y ], [ -e2.x, e1.x ]]
    g.jinvT[0][0] = e2.y * inv;
    g.jinvT[0][1] = -e1.y * inv;
    g.jinvT[1][0] = -e2.x * inv;
    g.jinvT[1][1] = e1.x * inv;
    return g;
}

Vec2 physical_grad(const CellGeometry& g, Vec2 grad_ref) {
    return {g.jinvT[0][0] * grad_ref.x + g.jinvT[0][1] * grad_ref.y,
            g.jinvT[1][0] * grad_ref.x + g.jinvT[1][1] * grad_ref.y};
}

Vec2 map_point(const CellGeometry& g, double b1, double b2) {
    return {g.p0.x + g.j[0][0] * b1 + g.j[0][1] * b2, g.p0.y + g.j[1][0] * b1 + g.j[1][1] * b2};
}

ErrorNorms error_norms(const Mesh& mesh, const Space& space, const std::vector<double>& coeffs,
                       const ScalarField& exact) {
    const TriQuadrature& quad = TriQuadrature::degree6();
    double l2 = 0.0, h1 = 0.0;
    for (int c = 0; c < mesh.num_cells(); ++c) {
        if (!space.active(c)) continue;
        const CellGeometry g = cell_geometry(mesh, c);
        for (const TriQuadPoint& qp : quad.pts) {
            const BasisEval be = eval_basis(Elem::P1, qp.b0, qp.b1, qp.b2);
            const Vec2 x = map_point(g, qp.b1, qp.b2);
            double uh = 0.0;
            Vec2 guh{0, 0};
            for (int a = 0; a < 3; ++a) {
                const double ca = coeffs[space.cell_dofs[c][a]];
                uh += ca * be.val[a];
                const Vec2 ga = physical_grad(g, be.grad_ref[a]);
                guh.x += ca * ga.x;
                guh.y += ca * ga.y;
            }
            const double w = qp.w * g.detj;
            const double de = uh - exact.value(x.x, x.y);
            const Vec2 ge = exact.grad(x.x, x.y);
            l2 += w * de * de;
            h1 += w * ((guh.x - ge.x) * (guh.x - ge.x) + (guh.y - ge.y) * (guh.y - ge.y));
        }
    }
    return {std::sqrt(l2), std::sqrt(h1)};
}

ErrorNorms error_norms(const Mesh& mesh, const Space& space, const std::vector<double>& coeffs,
                       const VectorField& exact) {
    const TriQuadrature& quad = TriQuadrature::degree6();
    double l2 = 0.0, h1 = 0.0;
    for (int c = 0; c < mesh.num_cells(); ++c) {
        if (!space.active(c)) continue;
        const CellGeometry g = cell_geometry(mesh, c);
        for (const TriQuadPoint& qp : quad.pts) {
            const BasisEval be = eval_basis(Elem::P2, qp.b0, qp.b1, qp.b2);
            const Vec2 x = map_point(g, qp.b1, qp.b2);
            Vec2 uh{0, 0};
            Mat2 guh;
            for (int a = 0; a < 6; ++a) {
                const double cx = coeffs[space.cell_dofs[c][2 * a]];
                const double cy = coeffs[space.cell_dofs[c][2 * a + 1]];
                uh.x += cx * be.val[a];
                uh.y += cy * be.val[a];
                const Vec2 ga = physical_grad(g, be.grad_ref[a]);
                guh.g[0][0] += cx * ga.x;
                guh.g[0][1] += cx * ga.y;
                guh.g[1][0] += cy * ga.x;
                guh.g[1][1] += cy * ga.y;
            }
            const double w = qp.w * g.detj;
            const Vec2 ue = exact.value(x.x, x.y);
            const Mat2 ge = exact.grad(x.x, x.y);
            l2 += w * ((uh.x - ue.x) * (uh.x - ue.x) + (uh.y - ue.y) * (uh.y - ue.y));
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    const double d = guh.g[i][j] - ge.g[i][j];
                    h1 += w * d * d;
                }
        }
    }
    return {std::sqrt(l2), std::sqrt(h1)};
}

}  // namespace porocell
