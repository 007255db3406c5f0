#include "porocell/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <stdexcept>

namespace porocell {

double Mesh::cell_area(int c) const {
    const auto& t = cells[c];
    const Vec2 a = vertices[t[0]], b = vertices[t[1]], d = vertices[t[2]];
    return 0.5 * ((b.x - a.x) * (d.y - a.y) - (b.y - a.y) * (d.x - a.x));
}

Vec2 Mesh::centroid(int c) const {
    const auto& t = cells[c];
    return (1.0 / 3.0) * (vertices[t[0]] + vertices[t[1]] + vertices[t[2]]);
}

Vec2 Mesh::outward_normal(int f, int c) const {
    const Facet& fc = facets[f];
    const Vec2 p = vertices[fc.verts[0]], q = vertices[fc.verts[1]];
    Vec2 tangent = q - p;
    const double len = std::sqrt(dot(tangent, tangent));
    Vec2 nrm{tangent.y / len, -tangent.x / len};
    // Orient away from the cell centroid.
    const Vec2 mid = 0.5 * (p + q);
    if (dot(nrm, mid - centroid(c)) < 0.0) nrm = -1.0 * nrm;
    return nrm;
}

Vec2 Mesh::interface_normal(int f) const {
    const Facet& fc = facets[f];
    if (fc.kind != FacetKind::Interface || fc.intra_cell < 0)
        throw std::invalid_argument("interface_normal: facet is not an interface facet");
    return outward_normal(f, fc.intra_cell);
}

double Mesh::facet_length(int f) const {
    const Facet& fc = facets[f];
    const Vec2 d = vertices[fc.verts[1]] - vertices[fc.verts[0]];
    return std::sqrt(dot(d, d));
}

std::vector<int> Mesh::boundary_facets() const {
    std::vector<int> out;
    for (int f = 0; f < num_facets(); ++f)
        if (facets[f].kind == FacetKind::Boundary) out.push_back(f);
    return out;
}

std::vector<int> Mesh::interface_facets() const {
    std::vector<int> out;
    for (int f = 0; f < num_facets(); ++f)
        if (facets[f].kind == FacetKind::Interface) out.push_back(f);
    return out;
}

namespace {

const char* subdomain_name(Subdomain s) { return s == Subdomain::Intra ? "intra" : "extra"; }

const char* facet_tag_name(const Facet& f) {
    switch (f.kind) {
        case FacetKind::Interface: return "interface";
        case FacetKind::Interior: return "interior";
        case FacetKind::Boundary: return "boundary";
    }
    return "?";
}

}  // namespace

void Mesh::write_text(std::ostream& os) const {
    os << "porocell-mesh 1\n";
    os << "vertices " << num_vertices() << "\n";
    for (const Vec2& v : vertices) os << v.x << " " << v.y << "\n";
    os << "cells " << num_cells() << "\n";
    for (int c = 0; c < num_cells(); ++c) {
        const auto& t = cells[c];
        os << t[0] << " " << t[1] << " " << t[2] << " " << subdomain_name(cell_subdomain[c])
           << "\n";
    }
    os << "facets " << num_facets() << "\n";
    for (const Facet& f : facets) {
        os << f.verts[0] << " " << f.verts[1] << " " << facet_tag_name(f);
        if (f.kind == FacetKind::Boundary) {
            os << " disp="
               << (f.disp == DispTag::Dirichlet ? "dirichlet"
                                                : (f.disp == DispTag::Traction ? "traction" : "none"))
               << " fluid="
               << (f.fluid == FluidTag::Pressure ? "pressure"
                                                 : (f.fluid == FluidTag::Flux ? "flux" : "none"));
        }
        os << "\n";
    }
}

BoundaryConfig BoundaryConfig::mixed() {
    BoundaryConfig bc;
    bc.dirichlet = {Side::Left};
    return bc;
}

BoundaryConfig BoundaryConfig::full_dirichlet() {
    BoundaryConfig bc;
    bc.dirichlet = {Side::Left, Side::Right, Side::Bottom, Side::Top};
    return bc;
}

BoundaryConfig BoundaryConfig::all_dirichlet() {
    BoundaryConfig bc = full_dirichlet();
    bc.pressure = bc.dirichlet;
    return bc;
}

Mesh build_box_mesh(int n, double interface_x) {
    if (n < 2) throw std::invalid_argument("build_box_mesh: need n >= 2");
    const double col = interface_x * n;
    const int icol = static_cast<int>(std::lround(col));
    if (std::abs(col - icol) > 1e-12 || icol <= 0 || icol >= n)
        throw std::invalid_argument(
            "build_box_mesh: interface_x must fall on an interior grid line (interface_x * n "
            "integral)");

    Mesh mesh;
    mesh.n = n;
    const double h = 1.0 / n;
    // Vertices on the interface line are placed exactly.
    mesh.interface_x = icol * h;

    mesh.vertices.resize(static_cast<std::size_t>((n + 1) * (n + 1)));
    auto vid = [n](int i, int j) { return j * (n + 1) + i; };
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i) mesh.vertices[vid(i, j)] = {i * h, j * h};

    // Each grid square is split by the diagonal from its lower-left to its
    // upper-right corner.
    mesh.cells.reserve(static_cast<std::size_t>(2 * n * n));
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const int v00 = vid(i, j), v10 = vid(i + 1, j);
            const int v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
            mesh.cells.push_back({v00, v10, v11});
            mesh.cells.push_back({v00, v11, v01});
        }
    }

    mesh.cell_subdomain.resize(mesh.cells.size());
    for (int c = 0; c < mesh.num_cells(); ++c) {
        const double cx = mesh.centroid(c).x;
        mesh.cell_subdomain[c] = cx > mesh.interface_x ? Subdomain::Intra : Subdomain::Extra;
    }

    // Facet connectivity: local facet l of a cell is the edge opposite local
    // vertex l.
    std::map<std::pair<int, int>, int> edge_ids;
    mesh.cell_facets.resize(mesh.cells.size());
    for (int c = 0; c < mesh.num_cells(); ++c) {
        const auto& t = mesh.cells[c];
        for (int l = 0; l < 3; ++l) {
            int a = t[(l + 1) % 3], b = t[(l + 2) % 3];
            if (a > b) std::swap(a, b);
            auto [it, inserted] = edge_ids.try_emplace({a, b}, mesh.num_facets());
            if (inserted) {
                Facet f;
                f.verts = {a, b};
                f.cells = {c, -1};
                mesh.facets.push_back(f);
            } else {
                mesh.facets[it->second].cells[1] = c;
            }
            mesh.cell_facets[c][l] = it->second;
        }
    }

    for (Facet& f : mesh.facets) {
        if (f.cells[1] < 0) {
            f.kind = FacetKind::Boundary;
            continue;
        }
        const Subdomain s0 = mesh.cell_subdomain[f.cells[0]];
        const Subdomain s1 = mesh.cell_subdomain[f.cells[1]];
        if (s0 != s1) {
            f.kind = FacetKind::Interface;
            f.intra_cell = s0 == Subdomain::Intra ? f.cells[0] : f.cells[1];
        }
    }
    return mesh;
}

namespace {

bool on_side(const Mesh& mesh, const Facet& f, Side s) {
    const Vec2 a = mesh.vertices[f.verts[0]], b = mesh.vertices[f.verts[1]];
    const double tol = 1e-12;
    switch (s) {
        case Side::Left: return std::abs(a.x) < tol && std::abs(b.x) < tol;
        case Side::Right: return std::abs(a.x - 1.0) < tol && std::abs(b.x - 1.0) < tol;
        case Side::Bottom: return std::abs(a.y) < tol && std::abs(b.y) < tol;
        case Side::Top: return std::abs(a.y - 1.0) < tol && std::abs(b.y - 1.0) < tol;
    }
    return false;
}

}  // namespace

void mark_boundaries(Mesh& mesh, const BoundaryConfig& bc) {
    int n_dirichlet = 0;
    for (Facet& f : mesh.facets) {
        if (f.kind != FacetKind::Boundary) continue;
        f.disp = DispTag::Traction;
        f.fluid = FluidTag::Flux;
        for (Side s : bc.dirichlet)
            if (on_side(mesh, f, s)) f.disp = DispTag::Dirichlet;
        for (Side s : bc.pressure)
            if (on_side(mesh, f, s)) f.fluid = FluidTag::Pressure;
        if (f.disp == DispTag::Dirichlet) ++n_dirichlet;
    }
    if (n_dirichlet == 0)
        throw std::invalid_argument(
            "mark_boundaries: Gamma_d is empty; the displacement must be clamped on a nonzero "
            "part of the boundary");
}

}  // namespace porocell
