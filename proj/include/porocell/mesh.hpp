// Interface-conforming structured triangulations of the unit square,
// split into an intracellular and an extracellular subdomain by a
// vertical membrane line.
#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace porocell {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

enum class Subdomain : std::uint8_t { Intra, Extra };

// Displacement boundary tags: clamped (Gamma_d) or traction (Gamma_t).
enum class DispTag : std::uint8_t { None, Dirichlet, Traction };

// Fluid boundary tags: prescribed pressure (Gamma_p) or no-flux (Gamma_f).
enum class FluidTag : std::uint8_t { None, Pressure, Flux };

enum class FacetKind : std::uint8_t { Interior, Boundary, Interface };

enum class Side : std::uint8_t { Left, Right, Bottom, Top };

struct Facet {
    std::array<int, 2> verts{-1, -1};  // endpoint vertex indices, v0 < v1
    std::array<int, 2> cells{-1, -1};  // incident cells; cells[1] < 0 on the boundary
    FacetKind kind = FacetKind::Interior;
    DispTag disp = DispTag::None;
    FluidTag fluid = FluidTag::None;
    int intra_cell = -1;  // interface facets: the cell on the Omega_i side
};

struct Mesh {
    std::vector<Vec2> vertices;
    std::vector<std::array<int, 3>> cells;  // counterclockwise vertex triples
    std::vector<Subdomain> cell_subdomain;
    std::vector<Facet> facets;
    std::vector<std::array<int, 3>> cell_facets;  // facet opposite local vertex l
    double interface_x = 0.5;
    int n = 0;  // cells per side of the generating grid

    int num_vertices() const { return static_cast<int>(vertices.size()); }
    int num_cells() const { return static_cast<int>(cells.size()); }
    int num_facets() const { return static_cast<int>(facets.size()); }

    double cell_area(int c) const;
    Vec2 centroid(int c) const;

    // Unit normal of facet f pointing out of cell c (c must be incident).
    Vec2 outward_normal(int f, int c) const;
    // Unit normal of an interface facet, oriented from Omega_i into Omega_e.
    Vec2 interface_normal(int f) const;
    double facet_length(int f) const;

    std::vector<int> boundary_facets() const;
    std::vector<int> interface_facets() const;

    // Plain-text dump (vertices, cells, tags); format documented in the README.
    void write_text(std::ostream& os) const;
};

// Axis-aligned boundary partition of the unit square. Facets on a side
// listed in `dirichlet` are clamped (Gamma_d), the rest carry traction
// conditions (Gamma_t); facets on a side in `pressure` get prescribed
// fluid pressure (Gamma_p), the rest are no-flux (Gamma_f).
struct BoundaryConfig {
    std::vector<Side> dirichlet;
    std::vector<Side> pressure;

    // Gamma_d = {x=0}, traction elsewhere; no-flux fluid everywhere.
    static BoundaryConfig mixed();
    // Clamped displacement on the whole boundary; no-flux fluid everywhere.
    static BoundaryConfig full_dirichlet();
    // Clamped displacement and prescribed fluid pressure on the whole boundary.
    static BoundaryConfig all_dirichlet();
};

// Right-diagonal triangulation of (0,1)^2 with 2n^2 cells. The membrane
// line x = interface_x must coincide with a grid line, i.e. interface_x * n
// must be an integer strictly between 0 and n.
Mesh build_box_mesh(int n, double interface_x = 0.5);

// Tags every boundary facet with exactly one displacement and one fluid tag.
// Throws if the resulting Gamma_d is empty (rigid body modes).
void mark_boundaries(Mesh& mesh, const BoundaryConfig& bc);

}  // namespace porocell
