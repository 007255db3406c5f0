// Test-only oracles, independent of the library's assembly path: element
// integrals are evaluated in closed form from barycentric monomial formulas
// (int_T l0^a l1^b l2^c = 2A a! b! c! / (a+b+c+2)!) instead of quadrature,
// and dense comparisons/solves go through Eigen.
#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>

#include "porocell/mesh.hpp"
#include "porocell/space.hpp"
#include "porocell/sparse.hpp"

namespace oracle {

using porocell::Mesh;
using porocell::Space;
using porocell::Vec2;

// Linear polynomial in barycentric coordinates: c[0] + c[1] l0 + c[2] l1 + c[3] l2.
using BaryLinear = std::array<double, 4>;

struct CellFrame {
    double area;
    Vec2 grad_l[3];  // physical gradients of the barycentric coordinates
};

inline CellFrame cell_frame(const Mesh& mesh, int c) {
    const auto& t = mesh.cells[c];
    const Vec2 p[3] = {mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]};
    CellFrame f;
    f.area = mesh.cell_area(c);
    for (int i = 0; i < 3; ++i) {
        const Vec2 e = p[(i + 2) % 3] - p[(i + 1) % 3];
        f.grad_l[i] = {-e.y / (2.0 * f.area), e.x / (2.0 * f.area)};
    }
    return f;
}

// int_T (a0 + sum a_m l_m)(b0 + sum b_m l_m) dx.
inline double integrate_product(const BaryLinear& a, const BaryLinear& b, double area) {
    double v = a[0] * b[0] * area;
    for (int m = 0; m < 3; ++m) v += (a[0] * b[1 + m] + b[0] * a[1 + m]) * area / 3.0;
    for (int m = 0; m < 3; ++m)
        for (int n = 0; n < 3; ++n) v += a[1 + m] * b[1 + n] * area * (m == n ? 1.0 / 6.0 : 1.0 / 12.0);
    return v;
}

struct GradPoly {
    BaryLinear x{}, y{};  // each gradient component as a barycentric-linear polynomial
};

// Gradients of the six P2 basis functions: vertices then edge midpoints
// (edge k opposite vertex k), matching the library's local ordering.
inline std::array<GradPoly, 6> p2_gradients(const CellFrame& f) {
    std::array<GradPoly, 6> g{};
    for (int i = 0; i < 3; ++i) {  // phi_i = l_i (2 l_i - 1), grad = (4 l_i - 1) grad_l_i
        g[i].x[0] = -f.grad_l[i].x;
        g[i].y[0] = -f.grad_l[i].y;
        g[i].x[1 + i] = 4.0 * f.grad_l[i].x;
        g[i].y[1 + i] = 4.0 * f.grad_l[i].y;
    }
    for (int k = 0; k < 3; ++k) {  // phi_{3+k} = 4 l_i l_j, grad = 4(l_i grad_l_j + l_j grad_l_i)
        const int i = (k + 1) % 3, j = (k + 2) % 3;
        g[3 + k].x[1 + i] += 4.0 * f.grad_l[j].x;
        g[3 + k].y[1 + i] += 4.0 * f.grad_l[j].y;
        g[3 + k].x[1 + j] += 4.0 * f.grad_l[i].x;
        g[3 + k].y[1 + j] += 4.0 * f.grad_l[i].y;
    }
    return g;
}

// Dense (eps(d), eps(v)) over the whole mesh.
inline Eigen::MatrixXd dense_elasticity(const Mesh& mesh, const Space& V) {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(V.ndofs, V.ndofs);
    for (int c = 0; c < mesh.num_cells(); ++c) {
        const CellFrame f = cell_frame(mesh, c);
        const auto g = p2_gradients(f);
        for (int a = 0; a < 6; ++a)
            for (int b = 0; b < 6; ++b) {
                const double xx = integrate_product(g[a].x, g[b].x, f.area);
                const double yy = integrate_product(g[a].y, g[b].y, f.area);
                const double xy = integrate_product(g[a].x, g[b].y, f.area);
                const double yx = integrate_product(g[a].y, g[b].x, f.area);
                // eps(phi_a e_c) : eps(phi_b e_d) expanded per component pair
                const double k00 = xx + 0.5 * yy;
                const double k01 = 0.5 * yx;
                const double k10 = 0.5 * xy;
                const double k11 = yy + 0.5 * xx;
                A(V.cell_dofs[c][2 * a], V.cell_dofs[c][2 * b]) += k00;
                A(V.cell_dofs[c][2 * a], V.cell_dofs[c][2 * b + 1]) += k01;
                A(V.cell_dofs[c][2 * a + 1], V.cell_dofs[c][2 * b]) += k10;
                A(V.cell_dofs[c][2 * a + 1], V.cell_dofs[c][2 * b + 1]) += k11;
            }
    }
    return A;
}

// Dense -(div v, q) over Q's region; rows Q, cols V.
inline Eigen::MatrixXd dense_div_coupling(const Mesh& mesh, const Space& V, const Space& Q) {
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(Q.ndofs, V.ndofs);
    for (int c = 0; c < mesh.num_cells(); ++c) {
        if (!Q.active(c)) continue;
        const CellFrame f = cell_frame(mesh, c);
        const auto g = p2_gradients(f);
        for (int q = 0; q < 3; ++q) {
            BaryLinear lq{};
            lq[1 + q] = 1.0;
            for (int a = 0; a < 6; ++a) {
                B(Q.cell_dofs[c][q], V.cell_dofs[c][2 * a]) -= integrate_product(g[a].x, lq, f.area);
                B(Q.cell_dofs[c][q], V.cell_dofs[c][2 * a + 1]) -=
                    integrate_product(g[a].y, lq, f.area);
            }
        }
    }
    return B;
}

// Dense weighted P1 mass over the shared region of Qa and Qb.
inline Eigen::MatrixXd dense_mass(const Mesh& mesh, const Space& Qa, const Space& Qb, double w) {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(Qa.ndofs, Qb.ndofs);
    for (int c = 0; c < mesh.num_cells(); ++c) {
        if (!Qa.active(c)) continue;
        const double area = mesh.cell_area(c);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                M(Qa.cell_dofs[c][a], Qb.cell_dofs[c][b]) += w * area * (a == b ? 1.0 : 0.5) / 6.0;
    }
    return M;
}

// Dense kappa-weighted P1 stiffness over Q's region.
inline Eigen::MatrixXd dense_stiffness(const Mesh& mesh, const Space& Q, double kappa) {
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(Q.ndofs, Q.ndofs);
    for (int c = 0; c < mesh.num_cells(); ++c) {
        if (!Q.active(c)) continue;
        const CellFrame f = cell_frame(mesh, c);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                K(Q.cell_dofs[c][a], Q.cell_dofs[c][b]) +=
                    kappa * f.area * porocell::dot(f.grad_l[a], f.grad_l[b]);
    }
    return K;
}

// Dense membrane jump form over the concatenated (intra, extra) fluid DOFs,
// from the closed-form 1D mass matrix (L/3 diagonal, L/6 off-diagonal).
inline Eigen::MatrixXd dense_interface_jump(const Mesh& mesh, const Space& QF_i, const Space& QF_e,
                                            double lp) {
    const int ni = QF_i.ndofs;
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(ni + QF_e.ndofs, ni + QF_e.ndofs);
    for (int fidx : mesh.interface_facets()) {
        const auto& fc = mesh.facets[fidx];
        const double L = mesh.facet_length(fidx);
        const int dof[4] = {QF_i.vertex_node[fc.verts[0]], QF_i.vertex_node[fc.verts[1]],
                            ni + QF_e.vertex_node[fc.verts[0]], ni + QF_e.vertex_node[fc.verts[1]]};
        const double sgn[4] = {1, 1, -1, -1};
        const double m1d[2][2] = {{L / 3.0, L / 6.0}, {L / 6.0, L / 3.0}};
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                T(dof[a], dof[b]) += lp * sgn[a] * sgn[b] * m1d[a % 2][b % 2];
    }
    return T;
}

inline Eigen::MatrixXd to_dense(const porocell::SparseMatrix& A) {
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(A.rows(), A.cols());
    for (int i = 0; i < A.rows(); ++i)
        for (int k = A.row_ptr()[i]; k < A.row_ptr()[i + 1]; ++k)
            D(i, A.col_idx()[k]) += A.values()[k];
    return D;
}

inline std::vector<double> dense_solve(const Eigen::MatrixXd& A, const std::vector<double>& b) {
    Eigen::Map<const Eigen::VectorXd> bm(b.data(), static_cast<Eigen::Index>(b.size()));
    Eigen::VectorXd x = Eigen::FullPivLU<Eigen::MatrixXd>(A).solve(bm);
    return std::vector<double>(x.data(), x.data() + x.size());
}

}  // namespace oracle
