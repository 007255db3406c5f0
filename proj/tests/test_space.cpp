#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "porocell/space.hpp"

using namespace porocell;

TEST_CASE("vector P2 space: 2(#vertices + #edges) DOFs") {
    const Mesh m = build_box_mesh(2);
    const Spaces sp = build_spaces(m);
    CHECK(sp.V.ndofs == 50);  // 2 * (9 vertices + 16 edges)
}

TEST_CASE("subdomain P1 spaces duplicate the interface vertices") {
    const Mesh m = build_box_mesh(2);
    const Spaces sp = build_spaces(m);
    const int n_interface_vertices = 3;
    CHECK(sp.QF_i.ndofs + sp.QF_e.ndofs == m.num_vertices() + n_interface_vertices);
    CHECK(sp.QT_i.ndofs == sp.QF_i.ndofs);
    // total and fluid pressure spaces use the same construction
    CHECK(sp.QT_i.cell_dofs == sp.QF_i.cell_dofs);
    CHECK(sp.QT_e.cell_dofs == sp.QF_e.cell_dofs);
}

TEST_CASE("only Taylor-Hood degree 2 is supported") {
    const Mesh m = build_box_mesh(2);
    CHECK_THROWS_AS(build_spaces(m, 3), std::invalid_argument);
}

TEST_CASE("dof maps are injective per cell and cover the space") {
    const Mesh m = build_box_mesh(4);
    const Spaces sp = build_spaces(m);
    for (const Space* s : {&sp.V, &sp.QF_i, &sp.QF_e}) {
        std::vector<char> hit(s->ndofs, 0);
        for (int c = 0; c < m.num_cells(); ++c) {
            if (!s->active(c)) continue;
            std::vector<int> local;
            for (int k = 0; k < s->dofs_per_cell; ++k) {
                const int dof = s->cell_dofs[c][k];
                CHECK(dof >= 0);
                CHECK(dof < s->ndofs);
                local.push_back(dof);
                hit[dof] = 1;
            }
            std::sort(local.begin(), local.end());
            CHECK(std::adjacent_find(local.begin(), local.end()) == local.end());
        }
        for (char h : hit) CHECK(h == 1);
    }
}

TEST_CASE("basis: Lagrange property and partition of unity") {
    // P1 at vertex 0
    const BasisEval p1 = eval_basis(Elem::P1, 1.0, 0.0, 0.0);
    CHECK(p1.val[0] == doctest::Approx(1.0));
    CHECK(p1.val[1] == doctest::Approx(0.0));
    CHECK(p1.val[2] == doctest::Approx(0.0));

    // P2 at the midpoint (1/2, 1/2, 0) of the edge between vertices 0 and 1,
    // which is the edge opposite vertex 2
    const BasisEval p2 = eval_basis(Elem::P2, 0.5, 0.5, 0.0);
    for (int i = 0; i < 3; ++i) CHECK(p2.val[i] == doctest::Approx(0.0));
    CHECK(p2.val[5] == doctest::Approx(1.0));

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double b1 = dist(rng), b2 = dist(rng) * (1.0 - b1);
        const double b0 = 1.0 - b1 - b2;
        for (Elem e : {Elem::P1, Elem::P2}) {
            const BasisEval be = eval_basis(e, b0, b1, b2);
            double sum = 0.0;
            for (int i = 0; i < be.count; ++i) sum += be.val[i];
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
        }
    }
}

TEST_CASE("basis: reference gradients match central finite differences") {
    const double h = 1e-6;
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(0.05, 0.4);
    for (int trial = 0; trial < 10; ++trial) {
        const double xi = dist(rng), eta = dist(rng);
        for (Elem e : {Elem::P1, Elem::P2}) {
            const BasisEval be = eval_basis(e, 1.0 - xi - eta, xi, eta);
            const BasisEval xp = eval_basis(e, 1.0 - (xi + h) - eta, xi + h, eta);
            const BasisEval xm = eval_basis(e, 1.0 - (xi - h) - eta, xi - h, eta);
            const BasisEval yp = eval_basis(e, 1.0 - xi - (eta + h), xi, eta + h);
            const BasisEval ym = eval_basis(e, 1.0 - xi - (eta - h), xi, eta - h);
            for (int i = 0; i < be.count; ++i) {
                CHECK(be.grad_ref[i].x ==
                      doctest::Approx((xp.val[i] - xm.val[i]) / (2 * h)).epsilon(1e-8));
                CHECK(be.grad_ref[i].y ==
                      doctest::Approx((yp.val[i] - ym.val[i]) / (2 * h)).epsilon(1e-8));
            }
        }
    }
}

namespace {

ScalarField linear_field() {
    return {[](double x, double y) { return 2.0 * x - 3.0 * y + 0.5; },
            [](double, double) { return Vec2{2.0, -3.0}; }};
}

ScalarField trig_field() {
    const double pi = std::numbers::pi;
    return {[pi](double x, double y) { return std::sin(pi * x) * std::cos(3.4 * pi * y); },
            [pi](double x, double y) {
                return Vec2{pi * std::cos(pi * x) * std::cos(3.4 * pi * y),
                            -3.4 * pi * std::sin(pi * x) * std::sin(3.4 * pi * y)};
            }};
}

}  // namespace

TEST_CASE("error norms: interpolant of a linear field is exact in P1") {
    const Mesh m = build_box_mesh(4);
    const Space q = build_scalar_p1(m, Region::All);
    const auto coeffs = interpolate(q, linear_field());
    const ErrorNorms e = error_norms(m, q, coeffs, linear_field());
    CHECK(e.l2 < 1e-13);
    CHECK(e.h1_semi < 1e-12);
}

TEST_CASE("error norms: zero coefficients against f = 1 give L2 error 1") {
    const Mesh m = build_box_mesh(4);
    const Space q = build_scalar_p1(m, Region::All);
    const std::vector<double> zero(q.ndofs, 0.0);
    const ScalarField one{[](double, double) { return 1.0; },
                          [](double, double) { return Vec2{0.0, 0.0}; }};
    const ErrorNorms e = error_norms(m, q, zero, one);
    CHECK(e.l2 == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("P1 interpolation converges at second order in L2") {
    const ScalarField f = trig_field();
    std::vector<double> errors;
    for (int n : {8, 16, 32}) {
        const Mesh m = build_box_mesh(n);
        const Space q = build_scalar_p1(m, Region::All);
        const auto coeffs = interpolate(q, f);
        errors.push_back(error_norms(m, q, coeffs, f).l2);
    }
    const double eoc1 = std::log2(errors[0] / errors[1]);
    const double eoc2 = std::log2(errors[1] / errors[2]);
    CHECK(eoc1 == doctest::Approx(2.0).epsilon(0.08));
    CHECK(eoc2 == doctest::Approx(2.0).epsilon(0.04));
}

TEST_CASE("vector interpolation reproduces quadratic fields") {
    const Mesh m = build_box_mesh(2);
    const Spaces sp = build_spaces(m);
    const VectorField f{[](double x, double y) { return Vec2{x * x, y}; },
                        [](double x, double) {
                            Mat2 g;
                            g.g[0][0] = 2.0 * x;
                            g.g[1][1] = 1.0;
                            return g;
                        }};
    const auto u = interpolate(sp.V, f);
    const ErrorNorms e = error_norms(m, sp.V, u, f);
    CHECK(e.l2 < 1e-13);
    CHECK(e.h1_semi < 1e-12);
}
