#include "porocell/quadrature.hpp"

namespace porocell {

namespace {

// Appends the three permutations of (a, b, b); weights are given relative to
// unit total and scaled to the reference-triangle area 1/2.
void push_perm3(std::vector<TriQuadPoint>& pts, double a, double b, double w) {
    pts.push_back({a, b, b, 0.5 * w});
    pts.push_back({b, a, b, 0.5 * w});
    pts.push_back({b, b, a, 0.5 * w});
}

void push_perm6(std::vector<TriQuadPoint>& pts, double a, double b, double c, double w) {
    pts.push_back({a, b, c, 0.5 * w});
    pts.push_back({a, c, b, 0.5 * w});
    pts.push_back({b, a, c, 0.5 * w});
    pts.push_back({b, c, a, 0.5 * w});
    pts.push_back({c, a, b, 0.5 * w});
    pts.push_back({c, b, a, 0.5 * w});
}

}  // namespace

const TriQuadrature& TriQuadrature::degree4() {
    static const TriQuadrature rule = [] {
        TriQuadrature q;
        q.degree = 4;
        push_perm3(q.pts, 0.108103018168070, 0.445948490915965, 0.223381589678011);
        push_perm3(q.pts, 0.816847572980459, 0.091576213509771, 0.109951743655322);
        return q;
    }();
    return rule;
}

const TriQuadrature& TriQuadrature::degree6() {
    static const TriQuadrature rule = [] {
        TriQuadrature q;
        q.degree = 6;
        push_perm3(q.pts, 0.873821971016996, 0.063089014491502, 0.050844906370207);
        push_perm3(q.pts, 0.501426509658179, 0.249286745170910, 0.116786275726379);
        push_perm6(q.pts, 0.636502499121399, 0.310352451033785, 0.053145049844816,
                   0.082851075618374);
        return q;
    }();
    return rule;
}

const LineQuadrature& LineQuadrature::gauss2() {
    static const LineQuadrature rule = [] {
        LineQuadrature q;
        q.degree = 3;
        const double d = 0.5 / 1.7320508075688772;  // 1/(2*sqrt(3))
        q.pts = {{0.5 - d, 0.5}, {0.5 + d, 0.5}};
        return q;
    }();
    return rule;
}

const LineQuadrature& LineQuadrature::gauss4() {
    static const LineQuadrature rule = [] {
        LineQuadrature q;
        q.degree = 7;
        const double x1 = 0.3399810435848563, w1 = 0.6521451548625461;
        const double x2 = 0.8611363115940526, w2 = 0.3478548451374538;
        q.pts = {{0.5 * (1 - x2), 0.5 * w2},
                 {0.5 * (1 - x1), 0.5 * w1},
                 {0.5 * (1 + x1), 0.5 * w1},
                 {0.5 * (1 + x2), 0.5 * w2}};
        return q;
    }();
    return rule;
}

}  // namespace porocell
