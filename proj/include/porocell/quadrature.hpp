// Symmetric triangle quadrature rules (barycentric) and Gauss rules on [0,1].
#pragma once

#include <vector>

namespace porocell {

struct TriQuadPoint {
    double b0, b1, b2;  // barycentric coordinates
    double w;           // weight; rule weights sum to the reference area 1/2
};

struct TriQuadrature {
    int degree = 0;  // highest polynomial degree integrated exactly
    std::vector<TriQuadPoint> pts;

    // 6-point rule, exact through degree 4 (all bilinear forms).
    static const TriQuadrature& degree4();
    // 12-point rule, exact through degree 6 (error norms).
    static const TriQuadrature& degree6();
};

struct LineQuadPoint {
    double t;  // position in [0,1]
    double w;  // weights sum to 1
};

struct LineQuadrature {
    int degree = 0;
    std::vector<LineQuadPoint> pts;

    static const LineQuadrature& gauss2();  // degree 3
    static const LineQuadrature& gauss4();  // degree 7
};

}  // namespace porocell
