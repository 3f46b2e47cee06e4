#pragma once

#include <vector>

#include "nps/numeric.hpp"
#include "nps/polynomial.hpp"

namespace nps {

struct SupportPoint {
    int a = 0;  // x exponent
    int b = 0;  // y exponent
    friend bool operator==(const SupportPoint& l, const SupportPoint& r) { return l.a == r.a && l.b == r.b; }
    friend bool operator<(const SupportPoint& l, const SupportPoint& r) {
        return l.b != r.b ? l.b > r.b : l.a < r.a;
    }
};

struct PolygonEdge {
    SupportPoint p1, p2;  // p1.b > p2.b
    Rat mu;               // (a2 - a1) / (b1 - b2)
    int height = 0;       // b1 - b2
    UnivariatePoly face;  // sum coeff * t^(b - b2)
    RatPoly face_exact;
};

struct NewtonPolygon {
    std::vector<PolygonEdge> edges;
    std::vector<SupportPoint> support;
    // y-exponent of the lowest row; >= 1 means y divides f
    int y_order = 0;
};

struct HullEdge {
    SupportPoint p1, p2;
    std::vector<SupportPoint> on_edge;  // includes both endpoints
};

// lower hull between the lowest pure-y point and the lowest row (ties: smallest a)
std::vector<HullEdge> lower_hull(const std::vector<SupportPoint>& pts);

NewtonPolygon newton_polygon(const BivariatePoly& f);
UnivariatePoly face_polynomial(const BivariatePoly& f, const PolygonEdge& e);

}  // namespace nps
