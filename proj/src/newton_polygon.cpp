#include "nps/newton_polygon.hpp"

#include <algorithm>

#include "nps/errors.hpp"

namespace nps {

std::vector<HullEdge> lower_hull(const std::vector<SupportPoint>& pts) {
    std::vector<HullEdge> edges;
    int start_b = -1, min_b = -1;
    for (auto& p : pts) {
        if (p.a == 0 && (start_b < 0 || p.b < start_b)) start_b = p.b;
        if (min_b < 0 || p.b < min_b) min_b = p.b;
    }
    if (start_b < 0) throw Error(ErrorCode::NeedsPreparation, "no pure y-power term; shear first");
    SupportPoint cur{0, start_b};
    while (cur.b > min_b) {
        // smallest slope (a2-a1)/(b1-b2); exact comparison by cross multiplication
        const SupportPoint* best = nullptr;
        for (auto& p : pts) {
            if (p.b >= cur.b) continue;
            if (!best) {
                best = &p;
                continue;
            }
            long lhs = static_cast<long>(p.a - cur.a) * (cur.b - best->b);
            long rhs = static_cast<long>(best->a - cur.a) * (cur.b - p.b);
            if (lhs < rhs || (lhs == rhs && p.b < best->b)) best = &p;
        }
        HullEdge e{cur, *best, {}};
        for (auto& p : pts) {
            if (p.b > cur.b || p.b < best->b) continue;
            long lhs = static_cast<long>(p.a - cur.a) * (cur.b - best->b);
            long rhs = static_cast<long>(best->a - cur.a) * (cur.b - p.b);
            if (lhs == rhs) e.on_edge.push_back(p);
        }
        std::sort(e.on_edge.begin(), e.on_edge.end());
        edges.push_back(e);
        cur = *best;
    }
    return edges;
}

NewtonPolygon newton_polygon(const BivariatePoly& f) {
    if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "zero polynomial");
    NewtonPolygon np;
    for (auto& [m, c] : f.terms()) np.support.push_back({m.first, m.second});
    std::sort(np.support.begin(), np.support.end());
    for (auto& he : lower_hull(np.support)) {
        PolygonEdge e;
        e.p1 = he.p1;
        e.p2 = he.p2;
        e.height = he.p1.b - he.p2.b;
        e.mu = Rat(he.p2.a - he.p1.a, e.height);
        e.mu.canonicalize();
        e.face_exact.assign(e.height + 1, Rat(0));
        for (auto& p : he.on_edge) e.face_exact[p.b - he.p2.b] = f.coeff(p.a, p.b);
        for (auto& c : e.face_exact) e.face.coeffs.push_back(Complex(c));
        np.edges.push_back(std::move(e));
    }
    int min_b = np.support.front().b;
    for (auto& p : np.support) min_b = std::min(min_b, p.b);
    np.y_order = min_b;
    return np;
}

UnivariatePoly face_polynomial(const BivariatePoly& f, const PolygonEdge& e) {
    NewtonPolygon np = newton_polygon(f);
    for (auto& own : np.edges)
        if (own.p1 == e.p1 && own.p2 == e.p2) return own.face;
    throw Error(ErrorCode::EdgeMismatch, "edge is not on the Newton polygon of f");
}

}  // namespace nps
