#include <random>

#include "doctest.h"
#include "nps/newton_polygon.hpp"
#include "nps/errors.hpp"

using namespace nps;

namespace {

// every support point lies on or above the line through each edge
bool above_chain(const NewtonPolygon& np) {
    for (auto& e : np.edges)
        for (auto& s : np.support) {
            // line through p1, p2 in (a, b): (b1 - b2)(a - a1) + (a2 - a1)(b - b1) >= 0
            Int lhs = Int(e.p1.b - e.p2.b) * (s.a - e.p1.a) + Int(e.p2.a - e.p1.a) * (s.b - e.p1.b);
            if (lhs < 0) return false;
        }
    return true;
}

}  // namespace

TEST_SUITE("newton_polygon") {

TEST_CASE("single edge") {
    auto np = newton_polygon(parse_poly("y^6 + x^7"));
    REQUIRE(np.edges.size() == 1);
    CHECK(np.edges[0].p1 == SupportPoint{0, 6});
    CHECK(np.edges[0].p2 == SupportPoint{7, 0});
    CHECK(np.edges[0].mu == Rat(7, 6));
    CHECK(np.edges[0].height == 6);
    CHECK(np.edges[0].face_exact == RatPoly{1, 0, 0, 0, 0, 0, 1});

    np = newton_polygon(parse_poly("y^2 - x^3"));
    REQUIRE(np.edges.size() == 1);
    CHECK(np.edges[0].mu == Rat(3, 2));
    CHECK(np.edges[0].face_exact == RatPoly{-1, 0, 1});
}

TEST_CASE("two edges") {
    auto np = newton_polygon(parse_poly("y^6 - x*y^5 + x^7"));
    REQUIRE(np.edges.size() == 2);
    CHECK(np.edges[0].p1 == SupportPoint{0, 6});
    CHECK(np.edges[0].p2 == SupportPoint{1, 5});
    CHECK(np.edges[0].mu == 1);
    CHECK(np.edges[0].height == 1);
    CHECK(np.edges[1].p2 == SupportPoint{7, 0});
    CHECK(np.edges[1].mu == Rat(6, 5));
    CHECK(np.edges[1].height == 5);
}

TEST_CASE("face polynomial of the tangent cone edge") {
    auto np = newton_polygon(parse_poly("(y-x)*(y-2*x)+x^3"));
    REQUIRE(!np.edges.empty());
    CHECK(np.edges[0].mu == 1);
    CHECK(np.edges[0].face_exact == RatPoly{2, -3, 1});
    auto roots = find_roots(np.edges[0].face);
    REQUIRE(roots.size() == 2);
}

TEST_CASE("y divides f") {
    auto np = newton_polygon(parse_poly("y^3 + x^2*y"));
    CHECK(np.y_order == 1);
}

TEST_CASE("hull properties on random polynomials") {
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<int> e(0, 7), c(-5, 5);
    for (int i = 0; i < 200; ++i) {
        int m = std::uniform_int_distribution<int>(1, 6)(rng);
        BivariatePoly f = BivariatePoly::monomial(0, m);
        for (int k = 0; k < 6; ++k) {
            int a = e(rng), b = e(rng);
            if (a + b >= 1 && (a > 0 || b > m)) f.add_term(a, b, Rat(c(rng)));
        }
        f.add_term(e(rng) + 1, 0, Rat(1));
        auto np = newton_polygon(f);
        CHECK(above_chain(np));
        int h = 0;
        for (std::size_t j = 0; j < np.edges.size(); ++j) {
            h += np.edges[j].height;
            if (j) CHECK(np.edges[j - 1].mu < np.edges[j].mu);
            CHECK(static_cast<int>(np.edges[j].face_exact.size()) - 1 == np.edges[j].height);
        }
        CHECK(h == m - np.y_order);
        // vertices are unchanged by f(lambda x, mu y)
        auto g = scale(f, Rat(-3, 2), Rat(5));
        auto ng = newton_polygon(g);
        REQUIRE(ng.edges.size() == np.edges.size());
        for (std::size_t j = 0; j < np.edges.size(); ++j) {
            CHECK(ng.edges[j].p1 == np.edges[j].p1);
            CHECK(ng.edges[j].p2 == np.edges[j].p2);
        }
    }
}

}
