#include <algorithm>

#include "doctest.h"
#include "nps/errors.hpp"
#include "nps/puiseux.hpp"

using namespace nps;

namespace {

double d(const Real& r) { return r.to_double(); }

}  // namespace

TEST_SUITE("puiseux") {

TEST_CASE("two conjugate lines") {
    auto cs = puiseux_expand(parse_poly("y^2 + x^2"));
    REQUIRE(cs.size() == 2);
    for (auto& c : cs) {
        CHECK(c.q == 1);
        CHECK(!c.trunc.has_value());
        REQUIRE(c.terms.size() == 1);
        CHECK(c.terms[0].exp == 1);
        CHECK(std::abs(d(c.terms[0].coeff.re)) < 1e-60);
        CHECK(std::abs(std::abs(d(c.terms[0].coeff.im)) - 1) < 1e-60);
    }
    CHECK(cs[0].conj_class == cs[1].id);
    CHECK(cs[1].conj_class == cs[0].id);

    auto br = expand_to_probranches(cs);
    REQUIRE(br.size() == 2);
    CHECK(!br[0].is_real);
    CHECK(!br[1].is_real);
    CHECK(br[0].conjugate_partner == br[1].id);
    CHECK(br[1].conjugate_partner == br[0].id);
}

TEST_CASE("cusp") {
    auto cs = puiseux_expand(parse_poly("y^2 - x^3"));
    REQUIRE(cs.size() == 1);
    CHECK(cs[0].q == 2);
    REQUIRE(cs[0].terms.size() == 1);
    CHECK(cs[0].terms[0].exp == Rat(3, 2));
    CHECK(std::abs(d(cs[0].terms[0].coeff.re) - 1) < 1e-60);
    auto br = expand_to_probranches(cs);
    REQUIRE(br.size() == 2);
    CHECK(br[0].is_real);
    CHECK(br[1].is_real);
    CHECK(std::abs(d(br[0].terms[0].coeff.re) + d(br[1].terms[0].coeff.re)) < 1e-60);
}

TEST_CASE("separation exponent of constructed branches") {
    auto f = parse_poly("y^2 - (2*x^2+x^3)*y + x^4 + x^5");
    CHECK(f == parse_poly("(y - x^2)*(y - x^2 - x^3)"));
    auto cs = puiseux_expand(f);
    REQUIRE(cs.size() == 2);
    std::vector<double> third;
    for (auto& c : cs) {
        CHECK(c.q == 1);
        REQUIRE(!c.terms.empty());
        CHECK(c.terms[0].exp == 2);
        double v = 0;
        for (auto& t : c.terms)
            if (t.exp == 3) v = d(t.coeff.re);
        third.push_back(v);
    }
    std::sort(third.begin(), third.end());
    CHECK(std::abs(third[0]) < 1e-60);
    CHECK(std::abs(third[1] - 1) < 1e-60);
}

TEST_CASE("y^6 + x^7 pro-branches") {
    auto br = expand_to_probranches(puiseux_expand(parse_poly("y^6 + x^7")));
    REQUIRE(br.size() == 6);
    int real = 0, paired = 0;
    for (auto& b : br) {
        REQUIRE(b.terms.size() == 1);
        CHECK(b.terms[0].exp == Rat(7, 6));
        CHECK(std::abs(d(abs(b.terms[0].coeff)) - 1) < 1e-60);
        real += b.is_real;
        if (!b.is_real) {
            CHECK(b.conjugate_partner != b.id);
            CHECK(br[b.conjugate_partner].conjugate_partner == b.id);
            ++paired;
        }
    }
    CHECK(real == 2);
    CHECK(paired == 4);
}

TEST_CASE("ramifications sum to the multiplicity") {
    for (const char* s : {"y^6+x^7", "y^5*(y-x)+x^7", "y^4*(y^2+x^2)+x^7", "(y^2-x^3)^2-4*x^5*y-x^7", "y^3-x^7"}) {
        auto e = puiseux_expand_full(parse_poly(s));
        int q = 0;
        for (auto& c : e.cycles) q += c.q;
        CHECK(q == e.multiplicity);
    }
}

TEST_CASE("residual valuation") {
    auto f = parse_poly("y^2 - x^3");
    auto br = expand_to_probranches(puiseux_expand(f));
    for (auto& b : br) CHECK(residual_valuation(f, b).infinite);

    f = parse_poly("y^2 + x^2");
    br = expand_to_probranches(puiseux_expand(f));
    for (auto& b : br) CHECK(residual_valuation(f, b).infinite);

    // y = x^2 + x^3 cut after x^2, against the other factor y = -x^2: f(x, x^2) = -2x^5
    f = parse_poly("(y - x^2 - x^3)*(y + x^2)");
    ProBranch b;
    b.terms.push_back(SeriesTerm{Rat(2), Complex(1.0), true, Rat(1)});
    b.trunc = Rat(3);
    auto v = residual_valuation(f, b);
    CHECK(!v.infinite);
    CHECK(v.slope == doctest::Approx(5).epsilon(0.02));
    CHECK(v.slope >= 3 - 0.1);
}

TEST_CASE("max order extends exact and truncated series") {
    ExpansionSettings s;
    s.max_order = Rat(5);
    auto cs = puiseux_expand(parse_poly("y^2 - x^3 - x^4"), s);
    REQUIRE(cs.size() == 1);
    REQUIRE(cs[0].trunc.has_value());
    CHECK(*cs[0].trunc >= 5);
    // sqrt(1+x) = 1 + x/2 - x^2/8 + ...
    std::map<Rat, double> c;
    for (auto& t : cs[0].terms) c[t.exp] = d(t.coeff.re);
    CHECK(c[Rat(3, 2)] == doctest::Approx(1));
    CHECK(c[Rat(5, 2)] == doctest::Approx(0.5));
    CHECK(c[Rat(7, 2)] == doctest::Approx(-0.125));
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(puiseux_expand(BivariatePoly{}), Error);
}

}
