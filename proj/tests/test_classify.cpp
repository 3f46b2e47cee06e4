#include "doctest.h"
#include "nps/classify.hpp"
#include "nps/errors.hpp"
#include "nps/render_io.hpp"

using namespace nps;

namespace {

std::string key(const char* s, Mode m = Mode::Real) {
    auto r = classify_curve(parse_poly(s));
    CHECK(!r.provisional());
    return m == Mode::Real ? r.key_real.text : r.key_complex.text;
}

}  // namespace

TEST_SUITE("classify") {

TEST_CASE("canonical keys") {
    auto a = parse_diagram("(1 -> [(3/2 -> [leaf, leaf]), leaf, {leaf, leaf}])");
    auto b = parse_diagram("(1 -> [{leaf, leaf}, leaf, (3/2 -> [leaf, leaf])])");
    CHECK(canonical_form(a, Mode::Real) == canonical_form(b, Mode::Real));
    CHECK(equivalent(a, a, Mode::Real));

    auto np1 = parse_diagram("(7/6 -> [{leaf, leaf}, {leaf, leaf}, leaf, leaf])");
    auto bare = parse_diagram("(7/6 -> [leaf, leaf, leaf, leaf, leaf, leaf])");
    CHECK(!equivalent(np1, bare, Mode::Real));
    CHECK(equivalent(np1, bare, Mode::Complex));
    CHECK(canonical_form(np1, Mode::Complex).text == "(7/6 → [leaf, leaf, leaf, leaf, leaf, leaf])");
}

TEST_CASE("real and complex relations") {
    auto plus = classify_curve(parse_poly("y^2+x^2"));
    auto minus = classify_curve(parse_poly("y^2-x^2"));
    CHECK(!equivalent(plus.diagram, minus.diagram, Mode::Real));
    CHECK(equivalent(plus.diagram, minus.diagram, Mode::Complex));
    CHECK(plus.key_real.text == "(1 → [{leaf, leaf}])");
}

TEST_CASE("pipeline") {
    auto r = classify_curve(parse_poly("y^6+x^7"));
    CHECK(r.multiplicity == 6);
    CHECK(r.key_real.text == "(7/6 → [leaf, leaf, {leaf, leaf}, {leaf, leaf}])");
    CHECK(key("y^2-x^3") == "(3/2 → [leaf, leaf])");
    CHECK(key("y^4*(y^2+x^2) + x^7") == "(1 → [(5/4 → [leaf, leaf, {leaf, leaf}]), {leaf, leaf}])");
    CHECK(key("y^4*(y-x)^2 + x^7") == "(1 → [(5/4 → [leaf, leaf, {leaf, leaf}]), (3/2 → [leaf, leaf])])");
}

TEST_CASE("families with different brace structure stay apart") {
    auto a = key("y^3*(y-x)^2+x^4*y^2+x^7");
    auto b = key("y^3*(y-x)*(y-2*x)+x^4*y^2+x^7");
    CHECK(a != b);
}

TEST_CASE("complex key is the real key without braces") {
    for (const char* s : {"y^6+x^7", "(y^2+x^2)^3+x^7", "y^2*(y^2+x^2)^2+x^7", "y^5+x^7", "y^4*(y-x)+x^6"}) {
        auto r = classify_curve(parse_poly(s));
        CHECK(canonical_form(r.diagram, Mode::Complex) == r.key_complex);
        auto erased = canonical_form(parse_diagram(r.key_real.text), Mode::Complex);
        CHECK(erased.text == r.key_complex.text);
        CHECK(canonical_form(parse_diagram(r.key_real.text), Mode::Real) == r.key_real);
    }
}

TEST_CASE("shear preparation") {
    auto r = classify_curve(parse_poly("x^2 - y^3"));
    CHECK(r.shear.has_value());
    CHECK(r.key_real.text == "(3/2 → [leaf, leaf])");
    CHECK_THROWS_AS(classify_curve(parse_poly("x^2 - y^3"), {}, ShearPolicy::Never), Error);
    try {
        classify_curve(parse_poly("x^2 - y^3"), {}, ShearPolicy::Never);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NeedsPreparation);
    }
}

TEST_CASE("flags") {
    ExpansionSettings s;
    s.max_depth = 1;
    auto r = classify_curve(parse_poly("(y-x^2-x^3)^2-x^7"), s);
    CHECK(r.provisional());
    bool unsep = false;
    for (auto f : r.flags) unsep |= f == Flag::Unseparated;
    CHECK(unsep);
    CHECK(std::string(flag_name(Flag::Unseparated)) == "Unseparated");
    CHECK(!classify_curve(parse_poly("(y-x^2-x^3)^2-x^7")).provisional());
}

TEST_CASE("input errors") {
    CHECK_THROWS_AS(classify_curve(BivariatePoly{}), Error);
    CHECK_THROWS_AS(classify_curve(parse_poly("1+x")), Error);
}

}
