#include "doctest.h"
#include "nps/classify.hpp"
#include "nps/contact.hpp"
#include "nps/errors.hpp"
#include "nps/render_io.hpp"

using namespace nps;

namespace {

ProBranch branch(int id, std::vector<std::pair<Rat, Complex>> terms, Truncation trunc = std::nullopt) {
    ProBranch b;
    b.id = id;
    for (auto& [e, c] : terms) b.terms.push_back(SeriesTerm{e, c, false, Rat(0)});
    b.trunc = trunc;
    return b;
}

ContactMatrix matrix3(Rat d12, Rat d13, Rat d23) {
    auto cm = ContactMatrix::make(3);
    cm.set(0, 1, d12);
    cm.set(0, 2, d13);
    cm.set(1, 2, d23);
    return cm;
}

}  // namespace

TEST_SUITE("contact") {

TEST_CASE("contact exponents") {
    CHECK(contact_exponent(branch(0, {{Rat(3, 2), Complex(1.0)}}), branch(1, {{Rat(3, 2), Complex(-1.0)}})) ==
          Rat(3, 2));
    CHECK(contact_exponent(branch(0, {{Rat(1), Complex(0.0, 1.0)}}), branch(1, {{Rat(1), Complex(0.0, -1.0)}})) ==
          1);
    CHECK(contact_exponent(branch(0, {{Rat(2), Complex(1.0)}}),
                           branch(1, {{Rat(2), Complex(1.0)}, {Rat(3), Complex(1.0)}})) == 3);
    // agreement up to the shorter truncation decides nothing
    CHECK_THROWS_AS(contact_exponent(branch(0, {{Rat(2), Complex(1.0)}}, Rat(3)),
                                     branch(1, {{Rat(2), Complex(1.0)}, {Rat(4), Complex(1.0)}})),
                    Error);
}

TEST_CASE("ultrametric validation") {
    CHECK(!validate_ultrametric(matrix3(1, 1, 2)).has_value());
    auto w = validate_ultrametric(matrix3(1, 2, 3));
    REQUIRE(w.has_value());
    auto cm = matrix3(1, 2, 3);
    CHECK(*cm.at(w->i, w->k) < std::min(*cm.at(w->i, w->j), *cm.at(w->j, w->k)));

    auto r = classify_curve(parse_poly("y^6+x^7"));
    CHECK(!validate_ultrametric(r.contacts).has_value());
    // brute-force triple scan
    int n = r.contacts.n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (i != j && j != k && i != k)
                    CHECK(*r.contacts.at(i, k) >= std::min(*r.contacts.at(i, j), *r.contacts.at(j, k)));
}

TEST_CASE("dendrograms") {
    auto r = classify_curve(parse_poly("y^6+x^7"));
    CHECK(to_text(r.diagram) == "(7/6 → [leaf, leaf, {leaf, leaf}, {leaf, leaf}])");
    CHECK(leaf_count(r.diagram.root) == 6);

    r = classify_curve(parse_poly("y^6 - x*y^5 + x^7"));
    CHECK(to_text(r.diagram) == "(1 → [leaf, (6/5 → [leaf, {leaf, leaf}, {leaf, leaf}])])");

    r = classify_curve(parse_poly("y^2 - x^2"));
    CHECK(to_text(r.diagram) == "(1 → [leaf, leaf])");

    for (const char* s : {"y^6+x^7", "y^4*(y^2+x^2)+x^7", "(y^2+x^2)^3+x^7", "y^2*(y-x)*(y^2+x^2)+x^6"}) {
        r = classify_curve(parse_poly(s));
        auto back = diagram_contacts(r.diagram);
        REQUIRE(back.n == r.contacts.n);
        for (int i = 0; i < back.n; ++i)
            for (int j = 0; j < back.n; ++j)
                if (i != j) CHECK(*back.at(i, j) == *r.contacts.at(i, j));
        std::vector<int> partner;
        for (auto& b : r.branches) partner.push_back(b.conjugate_partner);
        CHECK(is_contact_automorphism(r.contacts, partner));
    }
}

TEST_CASE("braces need conjugation-closed complex leaves") {
    auto cm = ContactMatrix::make(4);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) cm.set(i, j, Rat(3, 2));
    auto d = build_diagram(cm, std::vector<int>{0, 1, 3, 2});
    CHECK(to_text(d) == "(3/2 → [leaf, leaf, {leaf, leaf}])");
    d = build_diagram(cm, std::vector<int>{});
    CHECK(to_text(d) == "(3/2 → [leaf, leaf, leaf, leaf])");
}

}
