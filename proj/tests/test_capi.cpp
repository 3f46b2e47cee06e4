#include <cstdlib>
#include <string>

#include "doctest.h"
#include "nps/nps.h"
#include "support.hpp"

namespace {

std::string take(char* s) {
    std::string r = s ? s : "";
    nps_string_free(s);
    return r;
}

}  // namespace

TEST_SUITE("capi") {

TEST_CASE("classify through handles") {
    nps_poly* p = nullptr;
    REQUIRE(nps_poly_parse("y^6+x^7", &p) == NPS_OK);
    nps_settings s;
    nps_settings_init(&s);
    CHECK(s.precision_bits == 256);
    nps_result* r = nullptr;
    REQUIRE(nps_classify(p, &s, &r) == NPS_OK);
    CHECK(nps_result_multiplicity(r) == 6);
    CHECK(nps_result_provisional(r) == 0);
    char* k = nullptr;
    REQUIRE(nps_result_key(r, NPS_MODE_REAL, &k) == NPS_OK);
    CHECK(take(k) == "(7/6 → [leaf, leaf, {leaf, leaf}, {leaf, leaf}])");
    REQUIRE(nps_result_key(r, NPS_MODE_COMPLEX, &k) == NPS_OK);
    CHECK(take(k) == "(7/6 → [leaf, leaf, leaf, leaf, leaf, leaf])");
    char* js = nullptr;
    REQUIRE(nps_result_render(r, NPS_MODE_REAL, NPS_FORMAT_JSON, &js) == NPS_OK);
    CHECK(take(js).find("\"multiplicity\"") != std::string::npos);
    char* tex = nullptr;
    REQUIRE(nps_result_render(r, NPS_MODE_REAL, NPS_FORMAT_TIKZ, &tex) == NPS_OK);
    CHECK(npstest::lint_tikz(take(tex)) == "");
    char* poly = nullptr;
    REQUIRE(nps_poly_to_string(p, &poly) == NPS_OK);
    CHECK(!take(poly).empty());
    char* pg = nullptr;
    REQUIRE(nps_polygon_render(p, NPS_FORMAT_TEXT, &pg) == NPS_OK);
    CHECK(take(pg).find("mu=7/6") != std::string::npos);
    char* pu = nullptr;
    REQUIRE(nps_puiseux_render(p, &s, NPS_FORMAT_JSON, &pu) == NPS_OK);
    CHECK(take(pu).find("7/6") != std::string::npos);
    nps_result_free(r);
    nps_poly_free(p);
}

TEST_CASE("status codes") {
    nps_poly* p = nullptr;
    CHECK(nps_poly_parse("y^2 -", &p) == NPS_E_SYNTAX);
    CHECK(p == nullptr);
    CHECK(std::string(nps_last_error()).find("column 6") != std::string::npos);
    CHECK(std::string(nps_status_name(NPS_E_SYNTAX)) == "SyntaxError");
    CHECK(nps_poly_parse(nullptr, &p) == NPS_E_INVALID_ARGUMENT);

    REQUIRE(nps_poly_parse("x^2-y^3", &p) == NPS_OK);
    nps_settings s;
    nps_settings_init(&s);
    s.shear_never = 1;
    nps_result* r = nullptr;
    CHECK(nps_classify(p, &s, &r) == NPS_E_NEEDS_PREPARATION);
    s.shear_never = 0;
    s.max_order = "bad";
    CHECK(nps_classify(p, &s, &r) == NPS_E_SYNTAX);
    s.max_order = nullptr;
    CHECK(nps_classify(p, &s, &r) == NPS_OK);
    nps_result_free(r);
    nps_poly_free(p);

    REQUIRE(nps_poly_parse("0", &p) == NPS_OK);
    CHECK(nps_classify(p, nullptr, &r) == NPS_E_ZERO_POLYNOMIAL);
    nps_poly_free(p);

    char* out = nullptr;
    CHECK(nps_diagram_render("((", NPS_MODE_REAL, NPS_FORMAT_TEXT, &out) == NPS_E_SYNTAX);
    CHECK(nps_diagram_render("(1 -> [{leaf, leaf}])", NPS_MODE_COMPLEX, NPS_FORMAT_TEXT, &out) == NPS_OK);
    CHECK(take(out) == "(1 → [leaf, leaf])\n");

    nps_manifest* m = nullptr;
    CHECK(nps_manifest_load("/nonexistent.json", &m) == NPS_E_IO);
    nps_poly_free(nullptr);
    nps_result_free(nullptr);
    nps_manifest_free(nullptr);
    nps_report_free(nullptr);
}

TEST_CASE("catalogue and realize") {
    nps_manifest* m = nullptr;
    REQUIRE(nps_manifest_load(npstest::data_path("septic_mult6.manifest.json").c_str(), &m) == NPS_OK);
    CHECK(nps_manifest_multiplicity(m) == 6);
    nps_report* rep = nullptr;
    REQUIRE(nps_catalogue_run(m, nullptr, 3, 7, 2, &rep) == NPS_OK);
    int dr = 0, dc = 0;
    REQUIRE(nps_report_counts(rep, 6, &dr, &dc) == NPS_OK);
    CHECK(dr >= dc);
    CHECK(dc > 0);
    CHECK(nps_report_counts(rep, 5, &dr, &dc) == NPS_E_INVALID_ARGUMENT);
    char* sum = nullptr;
    REQUIRE(nps_report_summary(rep, &sum) == NPS_OK);
    CHECK(!take(sum).empty());
    nps_report_free(rep);
    nps_manifest_free(m);

    REQUIRE(nps_manifest_load(npstest::data_path("septic_mult5.manifest.json").c_str(), &m) == NPS_OK);
    char* out = nullptr;
    int found = -1;
    REQUIRE(nps_realize(m, "NP12", "7/4", 100, 1, nullptr, NPS_FORMAT_JSON, &out, &found) == NPS_OK);
    CHECK(found == 1);
    CHECK(take(out).find("\"found\": true") != std::string::npos);
    REQUIRE(nps_realize(m, "NP12", "5", 100, 1, nullptr, NPS_FORMAT_TEXT, &out, &found) == NPS_OK);
    CHECK(found == 0);
    CHECK(take(out).find("no parameterized label") != std::string::npos);
    CHECK(nps_realize(m, "NOPE", "2", 10, 1, nullptr, NPS_FORMAT_TEXT, &out, &found) == NPS_E_INVALID_ARGUMENT);
    nps_manifest_free(m);
}

}
