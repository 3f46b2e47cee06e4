#include "checks.hpp"
#include "doctest.h"

TEST_SUITE("properties") {

TEST_CASE("randomized property suites") {
    for (auto& r : npstest::run_properties(200, 2024)) {
        CAPTURE(r.name);
        for (auto& m : r.messages) MESSAGE(m);
        CHECK(r.cases >= 200);
        CHECK(r.failures == 0);
    }
}

TEST_CASE("oracle on constructed products") {
    auto r = npstest::run_oracle(100, 77);
    for (auto& m : r.messages) MESSAGE(m);
    CHECK(r.cases == 100);
    CHECK(r.failures == 0);
}

}
