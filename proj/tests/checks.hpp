#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace npstest {

struct PropertyResult {
    std::string name;
    int cases = 0;
    int failures = 0;
    std::vector<std::string> messages;  // first few failures

    void fail(const std::string& m) {
        ++failures;
        if (messages.size() < 5) messages.push_back(m);
    }
    bool ok() const { return failures == 0 && cases > 0; }
};

// the seven randomized property suites over a pool of n polynomials
std::vector<PropertyResult> run_properties(int n, std::uint64_t seed);

// products of known cycles: engine pro-branches and contacts against the construction
PropertyResult run_oracle(int n, std::uint64_t seed);

}  // namespace npstest
