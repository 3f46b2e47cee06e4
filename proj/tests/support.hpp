#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "nps/catalogue.hpp"
#include "nps/classify.hpp"
#include "nps/render_io.hpp"

namespace npstest {

using nps::BivariatePoly;
using nps::Rat;

inline std::string data_path(const std::string& name) { return std::string(NPS_DATA_DIR) + "/" + name; }

// a branch y = sum c_k x^(k/q), given exactly
struct KnownCycle {
    int q = 1;
    std::map<int, Rat> coeffs;  // k -> c_k
};

// norm of y - P(t) over Q[x][t]/(t^q - x), i.e. the minimal polynomial of the cycle
BivariatePoly cycle_polynomial(const KnownCycle& c);

// contact of conjugate ja of a and conjugate jb of b (t -> e^(2 pi i j/q) t), exact
Rat known_contact(const KnownCycle& a, int ja, const KnownCycle& b, int jb);

// random reduced product of 1..3 cycles; exponents >= q so the tangent is y = 0
std::vector<KnownCycle> random_cycles(std::mt19937_64& rng);

// polynomial pool for the property suites: catalogue samples of every
// manifest plus constructed products
std::vector<BivariatePoly> property_pool(int n, std::uint64_t seed);

nps::Diagram random_diagram(std::mt19937_64& rng, int max_leaves = 8);
bool same_tree(const nps::DiagramNode& a, const nps::DiagramNode& b);

// structural checks on TikZ output; returns an empty string when it passes
std::string lint_tikz(const std::string& tex);

}  // namespace npstest
