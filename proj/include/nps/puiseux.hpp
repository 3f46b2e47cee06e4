#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nps/newton_polygon.hpp"
#include "nps/numeric.hpp"
#include "nps/polynomial.hpp"

namespace nps {

struct ExpansionSettings {
    int precision_bits = 256;
    double tol = 1e-30;       // root clustering floor
    Rat max_order = 0;        // 0: stop as soon as every branch is separated
    int max_depth = 48;       // recursion levels
};

struct SeriesTerm {
    Rat exp;
    Complex coeff;
    bool exact = false;  // produced from an exact rational root
    Rat exact_value;     // valid when exact
};

// absent optional = the series is exact (terminates)
using Truncation = std::optional<Rat>;

struct PuiseuxCycle {
    int id = 0;
    std::vector<SeriesTerm> terms;
    int q = 1;  // ramification
    Truncation trunc;
    int conj_class = -1;  // id of the conjugate cycle (itself when real)
    bool unseparated = false;
};

struct ProBranch {
    int id = 0;
    int cycle_id = 0;
    int root_index = 0;  // k in x^(1/q) -> e^(2 pi i k/q) x^(1/q)
    std::vector<SeriesTerm> terms;
    Truncation trunc;
    int side = 1;                // half-line used for the reality test: +1 x>0, -1 x<0
    bool is_real = false;        // real on that side
    int conjugate_partner = -1;  // pro-branch id (itself when real)
};

struct Expansion {
    int multiplicity = 0;
    std::vector<PuiseuxCycle> cycles;
    bool unseparated = false;
    bool low_confidence = false;
    std::vector<std::string> notes;
};

Expansion puiseux_expand_full(const BivariatePoly& f, const ExpansionSettings& s = {});
std::vector<PuiseuxCycle> puiseux_expand(const BivariatePoly& f, const ExpansionSettings& s = {});

// q pro-branches per cycle; reality and conjugate partners are decided on
// the half-line chosen per cycle; force_side = +1/-1 overrides the choice
std::vector<ProBranch> expand_to_probranches(const std::vector<PuiseuxCycle>& cycles,
                                             const ExpansionSettings& s = {}, int force_side = 0);

// coefficients of the pro-branch read on the half-line x<0 via x = -t
std::vector<SeriesTerm> negative_side_terms(const PuiseuxCycle& c, int k);

// sentinel for an exactly vanishing residual
struct Valuation {
    bool infinite = false;
    double slope = 0;
};

Valuation residual_valuation(const BivariatePoly& f, const ProBranch& br,
                             const std::vector<double>& probes = {1e-4, 1e-5, 1e-6});

}  // namespace nps
