#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nps/contact.hpp"
#include "nps/newton_polygon.hpp"
#include "nps/puiseux.hpp"

namespace nps {

enum class Mode { Real, Complex };

struct CanonicalKey {
    Mode mode = Mode::Real;
    std::string text;
    friend bool operator==(const CanonicalKey& a, const CanonicalKey& b) {
        return a.mode == b.mode && a.text == b.text;
    }
    friend bool operator<(const CanonicalKey& a, const CanonicalKey& b) {
        return a.mode != b.mode ? a.mode < b.mode : a.text < b.text;
    }
};

// sorts children, erases braces in complex mode
Diagram canonical_diagram(const Diagram& d, Mode mode);
CanonicalKey canonical_form(const Diagram& d, Mode mode);
bool equivalent(const Diagram& a, const Diagram& b, Mode mode);

enum class ShearPolicy { Auto, Never };

enum class Flag { Unseparated, NumericLowConfidence };
const char* flag_name(Flag f);

struct ClassificationResult {
    int multiplicity = 0;
    std::vector<TangentFactor> tangent_cone;
    std::string tangent_cone_summary;
    std::optional<Rat> shear;  // lambda in f(x + lambda*y, y) when applied
    BivariatePoly prepared;    // the polynomial actually expanded
    NewtonPolygon polygon;
    Expansion expansion;
    std::vector<ProBranch> branches;
    ContactMatrix contacts;
    Diagram diagram;
    CanonicalKey key_real;
    CanonicalKey key_complex;
    std::vector<Flag> flags;
    std::vector<std::string> notes;

    bool provisional() const { return !flags.empty(); }
};

ClassificationResult classify_curve(const BivariatePoly& f, const ExpansionSettings& s = {},
                                    ShearPolicy policy = ShearPolicy::Auto);

}  // namespace nps
