#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nps/numeric.hpp"
#include "nps/rational.hpp"

namespace nps {

// (x exponent, y exponent)
using Monomial = std::pair<int, int>;

class BivariatePoly {
public:
    BivariatePoly() = default;
    static BivariatePoly constant(const Rat& c);
    static BivariatePoly monomial(int a, int b, const Rat& c = Rat(1));
    static BivariatePoly x() { return monomial(1, 0); }
    static BivariatePoly y() { return monomial(0, 1); }

    const std::map<Monomial, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rat coeff(int a, int b) const;
    void add_term(int a, int b, const Rat& c);
    std::size_t size() const { return terms_.size(); }
    int total_degree() const;
    int degree_y() const;
    int degree_x() const;

    BivariatePoly& operator+=(const BivariatePoly& o);
    BivariatePoly& operator-=(const BivariatePoly& o);
    BivariatePoly& operator*=(const Rat& c);

    friend bool operator==(const BivariatePoly& a, const BivariatePoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const BivariatePoly& a, const BivariatePoly& b) { return !(a == b); }

private:
    std::map<Monomial, Rat> terms_;
};

BivariatePoly operator+(const BivariatePoly& a, const BivariatePoly& b);
BivariatePoly operator-(const BivariatePoly& a, const BivariatePoly& b);
BivariatePoly operator-(const BivariatePoly& a);
BivariatePoly operator*(const BivariatePoly& a, const BivariatePoly& b);
BivariatePoly operator*(const Rat& c, const BivariatePoly& a);
// throws DegreeOverflow when the result would exceed max_degree
BivariatePoly pow(const BivariatePoly& a, int n, int max_degree = 64);

struct ParseOptions {
    int max_degree = 64;
};

BivariatePoly parse_poly(const std::string& text, const ParseOptions& opt = {});
// graded lex, lowest degree first, y before x within a degree
std::string to_string(const BivariatePoly& f);

int multiplicity_at_origin(const BivariatePoly& f);
BivariatePoly lowest_form(const BivariatePoly& f);
// f(x + lambda*y, y)
BivariatePoly shear(const BivariatePoly& f, const Rat& lambda);
// f(lambda*x, mu*y)
BivariatePoly scale(const BivariatePoly& f, const Rat& lambda, const Rat& mu);

enum class FactorKind { RealLinear, ConjugateQuadratic, XAxisFactor };

// RealLinear: y - slope*x. ConjugateQuadratic: y^2 + p*y*x + q*x^2 with
// complex conjugate roots (param = q/ something; see center/radius).
// XAxisFactor: the factor x (tangent along the y-axis).
struct TangentFactor {
    FactorKind kind = FactorKind::RealLinear;
    int multiplicity = 1;
    bool exact = false;          // slope (or quadratic coefficients) exact rationals
    Rat slope;                   // exact slope for RealLinear when exact
    Real slope_approx;           // RealLinear
    Complex root;                // ConjugateQuadratic: root with positive imaginary part
    Rat quad_p, quad_q;          // exact y^2 + p y x + q x^2 when exact
};

std::vector<TangentFactor> tangent_cone(const BivariatePoly& f, const RootOptions& opt = {});
std::string describe(const TangentFactor& t);

}  // namespace nps
