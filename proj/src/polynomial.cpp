#include "nps/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "nps/errors.hpp"

namespace nps {

BivariatePoly BivariatePoly::constant(const Rat& c) { return monomial(0, 0, c); }

BivariatePoly BivariatePoly::monomial(int a, int b, const Rat& c) {
    BivariatePoly p;
    p.add_term(a, b, c);
    return p;
}

Rat BivariatePoly::coeff(int a, int b) const {
    auto it = terms_.find({a, b});
    return it == terms_.end() ? Rat(0) : it->second;
}

void BivariatePoly::add_term(int a, int b, const Rat& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace({a, b}, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

int BivariatePoly::total_degree() const {
    int d = -1;
    for (auto& [m, c] : terms_) d = std::max(d, m.first + m.second);
    return d;
}

int BivariatePoly::degree_y() const {
    int d = -1;
    for (auto& [m, c] : terms_) d = std::max(d, m.second);
    return d;
}

int BivariatePoly::degree_x() const {
    int d = -1;
    for (auto& [m, c] : terms_) d = std::max(d, m.first);
    return d;
}

BivariatePoly& BivariatePoly::operator+=(const BivariatePoly& o) {
    for (auto& [m, c] : o.terms_) add_term(m.first, m.second, c);
    return *this;
}

BivariatePoly& BivariatePoly::operator-=(const BivariatePoly& o) {
    for (auto& [m, c] : o.terms_) add_term(m.first, m.second, -c);
    return *this;
}

BivariatePoly& BivariatePoly::operator*=(const Rat& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

BivariatePoly operator+(const BivariatePoly& a, const BivariatePoly& b) {
    BivariatePoly r = a;
    r += b;
    return r;
}

BivariatePoly operator-(const BivariatePoly& a, const BivariatePoly& b) {
    BivariatePoly r = a;
    r -= b;
    return r;
}

BivariatePoly operator-(const BivariatePoly& a) {
    BivariatePoly r = a;
    r *= Rat(-1);
    return r;
}

BivariatePoly operator*(const BivariatePoly& a, const BivariatePoly& b) {
    BivariatePoly r;
    for (auto& [ma, ca] : a.terms())
        for (auto& [mb, cb] : b.terms()) r.add_term(ma.first + mb.first, ma.second + mb.second, ca * cb);
    return r;
}

BivariatePoly operator*(const Rat& c, const BivariatePoly& a) {
    BivariatePoly r = a;
    r *= c;
    return r;
}

BivariatePoly pow(const BivariatePoly& a, int n, int max_degree) {
    if (n < 0) throw Error(ErrorCode::InvalidArgument, "negative exponent");
    if (!a.is_zero() && static_cast<long>(a.total_degree()) * n > max_degree)
        throw Error(ErrorCode::DegreeOverflow, "degree exceeds cap " + std::to_string(max_degree));
    BivariatePoly r = BivariatePoly::constant(Rat(1));
    BivariatePoly base = a;
    while (n) {
        if (n & 1) r = r * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return r;
}

// ---- parser ------------------------------------------------------------------

namespace {

class Parser {
public:
    Parser(const std::string& s, const ParseOptions& opt) : s_(s), opt_(opt) {}

    BivariatePoly parse() {
        skip();
        if (pos_ == s_.size()) throw SyntaxError(pos_, "expression");
        BivariatePoly r = expr();
        skip();
        if (pos_ != s_.size()) throw SyntaxError(pos_, "operator or end of input");
        return r;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    void check(const BivariatePoly& p) {
        if (p.total_degree() > opt_.max_degree)
            throw Error(ErrorCode::DegreeOverflow, "degree exceeds cap " + std::to_string(opt_.max_degree));
    }

    BivariatePoly expr() {
        BivariatePoly r = signed_term();
        for (;;) {
            if (peek('+')) {
                ++pos_;
                r += signed_term();
            } else if (peek('-')) {
                ++pos_;
                r -= signed_term();
            } else {
                return r;
            }
        }
    }

    BivariatePoly signed_term() {
        if (peek('-')) {
            ++pos_;
            return -term();
        }
        return term();
    }

    BivariatePoly term() {
        BivariatePoly r = factor();
        while (peek('*')) {
            ++pos_;
            r = r * factor();
            check(r);
        }
        return r;
    }

    BivariatePoly factor() {
        BivariatePoly b = base();
        if (peek('^')) {
            ++pos_;
            skip();
            std::size_t at = pos_;
            Int n = natural("exponent");
            // constants may take larger powers, but not absurd ones
            Int cap = b.total_degree() > 0 ? Int(opt_.max_degree) : Int(4096);
            if (n > cap)
                throw Error(ErrorCode::DegreeOverflow, "exponent " + n.get_str() + " at " + std::to_string(at) +
                                                           " exceeds cap " + cap.get_str());
            return pow(b, static_cast<int>(n.get_si()), opt_.max_degree);
        }
        return b;
    }

    Int natural(const char* what) {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start) throw SyntaxError(pos_, what);
        return Int(s_.substr(start, pos_ - start));
    }

    BivariatePoly base() {
        skip();
        if (pos_ >= s_.size()) throw SyntaxError(pos_, "x, y, number or '('");
        char c = s_[pos_];
        if (c == 'x') {
            ++pos_;
            return BivariatePoly::x();
        }
        if (c == 'y') {
            ++pos_;
            return BivariatePoly::y();
        }
        if (c == '(') {
            ++pos_;
            BivariatePoly r = expr();
            if (!peek(')')) throw SyntaxError(pos_, "')'");
            ++pos_;
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Int num = natural("digit");
            Int den = 1;
            if (peek('/')) {
                ++pos_;
                std::size_t at = pos_;
                den = natural("denominator");
                if (den == 0) throw SyntaxError(at, "nonzero denominator");
            }
            Rat q(num, den);
            q.canonicalize();
            return BivariatePoly::constant(q);
        }
        throw SyntaxError(pos_, "x, y, number or '('");
    }

    const std::string& s_;
    ParseOptions opt_;
    std::size_t pos_ = 0;
};

}  // namespace

BivariatePoly parse_poly(const std::string& text, const ParseOptions& opt) { return Parser(text, opt).parse(); }

std::string to_string(const BivariatePoly& f) {
    if (f.is_zero()) return "0";
    std::vector<std::pair<Monomial, Rat>> t(f.terms().begin(), f.terms().end());
    std::sort(t.begin(), t.end(), [](auto& l, auto& r) {
        int dl = l.first.first + l.first.second, dr = r.first.first + r.first.second;
        if (dl != dr) return dl < dr;
        return l.first.second > r.first.second;
    });
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : t) {
        Rat a = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        std::vector<std::string> parts;
        if (a != 1 || (m.first == 0 && m.second == 0)) parts.push_back(a.get_str());
        if (m.first) parts.push_back(m.first == 1 ? "x" : "x^" + std::to_string(m.first));
        if (m.second) parts.push_back(m.second == 1 ? "y" : "y^" + std::to_string(m.second));
        for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? "*" : "") << parts[i];
    }
    return os.str();
}

int multiplicity_at_origin(const BivariatePoly& f) {
    if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "zero polynomial");
    int m = -1;
    for (auto& [mo, c] : f.terms()) {
        int d = mo.first + mo.second;
        if (m < 0 || d < m) m = d;
    }
    return m;
}

BivariatePoly lowest_form(const BivariatePoly& f) {
    int m = multiplicity_at_origin(f);
    BivariatePoly r;
    for (auto& [mo, c] : f.terms())
        if (mo.first + mo.second == m) r.add_term(mo.first, mo.second, c);
    return r;
}

BivariatePoly shear(const BivariatePoly& f, const Rat& lambda) {
    if (lambda == 0) return f;
    BivariatePoly lin = BivariatePoly::x() + lambda * BivariatePoly::y();
    BivariatePoly r;
    int maxa = std::max(0, f.degree_x());
    std::vector<BivariatePoly> powers{BivariatePoly::constant(Rat(1))};
    for (int k = 1; k <= maxa; ++k) powers.push_back(powers.back() * lin);
    for (auto& [m, c] : f.terms()) r += c * (powers[m.first] * BivariatePoly::monomial(0, m.second));
    return r;
}

BivariatePoly scale(const BivariatePoly& f, const Rat& lambda, const Rat& mu) {
    BivariatePoly r;
    for (auto& [m, c] : f.terms()) {
        Rat v = c;
        for (int i = 0; i < m.first; ++i) v *= lambda;
        for (int i = 0; i < m.second; ++i) v *= mu;
        r.add_term(m.first, m.second, v);
    }
    return r;
}

// ---- tangent cone ------------------------------------------------------------

std::vector<TangentFactor> tangent_cone(const BivariatePoly& f, const RootOptions& opt) {
    BivariatePoly L = lowest_form(f);
    int m = multiplicity_at_origin(f);
    std::vector<TangentFactor> out;
    if (m == 0) return out;
    RatPoly p(m + 1, Rat(0));
    for (auto& [mo, c] : L.terms()) p[mo.second] = c;
    p = ratpoly_trim(p);
    int xmult = m - (static_cast<int>(p.size()) - 1);
    std::vector<TangentFactor> lin, quad;
    if (p.size() > 1) {
        for (auto& [a, mult] : squarefree(p)) {
            RatPoly rest = a;
            for (auto& r : rational_roots(rest)) {
                TangentFactor t;
                t.kind = FactorKind::RealLinear;
                t.multiplicity = mult;
                t.exact = true;
                t.slope = r;
                t.slope_approx = Real(r);
                lin.push_back(t);
                rest = ratpoly_divexact(rest, RatPoly{-r, Rat(1)});
            }
            if (rest.size() == 3) {
                Rat P = rest[1] / rest[2], Q = rest[0] / rest[2];
                Rat disc = P * P - 4 * Q;
                if (disc < 0) {
                    TangentFactor t;
                    t.kind = FactorKind::ConjugateQuadratic;
                    t.multiplicity = mult;
                    t.exact = true;
                    t.quad_p = P;
                    t.quad_q = Q;
                    t.root = Complex(Real(Rat(-P / 2)), sqrt(Real(Rat(-disc / 4))));
                    quad.push_back(t);
                    continue;
                }
            }
            if (rest.size() > 1) {
                UnivariatePoly u;
                for (auto& q : rest) u.coeffs.push_back(Complex(q));
                for (auto& rc : find_roots(u, opt)) {
                    if (rc.multiplicity != 1)
                        throw Error(ErrorCode::NumericFailure, "tangent cone: multiplicity not certified");
                    Real scale = max(Real(1L), abs(rc.value));
                    if (abs(rc.value.im) <= ldexp(scale, -working_precision() / 2)) {
                        TangentFactor t;
                        t.kind = FactorKind::RealLinear;
                        t.multiplicity = mult;
                        t.slope_approx = rc.value.re;
                        lin.push_back(t);
                    } else if (rc.value.im.sign() > 0) {
                        TangentFactor t;
                        t.kind = FactorKind::ConjugateQuadratic;
                        t.multiplicity = mult;
                        t.root = rc.value;
                        quad.push_back(t);
                    }
                }
            }
        }
    }
    std::sort(lin.begin(), lin.end(), [](auto& a, auto& b) { return a.slope_approx < b.slope_approx; });
    std::sort(quad.begin(), quad.end(), [](auto& a, auto& b) {
        if (!(a.root.im == b.root.im)) return a.root.im < b.root.im;
        return a.root.re < b.root.re;
    });
    out = lin;
    out.insert(out.end(), quad.begin(), quad.end());
    if (xmult > 0) {
        TangentFactor t;
        t.kind = FactorKind::XAxisFactor;
        t.multiplicity = xmult;
        t.exact = true;
        out.push_back(t);
    }
    return out;
}

namespace {

std::string signed_rat_term(const Rat& c, const std::string& mono, bool first) {
    if (c == 0) return "";
    std::string s;
    if (c < 0)
        s = first ? "-" : "-";
    else if (!first)
        s = "+";
    Rat a = abs(c);
    if (a != 1) s += a.get_str() + "*";
    return s + mono;
}

}  // namespace

std::string describe(const TangentFactor& t) {
    std::string base;
    switch (t.kind) {
    case FactorKind::XAxisFactor:
        base = "x";
        break;
    case FactorKind::RealLinear:
        if (t.exact)
            base = t.slope == 0 ? "y" : "y" + signed_rat_term(-t.slope, "x", false);
        else
            base = "y-(" + t.slope_approx.str(20) + ")*x";
        break;
    case FactorKind::ConjugateQuadratic:
        if (t.exact)
            base = "y^2" + signed_rat_term(t.quad_p, "x*y", false) + signed_rat_term(t.quad_q, "x^2", false);
        else
            base = "(y-(" + to_string(t.root, 20) + ")*x)*conj";
        break;
    }
    bool wrap = base.size() > 1;
    std::string s = wrap ? "(" + base + ")" : base;
    if (t.multiplicity > 1) s += "^" + std::to_string(t.multiplicity);
    return s;
}

}  // namespace nps
