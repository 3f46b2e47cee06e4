#include "nps/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nps/errors.hpp"

namespace nps {

namespace {
thread_local int g_prec = 256;
}

int working_precision() { return g_prec; }

void set_working_precision(int bits) {
    if (bits < 53) throw Error(ErrorCode::InvalidArgument, "precision must be at least 53 bits");
    g_prec = bits;
}

// ---- Real -----------------------------------------------------------------

Real::Real() {
    mpfr_init2(v_, g_prec);
    mpfr_set_zero(v_, 1);
}

Real::Real(double d) {
    mpfr_init2(v_, g_prec);
    mpfr_set_d(v_, d, MPFR_RNDN);
}

Real::Real(long v) {
    mpfr_init2(v_, g_prec);
    mpfr_set_si(v_, v, MPFR_RNDN);
}

Real::Real(const Rat& q) {
    mpfr_init2(v_, g_prec);
    mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
}

Real::Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
}

Real::~Real() { mpfr_clear(v_); }

Real& Real::operator=(const Real& o) {
    if (this != &o) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
}

Real Real::from_string(const std::string& s) {
    Real r;
    if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
        throw Error(ErrorCode::InvalidArgument, "bad number: " + s);
    return r;
}

long Real::exponent() const {
    if (mpfr_zero_p(v_)) return -(1L << 40);
    return mpfr_get_exp(v_);
}

std::string Real::str(int digits) const {
    if (digits <= 0) digits = static_cast<int>(precision() * 0.30103) + 1;
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Re", digits - 1, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

Real& Real::operator+=(const Real& o) {
    mpfr_prec_round(v_, g_prec, MPFR_RNDN);
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}
Real& Real::operator-=(const Real& o) {
    mpfr_prec_round(v_, g_prec, MPFR_RNDN);
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}
Real& Real::operator*=(const Real& o) {
    mpfr_prec_round(v_, g_prec, MPFR_RNDN);
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}
Real& Real::operator/=(const Real& o) {
    mpfr_prec_round(v_, g_prec, MPFR_RNDN);
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

Real operator+(const Real& a, const Real& b) {
    Real r;
    mpfr_add(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}
Real operator-(const Real& a, const Real& b) {
    Real r;
    mpfr_sub(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}
Real operator*(const Real& a, const Real& b) {
    Real r;
    mpfr_mul(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}
Real operator/(const Real& a, const Real& b) {
    Real r;
    mpfr_div(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}
Real operator-(const Real& a) {
    Real r;
    mpfr_neg(r.raw(), a.raw(), MPFR_RNDN);
    return r;
}
bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.raw(), b.raw()) != 0; }
bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.raw(), b.raw()) != 0; }
bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.raw(), b.raw()) != 0; }
bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.raw(), b.raw()) != 0; }
bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.raw(), b.raw()) != 0; }

#define NPS_UNARY(name, fn)                     \
    Real name(const Real& a) {                  \
        Real r;                                 \
        fn(r.raw(), a.raw(), MPFR_RNDN);        \
        return r;                               \
    }
NPS_UNARY(abs, mpfr_abs)
NPS_UNARY(sqrt, mpfr_sqrt)
NPS_UNARY(log, mpfr_log)
NPS_UNARY(exp, mpfr_exp)
NPS_UNARY(cos, mpfr_cos)
NPS_UNARY(sin, mpfr_sin)
#undef NPS_UNARY

Real atan2(const Real& y, const Real& x) {
    Real r;
    mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
    return r;
}

Real pow(const Real& a, const Real& b) {
    Real r;
    mpfr_pow(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}

Real pi() {
    Real r;
    mpfr_const_pi(r.raw(), MPFR_RNDN);
    return r;
}

Real ldexp(const Real& a, long e) {
    Real r;
    mpfr_mul_2si(r.raw(), a.raw(), e, MPFR_RNDN);
    return r;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }

// ---- Complex --------------------------------------------------------------

Complex& Complex::operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
}
Complex& Complex::operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
}
Complex& Complex::operator*=(const Complex& o) {
    *this = *this * o;
    return *this;
}
Complex& Complex::operator/=(const Complex& o) {
    *this = *this / o;
    return *this;
}

Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
Complex operator*(const Complex& a, const Complex& b) {
    if (a.im.is_zero() && b.im.is_zero()) return Complex(a.re * b.re);
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
Complex operator/(const Complex& a, const Complex& b) {
    if (b.im.is_zero()) return {a.re / b.re, a.im / b.re};
    Real d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
Complex conj(const Complex& a) { return {a.re, -a.im}; }
Real norm(const Complex& a) { return a.re * a.re + a.im * a.im; }
Real abs(const Complex& a) {
    if (a.im.is_zero()) return abs(a.re);
    if (a.re.is_zero()) return abs(a.im);
    return sqrt(norm(a));
}
Real arg(const Complex& a) { return atan2(a.im, a.re); }

Complex polar(const Real& r, const Real& theta) { return {r * cos(theta), r * sin(theta)}; }

Complex sqrt(const Complex& a) { return root(a, 2); }

Complex pow(const Complex& a, long n) {
    Complex result(Real(1L));
    Complex base = a;
    bool inv = n < 0;
    unsigned long e = inv ? -n : n;
    while (e) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return inv ? Complex(Real(1L)) / result : result;
}

Complex root(const Complex& a, long q) {
    if (q == 1 || a.is_zero()) return a;
    if (a.im.is_zero() && a.re.sign() > 0) {
        Real r;
        mpfr_rootn_ui(r.raw(), a.re.raw(), q, MPFR_RNDN);
        return Complex(r);
    }
    Real mag;
    mpfr_rootn_ui(mag.raw(), abs(a).raw(), q, MPFR_RNDN);
    if (a.im.is_zero() && q == 2) return {Real(0L), mag};  // negative real
    return polar(mag, arg(a) / Real(q));
}

Complex unit_root(long k, long n) {
    k %= n;
    if (k < 0) k += n;
    long g = std::gcd(k, n);
    k /= g;
    n /= g;
    if (k == 0) return Complex(Real(1L));
    if (n == 2) return Complex(Real(-1L));
    if (n == 4) return k == 1 ? Complex(Real(0L), Real(1L)) : Complex(Real(0L), Real(-1L));
    Real t = Real(2L) * pi() * Real(k) / Real(n);
    return {cos(t), sin(t)};
}

std::string to_string(const Complex& c, int digits) {
    std::string s = c.re.str(digits);
    if (!c.im.is_zero()) {
        std::string i = c.im.str(digits);
        if (i[0] != '-') s += "+";
        s += i + "i";
    }
    return s;
}

// ---- univariate polynomials -------------------------------------------------

Complex UnivariatePoly::eval(const Complex& t) const {
    Complex r;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) r = r * t + *it;
    return r;
}

UnivariatePoly UnivariatePoly::derivative() const {
    UnivariatePoly d;
    for (std::size_t i = 1; i < coeffs.size(); ++i)
        d.coeffs.push_back(coeffs[i] * Complex(Real(static_cast<long>(i))));
    if (d.coeffs.empty()) d.coeffs.push_back(Complex());
    return d;
}

Real UnivariatePoly::norm1() const {
    Real s(0L);
    for (auto& c : coeffs) s += abs(c);
    return s;
}

namespace {

Real eps_bits(int bits) { return ldexp(Real(1L), -bits); }

// coefficients of lead * prod (t - r_k)^{m_k}
std::vector<Complex> expand_roots(const Complex& lead, const std::vector<RootCluster>& cl) {
    std::vector<Complex> c{lead};
    for (auto& r : cl)
        for (int k = 0; k < r.multiplicity; ++k) {
            std::vector<Complex> n(c.size() + 1);
            for (std::size_t i = 0; i < c.size(); ++i) {
                n[i + 1] += c[i];
                n[i] -= c[i] * r.value;
            }
            c = std::move(n);
        }
    return c;
}

bool verify_expansion(const UnivariatePoly& p, const std::vector<RootCluster>& cl, double tol) {
    auto e = expand_roots(p.coeffs.back(), cl);
    if (e.size() != p.coeffs.size()) return false;
    Real scale = p.norm1();
    Real worst(0L);
    for (std::size_t i = 0; i < e.size(); ++i) worst = max(worst, abs(e[i] - p.coeffs[i]));
    return worst <= Real(tol) * scale;
}

std::vector<Complex> aberth(const UnivariatePoly& p, int max_iter) {
    int n = p.degree();
    UnivariatePoly dp = p.derivative();
    // initial radius from the coefficient bound, spread on a rotated circle
    Real lead = abs(p.coeffs.back());
    Real rad(0L);
    for (int i = 0; i < n; ++i) {
        Real t = abs(p.coeffs[i]) / lead;
        if (t.is_zero()) continue;
        Real r = pow(t, Real(1.0 / (n - i)));
        rad = max(rad, r);
    }
    if (rad.is_zero()) rad = Real(1L);
    std::vector<Complex> z(n);
    Real two_pi = Real(2L) * pi();
    for (int k = 0; k < n; ++k) {
        Real th = two_pi * Real(k) / Real(n) + Real(0.4);
        z[k] = polar(rad, th);
    }
    Real tiny = eps_bits(working_precision() - 8);
    for (int it = 0; it < max_iter; ++it) {
        bool moved = false;
        for (int i = 0; i < n; ++i) {
            Complex pv = p.eval(z[i]);
            if (pv.is_zero()) continue;
            Complex dv = dp.eval(z[i]);
            Complex ratio = dv.is_zero() ? Complex(Real(1L)) : pv / dv;
            Complex s;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                Complex d = z[i] - z[j];
                if (d.is_zero()) d = Complex(tiny);
                s += Complex(Real(1L)) / d;
            }
            Complex den = Complex(Real(1L)) - ratio * s;
            Complex w = den.is_zero() ? ratio : ratio / den;
            z[i] -= w;
            if (abs(w) > tiny * max(Real(1L), abs(z[i]))) moved = true;
        }
        if (!moved) break;
    }
    return z;
}

std::vector<RootCluster> cluster(const std::vector<Complex>& z, const Real& rho) {
    int n = static_cast<int>(z.size());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Real scale = max(Real(1L), max(abs(z[i]), abs(z[j])));
            if (abs(z[i] - z[j]) <= rho * scale) parent[find(i)] = find(j);
        }
    std::vector<RootCluster> out;
    std::vector<int> rep;
    for (int i = 0; i < n; ++i) {
        int r = find(i);
        auto it = std::find(rep.begin(), rep.end(), r);
        if (it == rep.end()) {
            rep.push_back(r);
            out.push_back({z[i], 1});
        } else {
            auto& c = out[it - rep.begin()];
            c.value += z[i];
            c.multiplicity++;
        }
    }
    for (auto& c : out) c.value = c.value / Complex(Real(static_cast<long>(c.multiplicity)));
    return out;
}

void polish(const UnivariatePoly& p, std::vector<RootCluster>& cl) {
    for (auto& c : cl) {
        UnivariatePoly d = p;
        for (int k = 1; k < c.multiplicity; ++k) d = d.derivative();
        UnivariatePoly dd = d.derivative();
        for (int it = 0; it < 60; ++it) {
            Complex f = d.eval(c.value);
            Complex fp = dd.eval(c.value);
            if (fp.is_zero()) break;
            Complex step = f / fp;
            c.value -= step;
            if (abs(step) <= eps_bits(working_precision() - 4) * max(Real(1L), abs(c.value))) break;
        }
    }
}

}  // namespace

std::vector<RootCluster> find_roots(const UnivariatePoly& p_in, const RootOptions& opt) {
    UnivariatePoly p = p_in;
    while (p.coeffs.size() > 1 && p.coeffs.back().is_zero()) p.coeffs.pop_back();
    if (p.degree() < 1) throw Error(ErrorCode::InvalidArgument, "find_roots needs degree >= 1");
    std::vector<RootCluster> out;
    int zeros = 0;
    while (p.coeffs.size() > 1 && p.coeffs.front().is_zero()) {
        p.coeffs.erase(p.coeffs.begin());
        ++zeros;
    }
    if (zeros) out.push_back({Complex(), zeros});
    int n = p.degree();
    if (n == 0) return out;
    Complex lead = p.coeffs.back();
    for (auto& c : p.coeffs) c = c / lead;
    if (n == 1) {
        out.push_back({-p.coeffs[0], 1});
        return out;
    }
    int bits = working_precision();
    auto z = aberth(p, opt.max_iterations);
    for (auto& v : z)
        if (!v.re.finite() || !v.im.finite()) throw Error(ErrorCode::NonConvergence, "root iteration diverged");
    // an r-fold root spreads to about eps^(1/r); with r <= n the radius below
    // is far above that spread and far below the separation of distinct roots
    Real base = max(Real(opt.tol), ldexp(Real(1L), -bits / (2 * n)));
    for (double f : {1.0, 1e-4, 1e4, 1e-8, 1e-12}) {
        auto cl = cluster(z, base * Real(f));
        polish(p, cl);
        if (verify_expansion(p, cl, opt.verify_tol)) {
            out.insert(out.end(), cl.begin(), cl.end());
            return out;
        }
    }
    throw Error(ErrorCode::NonConvergence,
                "root clusters failed verification after " + std::to_string(opt.max_iterations) + " iterations");
}

// ---- exact univariate helpers ----------------------------------------------

RatPoly ratpoly_trim(RatPoly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

RatPoly ratpoly_derivative(const RatPoly& p) {
    RatPoly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rat(static_cast<long>(i)));
    return ratpoly_trim(d);
}

namespace {

// returns (quotient, remainder)
std::pair<RatPoly, RatPoly> divmod(RatPoly a, const RatPoly& b) {
    a = ratpoly_trim(a);
    RatPoly q;
    if (a.size() < b.size()) return {q, a};
    q.assign(a.size() - b.size() + 1, Rat(0));
    long nb = static_cast<long>(b.size());
    for (long k = static_cast<long>(a.size()) - 1; k >= nb - 1; --k) {
        Rat c = a[k] / b.back();
        q[k - (nb - 1)] = c;
        for (long j = 0; j < nb; ++j) a[k - (nb - 1) + j] -= c * b[j];
    }
    return {ratpoly_trim(q), ratpoly_trim(a)};
}

}  // namespace

RatPoly monic(RatPoly p) {
    p = ratpoly_trim(p);
    if (p.empty()) return p;
    Rat l = p.back();
    for (auto& c : p) c /= l;
    return p;
}

namespace {

std::vector<Int> divisors(Int n, bool& ok) {
    ok = true;
    if (n < 0) n = -n;
    std::vector<std::pair<Int, int>> fac;
    Int m = n;
    for (Int d = 2; d * d <= m; ++d) {
        if (d > 1000000) {
            ok = false;
            return {};
        }
        int e = 0;
        while (m % d == 0) {
            m /= d;
            ++e;
        }
        if (e) fac.push_back({d, e});
    }
    if (m > 1) fac.push_back({m, 1});
    std::vector<Int> ds{1};
    for (auto& [p, e] : fac) {
        std::size_t sz = ds.size();
        Int pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < sz; ++i) ds.push_back(ds[i] * pk);
        }
    }
    return ds;
}

}  // namespace

RatPoly ratpoly_gcd(RatPoly a, RatPoly b) {
    a = ratpoly_trim(a);
    b = ratpoly_trim(b);
    while (!b.empty()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

RatPoly ratpoly_divexact(const RatPoly& a, const RatPoly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.empty()) throw Error(ErrorCode::Internal, "inexact polynomial division");
    return q;
}

std::vector<Rat> rational_roots(const RatPoly& p_in) {
    RatPoly p = ratpoly_trim(p_in);
    std::vector<Rat> roots;
    if (p.size() < 2) return roots;
    std::size_t z = 0;
    while (z < p.size() && p[z] == 0) ++z;
    if (z) roots.push_back(Rat(0));
    p.erase(p.begin(), p.begin() + z);
    if (p.size() < 2) return roots;
    // clear denominators
    Int den = 1;
    for (auto& c : p) den = lcm(den, c.get_den());
    std::vector<Int> ic;
    for (auto& c : p) ic.push_back(Int(c * Rat(den)));
    bool ok0, ok1;
    auto dp = divisors(ic.front(), ok0);
    auto dq = divisors(ic.back(), ok1);
    if (!ok0 || !ok1) return roots;
    for (auto& a : dp)
        for (auto& b : dq)
            for (int s : {1, -1}) {
                Rat cand(a * s, b);
                cand.canonicalize();
                if (std::find(roots.begin(), roots.end(), cand) != roots.end()) continue;
                Rat v = 0;
                for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * cand + *it;
                if (v == 0) roots.push_back(cand);
            }
    std::sort(roots.begin(), roots.end());
    return roots;
}

std::vector<std::pair<RatPoly, int>> squarefree(const RatPoly& p_in) {
    RatPoly p = ratpoly_trim(p_in);
    if (p.size() < 2) throw Error(ErrorCode::InvalidArgument, "squarefree needs degree >= 1");
    // Yun: p = c * prod a_i^i
    std::vector<std::pair<RatPoly, int>> out;
    RatPoly f = monic(p);
    RatPoly fp = ratpoly_derivative(f);
    RatPoly g = ratpoly_gcd(f, fp);
    RatPoly b = ratpoly_divexact(f, g);
    RatPoly c = ratpoly_divexact(fp, g);
    auto minus_deriv = [](RatPoly c, const RatPoly& b) {
        RatPoly bp = ratpoly_derivative(b);
        c.resize(std::max(c.size(), bp.size()), Rat(0));
        for (std::size_t i = 0; i < bp.size(); ++i) c[i] -= bp[i];
        return ratpoly_trim(c);
    };
    RatPoly d = minus_deriv(c, b);
    int mult = 1;
    while (b.size() > 1) {
        RatPoly a = ratpoly_gcd(b, d);
        if (a.size() > 1) out.push_back({a, mult});
        b = ratpoly_divexact(b, a);
        c = ratpoly_divexact(d, a);
        d = minus_deriv(c, b);
        ++mult;
    }
    return out;
}

std::vector<ExactRoot> find_roots_exact(const RatPoly& p, const RootOptions& opt) {
    std::vector<ExactRoot> out;
    for (auto& [a, mult] : squarefree(p)) {
        RatPoly rest = a;
        for (auto& r : rational_roots(rest)) {
            ExactRoot er;
            er.value = Complex(r);
            er.multiplicity = mult;
            er.rational = true;
            er.exact = r;
            out.push_back(er);
            rest = ratpoly_divexact(rest, RatPoly{-r, Rat(1)});
        }
        if (rest.size() > 1) {
            UnivariatePoly u;
            for (auto& q : rest) u.coeffs.push_back(Complex(q));
            for (auto& rc : find_roots(u, opt)) {
                if (rc.multiplicity != 1)
                    throw Error(ErrorCode::NumericFailure, "square-free factor produced a multiple root");
                ExactRoot er;
                er.value = rc.value;
                er.multiplicity = mult;
                out.push_back(er);
            }
        }
    }
    return out;
}

}  // namespace nps
