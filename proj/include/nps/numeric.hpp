#pragma once

#include <mpfr.h>

#include <string>
#include <vector>

#include "nps/rational.hpp"

namespace nps {

// Working precision is per thread so that batch workers can run at
// different precisions without stepping on each other.
int working_precision();
void set_working_precision(int bits);

class PrecisionGuard {
public:
    explicit PrecisionGuard(int bits) : saved_(working_precision()) { set_working_precision(bits); }
    ~PrecisionGuard() { set_working_precision(saved_); }
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    int saved_;
};

class Real {
public:
    Real();
    Real(double d);
    Real(long v);
    Real(int v) : Real(static_cast<long>(v)) {}
    explicit Real(const Rat& q);
    Real(const Real& o);
    Real(Real&& o) noexcept;
    ~Real();
    Real& operator=(const Real& o);
    Real& operator=(Real&& o) noexcept;

    static Real from_string(const std::string& s);

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }
    int precision() const { return static_cast<int>(mpfr_get_prec(v_)); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool finite() const { return mpfr_number_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    long exponent() const;  // base-2 exponent, very negative for zero
    std::string str(int digits = 0) const;

    Real& operator+=(const Real& o);
    Real& operator-=(const Real& o);
    Real& operator*=(const Real& o);
    Real& operator/=(const Real& o);

private:
    mpfr_t v_;
};

Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);
Real operator-(const Real& a);
bool operator<(const Real& a, const Real& b);
bool operator>(const Real& a, const Real& b);
bool operator<=(const Real& a, const Real& b);
bool operator>=(const Real& a, const Real& b);
bool operator==(const Real& a, const Real& b);

Real abs(const Real& a);
Real sqrt(const Real& a);
Real log(const Real& a);
Real exp(const Real& a);
Real cos(const Real& a);
Real sin(const Real& a);
Real atan2(const Real& y, const Real& x);
Real pow(const Real& a, const Real& b);
Real pi();
Real ldexp(const Real& a, long e);
Real max(const Real& a, const Real& b);

struct Complex {
    Real re;
    Real im;

    Complex() : re(0L), im(0L) {}
    Complex(const Real& r) : re(r), im(0L) {}
    Complex(const Real& r, const Real& i) : re(r), im(i) {}
    Complex(double r) : re(r), im(0L) {}
    explicit Complex(const Rat& q) : re(q), im(0L) {}

    Complex& operator+=(const Complex& o);
    Complex& operator-=(const Complex& o);
    Complex& operator*=(const Complex& o);
    Complex& operator/=(const Complex& o);
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
};

Complex operator+(const Complex& a, const Complex& b);
Complex operator-(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Complex& b);
Complex operator/(const Complex& a, const Complex& b);
Complex operator-(const Complex& a);
Complex conj(const Complex& a);
Real abs(const Complex& a);
Real norm(const Complex& a);  // |a|^2
Real arg(const Complex& a);
Complex polar(const Real& r, const Real& theta);
Complex sqrt(const Complex& a);
Complex pow(const Complex& a, long n);
// principal q-th root
Complex root(const Complex& a, long q);
// e^{2 pi i k/n}, computed from the reduced fraction
Complex unit_root(long k, long n);
std::string to_string(const Complex& c, int digits = 0);

// dense univariate polynomial, ascending degree
struct UnivariatePoly {
    std::vector<Complex> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    Complex eval(const Complex& t) const;
    UnivariatePoly derivative() const;
    Real norm1() const;
};

struct RootCluster {
    Complex value;
    int multiplicity = 1;
};

struct RootOptions {
    double tol = 1e-30;        // relative clustering distance floor
    int max_iterations = 200;  // Aberth sweeps
    double verify_tol = 1e-20; // re-expansion check
};

// Aberth–Ehrlich iteration followed by greedy clustering. Multiplicity
// detection scales the clustering radius with the expected spread of an
// r-fold root, then each cluster is polished with Newton on the
// (r-1)-th derivative and the factorization is verified by re-expansion.
std::vector<RootCluster> find_roots(const UnivariatePoly& p, const RootOptions& opt = {});

// Exact rational polynomial (ascending degree).
using RatPoly = std::vector<Rat>;

// Roots of an exact polynomial. Multiplicities come from an exact
// square-free decomposition; rational roots are found exactly first.
struct ExactRoot {
    Complex value;
    int multiplicity = 1;
    bool rational = false;
    Rat exact;  // valid when rational
};
std::vector<ExactRoot> find_roots_exact(const RatPoly& p, const RootOptions& opt = {});

RatPoly ratpoly_trim(RatPoly p);
RatPoly ratpoly_derivative(const RatPoly& p);
RatPoly ratpoly_gcd(RatPoly a, RatPoly b);
RatPoly ratpoly_divexact(const RatPoly& a, const RatPoly& b);
std::vector<Rat> rational_roots(const RatPoly& p);
// Yun's square-free decomposition of the monic associate: [(a_i, i)]
std::vector<std::pair<RatPoly, int>> squarefree(const RatPoly& p);
RatPoly monic(RatPoly p);

}  // namespace nps
