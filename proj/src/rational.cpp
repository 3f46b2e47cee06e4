#include "nps/rational.hpp"

#include <cctype>

#include "nps/errors.hpp"

namespace nps {

Rat parse_rat(const std::string& s) {
    std::size_t i = 0;
    auto digits = [&](std::string& out) {
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) out += s[i++];
        return i > start;
    };
    std::string num, den;
    bool neg = false;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = s[i++] == '-';
    if (!digits(num)) throw SyntaxError(i, "digit");
    if (i < s.size() && s[i] == '/') {
        ++i;
        if (!digits(den)) throw SyntaxError(i, "digit");
    }
    if (i != s.size()) throw SyntaxError(i, "end of rational");
    Rat r(Int(num), den.empty() ? Int(1) : Int(den));
    if (r.get_den() == 0) throw SyntaxError(i, "nonzero denominator");
    r.canonicalize();
    return neg ? Rat(-r) : r;
}

std::string to_string(const Rat& r) { return r.get_str(); }

Int lcm(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

long to_long(const Int& z) {
    if (!z.fits_slong_p()) throw Error(ErrorCode::DegreeOverflow, "integer too large: " + z.get_str());
    return z.get_si();
}

}  // namespace nps
