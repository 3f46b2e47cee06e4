#pragma once

#include <gmpxx.h>

#include <string>

namespace nps {

using Rat = mpq_class;
using Int = mpz_class;

// accepts "p", "-p", "p/q"; throws SyntaxError otherwise
Rat parse_rat(const std::string& s);
std::string to_string(const Rat& r);

inline Rat make_rat(long p, long q = 1) {
    Rat r(p, q);
    r.canonicalize();
    return r;
}

inline Int rat_floor(const Rat& r) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

Int lcm(const Int& a, const Int& b);
long to_long(const Int& z);

}  // namespace nps
