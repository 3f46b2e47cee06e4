#include "nps/puiseux.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "nps/errors.hpp"

namespace nps {

namespace {

using Key = std::pair<long, int>;  // (s exponent, y exponent)

// One recursion level: f(s^Q, Y(s) + s^P y) = s^N * G(s, y).
struct Level {
    std::map<Key, Complex> num;
    std::map<Key, Rat> ex;
    bool exact = false;
};

struct Root {
    Complex value;
    int mult = 1;
    bool exact = false;
    Rat exact_value;
};

bool less_complex(const Complex& a, const Complex& b) {
    Real scale = max(Real(1L), max(abs(a), abs(b)));
    Real tol = ldexp(scale, -working_precision() / 2);
    if (abs(a.re - b.re) > tol) return a.re < b.re;
    if (abs(a.im - b.im) > tol) return a.im < b.im;
    return false;
}

// exact q-th root of a rational when it exists
bool exact_root(const Rat& u, long q, Rat& out) {
    if (q == 1) {
        out = u;
        return true;
    }
    if (u < 0 && q % 2 == 0) return false;
    Int n = abs(u.get_num()), d = u.get_den();
    Int rn, rd;
    if (!mpz_root(rn.get_mpz_t(), n.get_mpz_t(), q)) return false;
    if (!mpz_root(rd.get_mpz_t(), d.get_mpz_t(), q)) return false;
    out = Rat(rn, rd);
    if (u < 0) out = -out;
    return true;
}

class Expander {
public:
    Expander(const ExpansionSettings& s) : s_(s) {
        opt_.tol = s.tol;
        chop_bits_ = static_cast<long>(s.precision_bits * 0.75);
        gray_bits_ = s.precision_bits / 4;
    }

    Expansion run(const BivariatePoly& f) {
        Level g;
        g.exact = true;
        for (auto& [m, c] : f.terms()) {
            g.ex[{m.first, m.second}] = c;
            g.num[{m.first, m.second}] = Complex(c);
        }
        out_.multiplicity = multiplicity_at_origin(f);
        recurse(g, {}, 1, 0, 0);
        return std::move(out_);
    }

private:
    void emit(const std::vector<SeriesTerm>& prefix, long Q, Truncation trunc, bool unsep) {
        PuiseuxCycle c;
        c.id = static_cast<int>(out_.cycles.size());
        c.terms = prefix;
        c.q = static_cast<int>(Q);
        c.trunc = trunc;
        c.unseparated = unsep;
        if (unsep) out_.unseparated = true;
        out_.cycles.push_back(std::move(c));
    }

    std::vector<Root> face_roots(const Level& g, const std::vector<SupportPoint>& on_edge, int b2, long q) {
        int deg = (on_edge.front().b - b2) / static_cast<int>(q);
        std::vector<Root> roots;
        if (g.exact) {
            RatPoly K(deg + 1, Rat(0));
            for (auto& p : on_edge) K[(p.b - b2) / q] = g.ex.at({p.a, p.b});
            for (auto& r : find_roots_exact(K, opt_)) {
                Root x;
                x.value = r.value;
                x.mult = r.multiplicity;
                x.exact = r.rational;
                x.exact_value = r.exact;
                roots.push_back(x);
            }
        } else {
            UnivariatePoly K;
            K.coeffs.assign(deg + 1, Complex());
            for (auto& p : on_edge) K.coeffs[(p.b - b2) / q] = g.num.at({p.a, p.b});
            for (auto& r : find_roots(K, opt_)) {
                Root x;
                x.value = r.value;
                x.mult = r.multiplicity;
                roots.push_back(x);
            }
        }
        std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) {
            if (a.exact && b.exact) return a.exact_value < b.exact_value;
            return less_complex(a.value, b.value);
        });
        return roots;
    }

    // G(s'^q, s'^p (c + y1)) / s'^N
    Level substitute(const Level& g, long p, long q, const Complex& c, bool c_exact, const Rat& ce) {
        Level r;
        r.exact = g.exact && c_exact;
        long N = -1;
        int maxb = 0;
        for (auto& [k, v] : g.num) {
            long w = q * k.first + p * k.second;
            if (N < 0 || w < N) N = w;
            maxb = std::max(maxb, k.second);
        }
        std::vector<Complex> cp{Complex(Real(1L))};
        for (int i = 1; i <= maxb; ++i) cp.push_back(cp.back() * c);
        std::vector<Real> cpa;
        for (auto& v : cp) cpa.push_back(abs(v));
        std::vector<std::vector<long>> binom(maxb + 1);
        for (int b = 0; b <= maxb; ++b) {
            binom[b].assign(b + 1, 1);
            for (int j = 1; j < b; ++j) binom[b][j] = binom[b - 1][j - 1] + binom[b - 1][j];
        }
        if (r.exact) {
            std::vector<Rat> ep{Rat(1)};
            for (int i = 1; i <= maxb; ++i) ep.push_back(ep.back() * ce);
            for (auto& [k, v] : g.ex) {
                long A = q * k.first + p * k.second - N;
                for (int j = 0; j <= k.second; ++j) {
                    Rat t = v * ep[k.second - j] * Rat(binom[k.second][j]);
                    if (t == 0) continue;
                    Rat& slot = r.ex[{A, j}];
                    slot += t;
                }
            }
            for (auto it = r.ex.begin(); it != r.ex.end();) {
                if (it->second == 0) {
                    it = r.ex.erase(it);
                } else {
                    r.num[it->first] = Complex(it->second);
                    ++it;
                }
            }
            return r;
        }
        std::map<Key, Real> scale;
        for (auto& [k, v] : g.num) {
            long A = q * k.first + p * k.second - N;
            Real av = abs(v);
            for (int j = 0; j <= k.second; ++j) {
                Complex t = v * cp[k.second - j];
                if (binom[k.second][j] != 1) t = t * Complex(Real(binom[k.second][j]));
                r.num[{A, j}] += t;
                scale[{A, j}] += av * cpa[k.second - j] * Real(binom[k.second][j]);
            }
        }
        // cancellation that is exact in theory leaves rounding noise; drop it
        for (auto it = r.num.begin(); it != r.num.end();) {
            Real sc = scale[it->first];
            Real mag = abs(it->second);
            if (mag <= ldexp(sc, -chop_bits_)) {
                it = r.num.erase(it);
            } else {
                if (mag <= ldexp(sc, -gray_bits_)) out_.low_confidence = true;
                ++it;
            }
        }
        return r;
    }

    static Rat exponent(long P, long Q) {
        Rat e(P, Q);
        e.canonicalize();
        return e;
    }

    // after a simple root: continue the linear recursion up to max_order
    void finish_simple(Level g, std::vector<SeriesTerm> prefix, long Q, long P, int depth) {
        for (;;) {
            long amin = -1;
            for (auto& [k, v] : g.num)
                if (k.second == 0 && (amin < 0 || k.first < amin)) amin = k.first;
            if (amin < 0) {
                emit(prefix, Q, std::nullopt, false);
                return;
            }
            Rat next = exponent(P + amin, Q);
            if (next >= s_.max_order || depth >= s_.max_depth) {
                emit(prefix, Q, next, false);
                return;
            }
            // y1 = s^amin (c1 + y2), c1 = -g(amin,0)/g(0,1)
            Complex c1 = -g.num.at({amin, 0}) / g.num.at({0, 1});
            bool ex = g.exact;
            Rat ce;
            if (ex) ce = -g.ex.at({amin, 0}) / g.ex.at({0, 1});
            g = substitute(g, amin, 1, c1, ex, ce);
            P += amin;
            SeriesTerm t{exponent(P, Q), c1, ex, ce};
            prefix.push_back(t);
            ++depth;
        }
    }

    void recurse(const Level& g, const std::vector<SeriesTerm>& prefix, long Q, long P, int depth) {
        std::vector<SupportPoint> pts;
        for (auto& [k, v] : g.num) {
            if (k.first > (1L << 30)) throw Error(ErrorCode::DegreeOverflow, "exponent growth in expansion");
            pts.push_back({static_cast<int>(k.first), k.second});
        }
        int ymin = pts.empty() ? 0 : pts.front().b;
        for (auto& p : pts) ymin = std::min(ymin, p.b);
        if (ymin >= 2) throw Error(ErrorCode::NonReduced, "repeated factor: the curve is not reduced");
        if (ymin == 1) emit(prefix, Q, std::nullopt, false);
        if (depth >= s_.max_depth) {
            out_.notes.push_back("recursion depth limit reached");
            Rat next = exponent(P + 1, Q);
            for (auto& he : lower_hull(pts))
                for (int k = he.p2.b; k < he.p1.b; ++k) emit(prefix, Q, next, true);
            return;
        }
        for (auto& he : lower_hull(pts)) {
            int h = he.p1.b - he.p2.b;
            Rat mu(he.p2.a - he.p1.a, h);
            mu.canonicalize();
            long p = mu.get_num().get_si(), q = mu.get_den().get_si();
            for (auto& fr : face_roots(g, he.on_edge, he.p2.b, q)) {
                Complex c;
                bool cex = false;
                Rat ce;
                if (fr.exact && exact_root(fr.exact_value, q, ce)) {
                    cex = true;
                    c = Complex(ce);
                } else {
                    c = root(fr.value, q);
                }
                Level g1 = substitute(g, p, q, c, cex, ce);
                long Q1 = Q * q, P1 = q * P + p;
                std::vector<SeriesTerm> pre = prefix;
                pre.push_back({exponent(P1, Q1), c, cex, ce});
                if (fr.mult == 1)
                    finish_simple(std::move(g1), std::move(pre), Q1, P1, depth + 1);
                else
                    recurse(g1, pre, Q1, P1, depth + 1);
            }
        }
    }

    ExpansionSettings s_;
    RootOptions opt_;
    long chop_bits_;
    long gray_bits_;
    Expansion out_;
};

bool close(const Complex& a, const Complex& b, int bits) {
    Real scale = max(Real(1L), max(abs(a), abs(b)));
    // 10^(-0.15 bits)
    Real tol = scale * exp(Real(-0.15 * bits * std::log(10.0)));
    return abs(a - b) <= tol;
}

std::vector<SeriesTerm> branch_terms(const PuiseuxCycle& c, int k, bool negative) {
    std::vector<SeriesTerm> t = c.terms;
    for (auto& term : t) {
        Rat n = term.exp * Rat(c.q);
        long num = n.get_num().get_si();
        Complex w = negative ? unit_root((2 * k + 1) * num, 2L * c.q) : unit_root(k * num, c.q);
        term.coeff = term.coeff * w;
        if (term.exact && !(negative ? ((2 * k + 1) * num) % (2L * c.q) == 0 : (k * num) % c.q == 0))
            term.exact = false;
    }
    return t;
}

Rat min_trunc(const Truncation& a, const Truncation& b, bool& infinite) {
    infinite = !a && !b;
    if (!a) return b ? *b : Rat(0);
    if (!b) return *a;
    return std::min(*a, *b);
}

// conj(x) == y on all exponents both know
bool conj_match(const std::vector<SeriesTerm>& x, const Truncation& tx, const std::vector<SeriesTerm>& y,
                const Truncation& ty, int bits) {
    bool inf;
    Rat lim = min_trunc(tx, ty, inf);
    std::map<Rat, std::pair<Complex, Complex>> m;
    for (auto& t : x)
        if (inf || t.exp < lim) m[t.exp].first = conj(t.coeff);
    for (auto& t : y)
        if (inf || t.exp < lim) m[t.exp].second = t.coeff;
    for (auto& [e, v] : m)
        if (!close(v.first, v.second, bits)) return false;
    return true;
}

bool is_real_series(const std::vector<SeriesTerm>& t, const Truncation& tr, int bits) {
    return conj_match(t, tr, t, tr, bits);
}

int real_prefix(const std::vector<SeriesTerm>& t, int bits) {
    int n = 0;
    for (auto& term : t) {
        if (!close(term.coeff, conj(term.coeff), bits)) break;
        ++n;
    }
    return n;
}

}  // namespace

Expansion puiseux_expand_full(const BivariatePoly& f, const ExpansionSettings& s) {
    if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "zero polynomial");
    PrecisionGuard guard(s.precision_bits);
    bool pure_y = false;
    for (auto& [m, c] : f.terms())
        if (m.first == 0) pure_y = true;
    if (!pure_y) throw Error(ErrorCode::NeedsPreparation, "no pure y-power term; shear first");
    if (f.coeff(0, 0) != 0) throw Error(ErrorCode::InvalidArgument, "the curve does not pass through the origin");
    Expander ex(s);
    Expansion e = ex.run(f);
    // conjugate cycles: the conjugate of pro-branch 0 is a pro-branch of the partner
    for (auto& c : e.cycles) {
        auto t0 = branch_terms(c, 0, false);
        for (auto& d : e.cycles) {
            if (d.q != c.q) continue;
            bool found = false;
            for (int k = 0; k < d.q && !found; ++k)
                if (conj_match(t0, c.trunc, branch_terms(d, k, false), d.trunc, s.precision_bits)) found = true;
            if (found) {
                c.conj_class = d.id;
                break;
            }
        }
        if (c.conj_class < 0) {
            e.low_confidence = true;
            e.notes.push_back("cycle " + std::to_string(c.id) + " has no conjugate partner");
        }
    }
    return e;
}

std::vector<PuiseuxCycle> puiseux_expand(const BivariatePoly& f, const ExpansionSettings& s) {
    Expansion e = puiseux_expand_full(f, s);
    if (e.unseparated) {
        throw Error(ErrorCode::DepthExceeded, "expansion did not separate all branches within depth " +
                                                  std::to_string(s.max_depth));
    }
    return e.cycles;
}

std::vector<SeriesTerm> negative_side_terms(const PuiseuxCycle& c, int k) { return branch_terms(c, k, true); }

std::vector<ProBranch> expand_to_probranches(const std::vector<PuiseuxCycle>& cycles, const ExpansionSettings& s,
                                             int force_side) {
    PrecisionGuard guard(s.precision_bits);
    int bits = s.precision_bits;
    std::vector<int> first(cycles.size());
    int total = 0;
    for (std::size_t i = 0; i < cycles.size(); ++i) {
        first[i] = total;
        total += cycles[i].q;
    }
    // side choice per cycle: a real cycle is read where it has the most real
    // pro-branches; a conjugate pair where its pro-branches stay real longest
    std::vector<int> side(cycles.size(), 1);
    for (std::size_t i = 0; i < cycles.size(); ++i) {
        auto& c = cycles[i];
        int partner = c.conj_class;
        if (force_side != 0) {
            side[i] = force_side;
            continue;
        }
        if (partner >= 0 && partner < static_cast<int>(i)) {
            side[i] = side[partner];
            continue;
        }
        int score[2] = {0, 0};
        for (int sd = 0; sd < 2; ++sd)
            for (int k = 0; k < c.q; ++k) {
                auto t = branch_terms(c, k, sd == 1);
                if (partner == static_cast<int>(i))
                    score[sd] += is_real_series(t, c.trunc, bits) ? 1 : 0;
                else
                    score[sd] = std::max(score[sd], real_prefix(t, bits));
            }
        side[i] = score[1] > score[0] ? -1 : 1;
    }
    std::vector<ProBranch> out;
    for (std::size_t i = 0; i < cycles.size(); ++i) {
        auto& c = cycles[i];
        for (int k = 0; k < c.q; ++k) {
            ProBranch b;
            b.id = first[i] + k;
            b.cycle_id = c.id;
            b.root_index = k;
            b.terms = branch_terms(c, k, false);
            b.trunc = c.trunc;
            b.side = side[i];
            out.push_back(std::move(b));
        }
    }
    for (std::size_t i = 0; i < cycles.size(); ++i) {
        auto& c = cycles[i];
        bool neg = side[i] < 0;
        int partner = c.conj_class < 0 ? static_cast<int>(i) : c.conj_class;
        auto& d = cycles[partner];
        for (int k = 0; k < c.q; ++k) {
            auto t = branch_terms(c, k, neg);
            for (int j = 0; j < d.q; ++j) {
                if (conj_match(t, c.trunc, branch_terms(d, j, neg), d.trunc, bits)) {
                    ProBranch& b = out[first[i] + k];
                    b.conjugate_partner = first[partner] + j;
                    b.is_real = b.conjugate_partner == b.id;
                    break;
                }
            }
        }
    }
    return out;
}

Valuation residual_valuation(const BivariatePoly& f, const ProBranch& br, const std::vector<double>& probes) {
    int bits = working_precision();
    std::vector<double> xs, ys;
    bool all_zero = true;
    for (double xv : probes) {
        Real x(xv);
        Complex y;
        for (auto& t : br.terms) {
            Real e(t.exp);
            y += t.coeff * Complex(pow(x, e));
        }
        Complex sum;
        Real scale(0L);
        for (auto& [m, c] : f.terms()) {
            Complex v = Complex(Real(c)) * Complex(pow(x, Real(static_cast<long>(m.first)))) * pow(y, m.second);
            sum += v;
            scale += abs(v);
        }
        Real mag = abs(sum);
        if (mag <= ldexp(scale, -(bits - 24))) continue;
        all_zero = false;
        xs.push_back(std::log(xv));
        ys.push_back(log(mag).to_double());
    }
    Valuation v;
    if (all_zero) {
        if (!br.trunc) {
            v.infinite = true;
            return v;
        }
        throw Error(ErrorCode::ProbeUnderflow, "residual below working precision at every probe");
    }
    if (xs.size() < 2) {
        if (!br.trunc) {
            v.infinite = true;
            return v;
        }
        throw Error(ErrorCode::ProbeUnderflow, "too few usable probes");
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= xs.size();
    my /= ys.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    v.slope = sxy / sxx;
    return v;
}

}  // namespace nps
