#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "nps/catalogue.hpp"
#include "nps/errors.hpp"
#include "nps/render_io.hpp"

// Realization search. A target diagram fixes, for every cluster of
// pro-branches, how far its members agree and how far they sit from the
// rest. Once the common prefix P of a cluster is chosen, "r branches agree
// with P up to order v" is linear in the unknown coefficients:
//   ord_x (1/j!) d^j f/dy^j (x, P(x)) >= w + (r - j) v,  j < r,
// with w the summed contact of the outside branches. Prefixes are drawn at
// random (compatible with conjugation), the system is solved exactly and
// the free coefficients are drawn at random; classification decides.

namespace nps {

namespace {

struct GQ {
    Rat re, im;
    bool zero() const { return re == 0 && im == 0; }
};
GQ operator+(const GQ& a, const GQ& b) { return {a.re + b.re, a.im + b.im}; }
GQ operator*(const GQ& a, const GQ& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
bool operator<(const GQ& a, const GQ& b) { return a.re != b.re ? a.re < b.re : a.im < b.im; }

using Prefix = std::map<Rat, GQ>;

struct Cluster {
    Prefix p;
    int r = 0;
    Rat v, w;
};

long den(const Rat& q) { return to_long(Int(q.get_den())); }

long grid(const Prefix& p) {
    Int q = 1;
    for (auto& [e, c] : p) q = lcm(q, Int(e.get_den()));
    return to_long(q);
}

Rat frac(const Rat& q) { return q - Rat(rat_floor(q)); }

// rho with conj(rho) = rho * exp(2 pi i f), when it lies in Q(i)
std::optional<GQ> direction(const Rat& f) {
    Rat x = frac(f);
    if (x == 0) return GQ{1, 0};
    if (x == Rat(1, 2)) return GQ{0, 1};
    if (x == Rat(1, 4)) return GQ{1, -1};
    if (x == Rat(3, 4)) return GQ{1, 1};
    return std::nullopt;
}

std::string shape(const DiagramNode& n) {
    Diagram d{n};
    return canonical_form(d, Mode::Complex).text;
}

class Generator {
public:
    Generator(std::mt19937_64& g) : g_(g) {}
    std::vector<Cluster> out;

    Rat rat() {
        std::uniform_int_distribution<int> p(1, 9), q(1, 4), s(0, 1);
        Rat r(p(g_) * (s(g_) ? 1 : -1), q(g_));
        r.canonicalize();
        return r;
    }
    GQ gaussian() { return {rat(), rat()}; }
    bool coin(double p) { return std::bernoulli_distribution(p)(g_); }

    // twist: nullopt when the prefix is not conjugation-invariant up to a
    // root of unity, else k with conj(c_u) = c_u exp(2 pi i k u)
    using Twist = std::optional<Rat>;

    void fill(Prefix& p, const Rat& from, const Rat& to, long q, const Twist& tw) {
        for (Rat u = Rat(rat_floor(from * q) + 1, q); u < to; u += Rat(1, q)) {
            u.canonicalize();
            if (coin(0.3)) continue;
            if (!tw) {
                p[u] = gaussian();
            } else if (auto d = direction(*tw * u)) {
                p[u] = GQ{rat(), 0} * *d;
            }
        }
    }

    bool node(const DiagramNode& n, Prefix p, const Twist& tw, const Rat& w) {
        int r = leaf_count(n);
        Rat v = n.split;
        out.push_back({p, r, v, w});
        long qp = grid(p);
        long q1 = std::lcm(qp, den(v));
        long rr = q1 / qp;

        struct Entry {
            const DiagramNode* node;
            int brace;
        };
        std::vector<Entry> kids;
        int braces = 0;
        for (auto& c : n.children) {
            if (c.kind == DiagramNode::Kind::Brace) {
                for (auto& m : c.children) kids.push_back({&m, braces});
                ++braces;
            } else {
                kids.push_back({&c, -1});
            }
        }
        auto descend = [&](const DiagramNode& c, std::optional<GQ> a, long q, const Twist& t) {
            Prefix cp = p;
            if (a) cp[v] = *a;
            fill(cp, v, c.split, q, t);
            return node(c, cp, t, w + Rat(r - leaf_count(c)) * v);
        };

        if (rr == 1) {
            std::set<GQ> used;
            std::set<int> seen;
            for (auto& e : kids) {
                if (e.node->is_leaf()) continue;
                if (e.brace >= 0 && !seen.insert(e.brace).second) continue;
                GQ a;
                Twist t = tw;
                for (int tries = 0;; ++tries) {
                    if (tries > 50) return false;
                    if (!tw || e.brace >= 0) {
                        a = gaussian();
                        if (tw && a.im == 0) continue;
                        t = std::nullopt;
                    } else {
                        auto d = direction(*tw * v);
                        if (!d) return false;
                        a = GQ{rat(), 0} * *d;
                    }
                    if (used.insert(a).second) break;
                }
                if (!descend(*e.node, a, qp, t)) return false;
            }
            return true;
        }

        // a new ramification: children come in orbits of rr, plus at most
        // one child whose coefficient at x^v vanishes
        std::map<std::string, std::vector<const DiagramNode*>> groups;
        int leaves = 0;
        for (auto& e : kids) {
            if (e.node->is_leaf())
                ++leaves;
            else
                groups[shape(*e.node)].push_back(e.node);
        }
        int rem = leaves % rr;
        for (auto& [s, g] : groups) rem += static_cast<int>(g.size() % rr);
        if (rem > 1) return false;
        for (auto& [s, g] : groups) {
            std::size_t i = 0;
            if (g.size() % rr == 1) {
                if (!descend(*g[0], std::nullopt, qp, tw)) return false;
                i = 1;
            }
            long orbits = static_cast<long>(g.size() - i) / rr;
            long couples = tw ? std::uniform_int_distribution<long>(0, orbits / 2)(g_) : 0;
            for (long o = 0; o < orbits - couples; ++o, i += rr) {
                if (o < couples || !tw) {
                    if (!descend(*g[i], gaussian(), q1, std::nullopt)) return false;
                    continue;
                }
                std::vector<std::pair<Rat, GQ>> choice;
                for (long k = 0; k < rr; ++k) {
                    Rat t = *tw + Rat(qp * k);
                    if (auto d = direction(t * v)) choice.push_back({t, *d});
                }
                if (choice.empty()) return false;
                auto& [t, d] = choice[std::uniform_int_distribution<std::size_t>(0, choice.size() - 1)(g_)];
                if (!descend(*g[i], GQ{rat(), 0} * d, q1, t)) return false;
            }
        }
        return true;
    }

private:
    std::mt19937_64& g_;
};

struct Line {
    GQ slope;
    int mult = 0;
    bool real = true;
};

std::optional<Rat> rat_sqrt(const Rat& q) {
    if (q < 0) return std::nullopt;
    Int n = q.get_num(), d = q.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
    Int sn, sd;
    mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
    return Rat(sn, sd);
}

std::optional<std::vector<Line>> gaussian_lines(const BivariatePoly& cone) {
    std::vector<Line> out;
    for (auto& t : tangent_cone(cone)) {
        if (t.kind == FactorKind::XAxisFactor || !t.exact) return std::nullopt;
        if (t.kind == FactorKind::RealLinear) {
            out.push_back({GQ{t.slope, 0}, t.multiplicity, true});
            continue;
        }
        auto s = rat_sqrt(4 * t.quad_q - t.quad_p * t.quad_p);
        if (!s) return std::nullopt;
        out.push_back({GQ{-t.quad_p / 2, *s / 2}, t.multiplicity, false});
    }
    return out;
}

// cluster prefixes for the whole diagram; nullopt when the tangent lines
// cannot carry it
std::optional<std::vector<Cluster>> prefixes(const Diagram& d, const std::vector<Line>& lines, int m,
                                             std::mt19937_64& g) {
    Generator gen(g);
    const DiagramNode& root = d.root;
    if (root.is_leaf()) return std::vector<Cluster>{};
    if (root.split != 1) {
        if (lines.size() != 1 || !lines[0].real) return std::nullopt;
        Prefix p;
        if (!lines[0].slope.zero()) p[Rat(1)] = lines[0].slope;
        gen.fill(p, Rat(1), root.split, 1, Rat(0));
        if (!gen.node(root, p, Rat(0), Rat(0))) return std::nullopt;
        return gen.out;
    }
    std::vector<Line> pool = lines;
    std::shuffle(pool.begin(), pool.end(), g);
    std::vector<bool> taken(pool.size(), false);
    auto take = [&](int mult, bool real) -> const Line* {
        for (std::size_t i = 0; i < pool.size(); ++i)
            if (!taken[i] && pool[i].mult == mult && pool[i].real == real) {
                taken[i] = true;
                return &pool[i];
            }
        return nullptr;
    };
    for (auto& c : root.children) {
        bool brace = c.kind == DiagramNode::Kind::Brace;
        const DiagramNode& rep = brace ? c.children[0] : c;
        const Line* l = take(leaf_count(rep), !brace);
        if (!l) return std::nullopt;
        if (rep.is_leaf()) continue;
        Prefix p;
        if (!l->slope.zero()) p[Rat(1)] = l->slope;
        Generator::Twist tw = brace ? Generator::Twist{} : Generator::Twist{Rat(0)};
        gen.fill(p, Rat(1), rep.split, 1, tw);
        if (!gen.node(rep, p, tw, Rat(m - leaf_count(rep)))) return std::nullopt;
    }
    if (std::find(taken.begin(), taken.end(), false) != taken.end()) return std::nullopt;
    return gen.out;
}

using Series = std::vector<GQ>;

Series mul(const Series& a, const Series& b, std::size_t n) {
    Series c(n);
    for (std::size_t i = 0; i < a.size() && i < n; ++i) {
        if (a[i].zero()) continue;
        for (std::size_t j = 0; j < b.size() && i + j < n; ++j)
            if (!b[j].zero()) c[i + j] = c[i + j] + a[i] * b[j];
    }
    return c;
}

Rat binom(int n, int k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return Rat(r);
}

struct System {
    std::vector<std::vector<Rat>> rows;  // coefficients then right-hand side
    bool inconsistent = false;
};

void add_equations(System& sys, const Cluster& cl, const BivariatePoly& known,
                   const std::vector<PerturbationTerm>& unknown) {
    long q = grid(cl.p);
    int ymax = known.degree_y();
    for (auto& t : unknown) ymax = std::max(ymax, t.b);
    // number of t-exponents k with k/q below the bound
    auto bound = [&](int j) { return -to_long(rat_floor(-Rat(q) * (cl.w + Rat(cl.r - j) * cl.v))); };
    std::size_t n = static_cast<std::size_t>(std::max(0L, bound(0)));
    if (n == 0) return;
    Series phi(n);
    for (auto& [e, c] : cl.p) {
        Rat eq = e * q;
        long k = to_long(Int(eq.get_num()));
        if (k < static_cast<long>(n)) phi[k] = c;
    }
    std::vector<Series> pw{Series{GQ{1, 0}}};
    for (int b = 1; b <= ymax; ++b) pw.push_back(mul(pw.back(), phi, n));

    std::size_t cols = unknown.size();
    for (int j = 0; j < cl.r; ++j) {
        long kmax = bound(j);
        if (kmax <= 0) continue;
        // coefficient of t^k in d^j/j! of a monomial, evaluated at the prefix
        auto contrib = [&](int a, int b, long k) -> GQ {
            if (b < j) return {};
            long s = k - static_cast<long>(a) * q;
            if (s < 0 || s >= static_cast<long>(pw[b - j].size())) return {};
            GQ c = pw[b - j][s];
            Rat m = binom(b, j);
            return {c.re * m, c.im * m};
        };
        for (long k = 0; k < kmax; ++k) {
            std::vector<Rat> re(cols + 1), im(cols + 1);
            for (std::size_t u = 0; u < cols; ++u) {
                GQ c = contrib(unknown[u].a, unknown[u].b, k);
                re[u] = c.re;
                im[u] = c.im;
            }
            GQ rhs;
            for (auto& [mono, c] : known.terms()) {
                GQ x = contrib(mono.first, mono.second, k);
                rhs = rhs + GQ{-x.re * c, -x.im * c};
            }
            re[cols] = rhs.re;
            im[cols] = rhs.im;
            for (auto* row : {&re, &im}) {
                bool any = std::any_of(row->begin(), row->end() - 1, [](const Rat& z) { return z != 0; });
                if (any)
                    sys.rows.push_back(*row);
                else if (row->back() != 0)
                    sys.inconsistent = true;
            }
        }
    }
}

// row reduction; free columns get draws from the generator
std::optional<std::vector<Rat>> solve(System sys, std::size_t cols, const std::function<Rat()>& draw) {
    if (sys.inconsistent) return std::nullopt;
    auto& a = sys.rows;
    std::vector<int> pivot_col;
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
        std::size_t p = row;
        while (p < a.size() && a[p][c] == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[row]);
        Rat inv = 1 / a[row][c];
        for (auto& z : a[row]) z *= inv;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == row || a[i][c] == 0) continue;
            Rat f = a[i][c];
            for (std::size_t k = c; k <= cols; ++k) a[i][k] -= f * a[row][k];
        }
        pivot_col.push_back(static_cast<int>(c));
        ++row;
    }
    for (std::size_t i = row; i < a.size(); ++i)
        if (a[i][cols] != 0) return std::nullopt;
    std::vector<Rat> x(cols);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivot_col) is_pivot[c] = true;
    for (std::size_t c = 0; c < cols; ++c)
        if (!is_pivot[c]) x[c] = draw();
    for (std::size_t i = 0; i < pivot_col.size(); ++i) {
        Rat s = a[i][cols];
        for (std::size_t c = 0; c < cols; ++c)
            if (!is_pivot[c]) s -= a[i][c] * x[c];
        x[pivot_col[i]] = s;
    }
    return x;
}

bool polygon_matches(const BivariatePoly& f, const std::vector<SupportPoint>& expected) {
    if (expected.empty()) return true;
    NewtonPolygon np = newton_polygon(f);
    std::vector<SupportPoint> v;
    for (auto& e : np.edges) {
        if (v.empty()) v.push_back(e.p1);
        v.push_back(e.p2);
    }
    return v == expected;
}

std::uint64_t hash_id(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) h = (h ^ c) * 1099511628211ULL;
    return h;
}

}  // namespace

RealizationOutcome find_realizations(const FamilySpec& spec, const Rat& target, int budget, std::uint64_t seed,
                                     const ExpansionSettings& s) {
    RealizationOutcome out;
    std::vector<TemplateExpansion> cands;
    for (auto& t : spec.expected_diagrams) {
        if (t.letters().empty()) continue;
        for (auto& e : expand_template(t)) {
            if (!e.valid) continue;
            bool hit = std::any_of(e.assignment.begin(), e.assignment.end(),
                                   [&](auto& kv) { return kv.second == target; });
            if (hit) cands.push_back(std::move(e));
        }
    }
    if (cands.empty()) {
        out.exhausted = true;
        out.reason = "no parameterized label";
        return out;
    }

    std::seed_seq ss{seed, hash_id(spec.id), static_cast<std::uint64_t>(target.get_num().get_si()),
                     static_cast<std::uint64_t>(target.get_den().get_si())};
    std::mt19937_64 g(ss);
    Generator rnd(g);

    ExpansionSettings twice = s;
    twice.precision_bits = 2 * s.precision_bits;

    // without cone parameters the tangent lines are fixed, so a template
    // whose first splits they cannot carry is dropped up front
    if (spec.parameters.empty()) {
        BivariatePoly cone = spec.instantiate({});
        auto lines = gaussian_lines(cone);
        if (!lines) {
            out.exhausted = true;
            out.reason = "tangent lines are not Gaussian rationals";
            return out;
        }
        std::vector<TemplateExpansion> fit;
        for (auto& te : cands) {
            bool ok = false;
            for (int k = 0; k < 32 && !ok; ++k) ok = prefixes(te.diagram, *lines, multiplicity_at_origin(cone), g).has_value();
            if (ok) fit.push_back(std::move(te));
        }
        cands = std::move(fit);
        if (cands.empty()) {
            out.exhausted = true;
            out.reason = "no template with this label fits the tangent cone";
            return out;
        }
    }

    for (int attempt = 0; attempt < budget; ++attempt) {
        ++out.attempts;
        const TemplateExpansion& te = cands[static_cast<std::size_t>(attempt) % cands.size()];

        std::map<std::string, Rat> values;
        if (!spec.parameters.empty()) {
            try {
                auto inst = sample_family(spec, 1, seed + static_cast<std::uint64_t>(attempt));
                for (auto& p : spec.parameters) values[p] = inst[0].values.at(p);
            } catch (const Error&) {
                continue;
            }
        }
        BivariatePoly cone = spec.instantiate(values);
        auto lines = gaussian_lines(cone);
        if (!lines) continue;
        std::optional<std::vector<Cluster>> cls;
        for (int tries = 0; tries < 4 && !cls; ++tries) cls = prefixes(te.diagram, *lines, multiplicity_at_origin(cone), g);
        if (!cls) continue;
        System sys;
        for (auto& c : *cls) add_equations(sys, c, cone, spec.perturbation);
        auto x = solve(sys, spec.perturbation.size(), [&] { return rnd.rat(); });
        if (!x) continue;
        for (std::size_t i = 0; i < spec.perturbation.size(); ++i) values[spec.perturbation[i].coeff] = (*x)[i];
        if (!std::all_of(spec.constraints.begin(), spec.constraints.end(), [&](auto& c) { return c.holds(values); }))
            continue;
        BivariatePoly f = spec.instantiate(values);
        if (!polygon_matches(f, spec.expected_polygon)) continue;
        try {
            ClassificationResult r = classify_curve(f, s);
            // the label sits in the complex key; braces may differ from the figure
            if (r.provisional() || r.key_complex != te.key_complex) continue;
            ClassificationResult r2 = classify_curve(f, twice);
            if (r2.provisional() || r2.key_complex != te.key_complex || r2.key_real != r.key_real) continue;
            out.found.push_back({f, std::move(r), te.key_real.text, te.template_index});
            return out;
        } catch (const Error&) {
            continue;
        }
    }
    out.exhausted = true;
    out.reason = "budget exhausted";
    return out;
}

}  // namespace nps
