#include "checks.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "nps/errors.hpp"
#include "support.hpp"

namespace npstest {

using namespace nps;

namespace {

std::string show(const BivariatePoly& f) { return nps::to_string(f); }

bool same_contacts(const ContactMatrix& a, const ContactMatrix& b) {
    if (a.n != b.n) return false;
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j)
            if (i != j && *a.at(i, j) != *b.at(i, j)) return false;
    return true;
}

// nonzero terms only; explicit zero coefficients carry no information
std::vector<const SeriesTerm*> nonzero(const std::vector<SeriesTerm>& ts) {
    std::vector<const SeriesTerm*> out;
    for (auto& t : ts)
        if (abs(t.coeff).to_double() > 1e-50) out.push_back(&t);
    return out;
}

bool close(const Complex& a, const Complex& b, double rel) {
    double s = std::max({abs(a).to_double(), abs(b).to_double(), 1.0});
    return abs(a - b).to_double() <= rel * s;
}

bool same_cycle(const PuiseuxCycle& a, const PuiseuxCycle& b, double rel) {
    if (a.q != b.q) return false;
    auto x = nonzero(a.terms), y = nonzero(b.terms);
    std::size_t n = std::min(x.size(), y.size());
    // compare on the common truncation
    Rat cut = std::min(a.trunc.value_or(Rat(1000)), b.trunc.value_or(Rat(1000)));
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i]->exp >= cut) break;
        if (x[i]->exp != y[i]->exp || !close(x[i]->coeff, y[i]->coeff, rel)) return false;
    }
    for (auto* v : {&x, &y})
        if (v->size() > n && (*v)[n]->exp < cut) return false;
    return true;
}

}  // namespace

std::vector<PropertyResult> run_properties(int n, std::uint64_t seed) {
    std::vector<PropertyResult> out(7);
    auto& ultra = out[0];
    auto& dendro = out[1];
    auto& ram = out[2];
    auto& scaling = out[3];
    auto& shearing = out[4];
    auto& residual = out[5];
    auto& doubled = out[6];
    ultra.name = "ultrametric validity of every contact matrix";
    dendro.name = "dendrogram and contact matrix round trip";
    ram.name = "ramifications sum to the multiplicity";
    scaling.name = "monomial scaling leaves the keys unchanged";
    shearing.name = "generic shear leaves the keys unchanged";
    residual.name = "residual slope >= truncation order - 0.1";
    doubled.name = "doubled precision changes no exponent";

    std::mt19937_64 rng(seed);
    auto small = [&](bool allow_negative) {
        std::uniform_int_distribution<int> p(1, 7), q(1, 4), sg(0, 1);
        Rat r = make_rat(p(rng), q(rng));
        if (allow_negative && sg(rng)) r = -r;
        return r;
    };

    ExpansionSettings hi;
    hi.precision_bits = 512;

    for (auto& f : property_pool(n, seed)) {
        ClassificationResult r;
        try {
            r = classify_curve(f);
        } catch (const Error& e) {
            for (auto* p : {&ultra, &dendro, &ram}) {
                ++p->cases;
                p->fail(show(f) + ": " + e.what());
            }
            continue;
        }

        ++ultra.cases;
        if (auto w = validate_ultrametric(r.contacts))
            ultra.fail(show(f) + ": triple " + std::to_string(w->i) + "," + std::to_string(w->j) + "," +
                       std::to_string(w->k));

        ++dendro.cases;
        std::vector<int> partner;
        for (auto& b : r.branches) partner.push_back(b.conjugate_partner);
        if (!same_contacts(diagram_contacts(r.diagram), r.contacts))
            dendro.fail(show(f) + ": diagram contacts differ");
        else if (to_text(build_diagram(diagram_contacts(r.diagram), partner)) != to_text(r.diagram))
            dendro.fail(show(f) + ": rebuilt diagram differs");

        ++ram.cases;
        int q = 0;
        for (auto& c : r.expansion.cycles) q += c.q;
        if (q != r.multiplicity || leaf_count(r.diagram.root) != r.multiplicity)
            ram.fail(show(f) + ": sum q = " + std::to_string(q) + ", m = " + std::to_string(r.multiplicity));

        ++scaling.cases;
        try {
            auto g = scale(f, small(true), small(true));
            auto rg = classify_curve(g);
            if (rg.key_real != r.key_real || rg.key_complex != r.key_complex)
                scaling.fail(show(f) + ": " + r.key_real.text + " vs " + rg.key_real.text);
        } catch (const Error& e) {
            scaling.fail(show(f) + ": " + e.what());
        }

        // shears that keep the pure y^m term, so neither side needs preparation
        ++shearing.cases;
        try {
            BivariatePoly g;
            for (int tries = 0; tries < 20; ++tries) {
                Rat l = small(true) / 4;
                g = shear(f, l);
                int m = multiplicity_at_origin(g);
                if (g.coeff(0, m) != 0 && f.coeff(0, m) != 0) break;
                g = BivariatePoly{};
            }
            if (g.is_zero()) {
                --shearing.cases;
            } else {
                auto rg = classify_curve(g, {}, ShearPolicy::Never);
                if (rg.key_real != r.key_real || rg.key_complex != r.key_complex)
                    shearing.fail(show(f) + ": " + r.key_real.text + " vs " + rg.key_real.text);
            }
        } catch (const Error& e) {
            shearing.fail(show(f) + ": " + e.what());
        }

        for (auto& b : r.branches) {
            if (!b.trunc) continue;
            ++residual.cases;
            try {
                auto v = residual_valuation(r.prepared, b);
                double t = mpq_get_d(b.trunc->get_mpq_t());
                if (!v.infinite && v.slope < t - 0.1)
                    residual.fail(show(f) + ": slope " + std::to_string(v.slope) + " < " + nps::to_string(*b.trunc));
            } catch (const Error& e) {
                residual.fail(show(f) + ": " + e.what());
            }
        }

        ++doubled.cases;
        try {
            auto r2 = classify_curve(f, hi);
            bool ok = r2.key_real == r.key_real && r2.key_complex == r.key_complex &&
                      r2.expansion.cycles.size() == r.expansion.cycles.size();
            for (auto& c : r.expansion.cycles) {
                bool hit = false;
                for (auto& d : r2.expansion.cycles) hit |= same_cycle(c, d, std::ldexp(1.0, -100));
                ok &= hit;
            }
            if (!ok) doubled.fail(show(f) + ": " + r.key_real.text + " vs " + r2.key_real.text);
        } catch (const Error& e) {
            doubled.fail(show(f) + ": " + e.what());
        }
    }
    return out;
}

PropertyResult run_oracle(int n, std::uint64_t seed) {
    PropertyResult res;
    res.name = "constructed products reproduce their branches and contacts";
    std::mt19937_64 rng(seed);
    for (int it = 0; it < n; ++it) {
        auto cycles = random_cycles(rng);
        BivariatePoly f = BivariatePoly::constant(1);
        Rat top = 0;
        for (auto& c : cycles) {
            f = f * cycle_polynomial(c);
            top = std::max(top, make_rat(c.coeffs.rbegin()->first, c.q));
        }
        ++res.cases;
        std::string tag = show(f);
        try {
            ExpansionSettings s;
            s.max_order = top + 1;
            auto e = puiseux_expand_full(f, s);
            auto br = expand_to_probranches(e.cycles, s);

            // ground truth pro-branches
            struct Truth {
                int cycle, root;
                std::vector<std::pair<Rat, Complex>> terms;
            };
            std::vector<Truth> truth;
            for (std::size_t i = 0; i < cycles.size(); ++i)
                for (int j = 0; j < cycles[i].q; ++j) {
                    Truth t{static_cast<int>(i), j, {}};
                    for (auto& [k, v] : cycles[i].coeffs)
                        t.terms.push_back({make_rat(k, cycles[i].q), Complex(v) * unit_root(static_cast<long>(j) * k, cycles[i].q)});
                    truth.push_back(t);
                }
            if (br.size() != truth.size()) {
                res.fail(tag + ": " + std::to_string(br.size()) + " pro-branches, expected " +
                         std::to_string(truth.size()));
                continue;
            }
            std::vector<int> match(br.size(), -1);
            std::vector<bool> used(truth.size(), false);
            bool ok = true;
            for (std::size_t b = 0; b < br.size() && ok; ++b) {
                auto terms = nonzero(br[b].terms);
                for (std::size_t t = 0; t < truth.size(); ++t) {
                    if (used[t] || terms.size() != truth[t].terms.size()) continue;
                    bool same = true;
                    for (std::size_t k = 0; k < terms.size() && same; ++k)
                        same = terms[k]->exp == truth[t].terms[k].first &&
                               close(terms[k]->coeff, truth[t].terms[k].second, 1e-40);
                    if (same) {
                        match[b] = static_cast<int>(t);
                        used[t] = true;
                        break;
                    }
                }
                if (match[b] < 0) ok = false;
                // the expansion must reach past the last constructed term
                if (br[b].trunc && *br[b].trunc <= top) ok = false;
            }
            if (!ok) {
                res.fail(tag + ": pro-branches differ from the construction");
                continue;
            }
            std::multiset<int> qs, eq;
            for (auto& c : cycles) qs.insert(c.q);
            for (auto& c : e.cycles) eq.insert(c.q);
            if (qs != eq) {
                res.fail(tag + ": ramifications differ");
                continue;
            }
            auto cm = contact_matrix(br, s.precision_bits);
            for (std::size_t a = 0; a < br.size() && ok; ++a)
                for (std::size_t b = a + 1; b < br.size() && ok; ++b) {
                    auto& ta = truth[match[a]];
                    auto& tb = truth[match[b]];
                    Rat want = known_contact(cycles[ta.cycle], ta.root, cycles[tb.cycle], tb.root);
                    if (*cm.at(static_cast<int>(a), static_cast<int>(b)) != want) {
                        res.fail(tag + ": contact " + nps::to_string(*cm.at(static_cast<int>(a), static_cast<int>(b))) +
                                 ", expected " + nps::to_string(want));
                        ok = false;
                    }
                }
        } catch (const Error& e) {
            res.fail(tag + ": " + e.what());
        }
    }
    return res;
}

}  // namespace npstest
