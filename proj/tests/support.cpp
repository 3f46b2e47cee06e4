#include "support.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <regex>
#include <sstream>

#include "nps/errors.hpp"

namespace npstest {

using nps::Diagram;
using nps::DiagramNode;

BivariatePoly cycle_polynomial(const KnownCycle& c) {
    const int q = c.q;
    // m[r][i]: coefficient of t^r in P(t) * t^i, reduced with t^q = x
    std::vector<std::vector<BivariatePoly>> m(q, std::vector<BivariatePoly>(q));
    for (int i = 0; i < q; ++i)
        for (auto& [k, v] : c.coeffs) {
            int e = k + i;
            m[e % q][i] += BivariatePoly::monomial(e / q, 0, v);
        }
    std::vector<int> perm(q);
    std::iota(perm.begin(), perm.end(), 0);
    BivariatePoly det;
    do {
        int inv = 0;
        for (int a = 0; a < q; ++a)
            for (int b = a + 1; b < q; ++b)
                if (perm[a] > perm[b]) ++inv;
        BivariatePoly term = BivariatePoly::constant(inv % 2 ? Rat(-1) : Rat(1));
        for (int r = 0; r < q; ++r) {
            BivariatePoly entry = -m[r][perm[r]];
            if (perm[r] == r) entry += BivariatePoly::y();
            term = term * entry;
        }
        det += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

namespace {

// c * e^(2 pi i theta), normalized to c > 0 and theta in [0, 1)
struct Polar {
    Rat c, theta;
};

Polar polar(const Rat& c, const Rat& theta) {
    Polar p{c, theta};
    if (p.c < 0) {
        p.c = -p.c;
        p.theta += Rat(1, 2);
    }
    p.theta -= Rat(nps::rat_floor(p.theta));
    p.theta.canonicalize();
    return p;
}

}  // namespace

Rat known_contact(const KnownCycle& a, int ja, const KnownCycle& b, int jb) {
    std::map<Rat, std::pair<std::optional<Polar>, std::optional<Polar>>> series;
    for (auto& [k, v] : a.coeffs) series[nps::make_rat(k, a.q)].first = polar(v, nps::make_rat(ja * k, a.q));
    for (auto& [k, v] : b.coeffs) series[nps::make_rat(k, b.q)].second = polar(v, nps::make_rat(jb * k, b.q));
    for (auto& [e, pr] : series) {
        auto& [x, y] = pr;
        if (x.has_value() != y.has_value()) return e;
        if (x->c != y->c || x->theta != y->theta) return e;
    }
    throw std::logic_error("identical branches");
}

std::vector<KnownCycle> random_cycles(std::mt19937_64& rng) {
    auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    while (true) {
        int n = uni(1, 3);
        int budget = 7;
        std::vector<KnownCycle> cs;
        for (int i = 0; i < n && budget > 0; ++i) {
            KnownCycle c;
            c.q = std::min(uni(1, 4), budget);
            budget -= c.q;
            int k = uni(c.q, 2 * c.q + 1);
            int terms = uni(1, 3);
            for (int t = 0; t < terms; ++t) {
                int p = uni(1, 3) * (uni(0, 1) ? 1 : -1);
                c.coeffs[k] = Rat(p, uni(1, 2));
                c.coeffs[k].canonicalize();
                k += uni(1, c.q + 1);
            }
            int g = c.q;
            for (auto& kv : c.coeffs) g = std::gcd(g, kv.first);
            if (g != 1) {
                // force ramification q with one more term
                int e = k;
                while (std::gcd(e, c.q) != 1) ++e;
                c.coeffs[e] = Rat(1);
            }
            cs.push_back(c);
        }
        bool distinct = true;
        for (std::size_t i = 0; i < cs.size() && distinct; ++i)
            for (std::size_t j = 0; j < cs.size() && distinct; ++j)
                for (int a = 0; a < cs[i].q && distinct; ++a)
                    for (int b = 0; b < cs[j].q && distinct; ++b) {
                        if (i == j && a == b) continue;
                        try {
                            known_contact(cs[i], a, cs[j], b);
                        } catch (const std::logic_error&) {
                            distinct = false;
                        }
                    }
        if (distinct) return cs;
    }
}

std::vector<BivariatePoly> property_pool(int n, std::uint64_t seed) {
    std::vector<BivariatePoly> pool;
    for (const char* f : {"septic_mult6.manifest.json", "septic_mult5.manifest.json", "septic_mult4.manifest.json"}) {
        auto m = nps::load_manifest(data_path(f));
        for (auto& fam : m.families)
            for (auto& p : nps::sample_instances(fam, 2, seed)) pool.push_back(p);
    }
    std::mt19937_64 rng(seed);
    while (static_cast<int>(pool.size()) < n) {
        BivariatePoly f = BivariatePoly::constant(1);
        for (auto& c : random_cycles(rng)) f = f * cycle_polynomial(c);
        pool.push_back(f);
    }
    std::shuffle(pool.begin(), pool.end(), rng);
    if (static_cast<int>(pool.size()) > n) pool.resize(n);
    return pool;
}

namespace {

DiagramNode random_node(std::mt19937_64& rng, int leaves, const Rat& floor, bool braces = true) {
    auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    DiagramNode n;
    if (leaves == 1) return n;
    n.kind = DiagramNode::Kind::Split;
    n.split = floor + Rat(uni(1, 6), uni(1, 4));
    n.split.canonicalize();
    while (leaves > 0) {
        int take = leaves == 2 && n.children.empty() ? 1 : uni(1, leaves);
        if (take == leaves && n.children.empty()) take = leaves - 1;
        if (braces && take >= 2 && take % 2 == 0 && uni(0, 2) == 0) {
            DiagramNode b;
            b.kind = DiagramNode::Kind::Brace;
            DiagramNode half = random_node(rng, take / 2, n.split, false);
            b.children = {half, half};
            n.children.push_back(b);
        } else if (braces && take == 2 && uni(0, 1) == 0) {
            DiagramNode b;
            b.kind = DiagramNode::Kind::Brace;
            b.children = {DiagramNode{}, DiagramNode{}};
            n.children.push_back(b);
        } else {
            n.children.push_back(random_node(rng, take, n.split, braces));
        }
        leaves -= take;
    }
    return n;
}

}  // namespace

Diagram random_diagram(std::mt19937_64& rng, int max_leaves) {
    int leaves = std::uniform_int_distribution<int>(2, max_leaves)(rng);
    Diagram d;
    d.root = random_node(rng, leaves, Rat(0));
    return d;
}

bool same_tree(const DiagramNode& a, const DiagramNode& b) {
    if (a.kind != b.kind || a.children.size() != b.children.size()) return false;
    if (a.kind == DiagramNode::Kind::Split && a.split != b.split) return false;
    for (std::size_t i = 0; i < a.children.size(); ++i)
        if (!same_tree(a.children[i], b.children[i])) return false;
    return true;
}

std::string lint_tikz(const std::string& tex) {
    int depth = 0, curly = 0, paren = 0;
    for (char ch : tex) {
        curly += ch == '{' ? 1 : ch == '}' ? -1 : 0;
        paren += ch == '(' ? 1 : ch == ')' ? -1 : 0;
        if (curly < 0 || paren < 0) return "unbalanced bracket";
    }
    if (curly || paren) return "unbalanced bracket";
    std::regex env(R"(\\(begin|end)\{([a-z]+)\})");
    std::vector<std::string> stack;
    for (auto it = std::sregex_iterator(tex.begin(), tex.end(), env); it != std::sregex_iterator(); ++it) {
        if ((*it)[1] == "begin") {
            stack.push_back((*it)[2]);
            ++depth;
        } else {
            if (stack.empty() || stack.back() != (*it)[2]) return "mismatched \\end{" + (*it)[2].str() + "}";
            stack.pop_back();
        }
    }
    if (!stack.empty() || depth == 0) return "unclosed environment";
    // every drawing command is a statement ending in ';' and every coordinate is numeric
    std::regex coord(R"(\(([^()]*)\))");
    std::regex number(R"(\s*-?\d+(\.\d+)?\s*)");
    std::istringstream in(tex);
    std::string line;
    while (std::getline(in, line)) {
        auto a = line.find_first_not_of(' ');
        if (a == std::string::npos || line.compare(a, 6, "\\begin") == 0 || line.compare(a, 4, "\\end") == 0)
            continue;
        if (line[a] != '\\') return "stray text: " + line;
        if (line.back() != ';') return "statement without ';': " + line;
        for (auto it = std::sregex_iterator(line.begin(), line.end(), coord); it != std::sregex_iterator(); ++it) {
            std::string inner = (*it)[1];
            if (inner.find(',') == std::string::npos) {
                // circle radius such as (1.2pt)
                if (!std::regex_match(inner, std::regex(R"(\d+(\.\d+)?pt)"))) return "bad radius: " + inner;
                continue;
            }
            auto comma = inner.find(',');
            if (!std::regex_match(inner.substr(0, comma), number) || !std::regex_match(inner.substr(comma + 1), number))
                return "bad coordinate: " + inner;
        }
    }
    return "";
}

}  // namespace npstest
