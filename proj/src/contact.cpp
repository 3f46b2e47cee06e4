#include "nps/contact.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "nps/errors.hpp"

namespace nps {

ContactMatrix ContactMatrix::make(int n) {
    ContactMatrix cm;
    cm.n = n;
    cm.entries.assign(n, std::vector<ContactValue>(n));
    return cm;
}

void ContactMatrix::set(int i, int j, const Rat& v) {
    entries[i][j] = v;
    entries[j][i] = v;
}

Rat contact_exponent(const ProBranch& b1, const ProBranch& b2, int precision_bits) {
    PrecisionGuard guard(precision_bits);
    bool inf = !b1.trunc && !b2.trunc;
    Rat lim;
    if (!inf) lim = !b1.trunc ? *b2.trunc : !b2.trunc ? *b1.trunc : std::min(*b1.trunc, *b2.trunc);
    std::map<Rat, std::pair<Complex, Complex>> m;
    for (auto& t : b1.terms) m[t.exp].first = t.coeff;
    for (auto& t : b2.terms) m[t.exp].second = t.coeff;
    Real digits(-0.15 * precision_bits * std::log(10.0));
    Real rel = exp(digits);
    for (auto& [e, v] : m) {
        if (!inf && e >= lim) break;
        Real scale = max(Real(1L), max(abs(v.first), abs(v.second)));
        if (abs(v.first - v.second) > rel * scale) return e;
    }
    if (inf) throw Error(ErrorCode::NonReduced, "two pro-branches coincide exactly");
    throw Error(ErrorCode::InsufficientTruncation,
                "branches agree up to order " + lim.get_str() + "; expand further");
}

ContactMatrix contact_matrix(const std::vector<ProBranch>& branches, int precision_bits) {
    int n = static_cast<int>(branches.size());
    ContactMatrix cm = ContactMatrix::make(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) cm.set(i, j, contact_exponent(branches[i], branches[j], precision_bits));
    return cm;
}

namespace {

// infinity compares above everything
bool less(const ContactValue& a, const ContactValue& b) {
    if (!a) return false;
    if (!b) return true;
    return *a < *b;
}

const ContactValue& vmin(const ContactValue& a, const ContactValue& b) { return less(a, b) ? a : b; }

}  // namespace

std::optional<Witness> validate_ultrametric(const ContactMatrix& cm) {
    for (int i = 0; i < cm.n; ++i)
        for (int j = 0; j < cm.n; ++j)
            for (int k = 0; k < cm.n; ++k) {
                if (i == j || j == k || i == k) continue;
                if (less(cm.at(i, k), vmin(cm.at(i, j), cm.at(j, k)))) return Witness{i, j, k};
            }
    return std::nullopt;
}

int leaf_count(const DiagramNode& n) {
    if (n.is_leaf()) return 1;
    int c = 0;
    for (auto& ch : n.children) c += leaf_count(ch);
    return c;
}

std::vector<int> leaf_ids(const DiagramNode& n) {
    if (n.is_leaf()) return {n.branch};
    std::vector<int> out;
    for (auto& ch : n.children) {
        auto sub = leaf_ids(ch);
        out.insert(out.end(), sub.begin(), sub.end());
    }
    return out;
}

namespace {

DiagramNode cluster(const ContactMatrix& cm, std::vector<int> set) {
    DiagramNode node;
    if (set.size() == 1) {
        node.branch = set[0];
        return node;
    }
    Rat v = *cm.at(set[0], set[1]);
    for (std::size_t a = 0; a < set.size(); ++a)
        for (std::size_t b = a + 1; b < set.size(); ++b) v = std::min(v, *cm.at(set[a], set[b]));
    node.kind = DiagramNode::Kind::Split;
    node.split = v;
    std::vector<bool> used(set.size(), false);
    for (std::size_t a = 0; a < set.size(); ++a) {
        if (used[a]) continue;
        std::vector<int> cls{set[a]};
        used[a] = true;
        for (std::size_t b = a + 1; b < set.size(); ++b)
            if (!used[b] && *cm.at(set[a], set[b]) > v) {
                cls.push_back(set[b]);
                used[b] = true;
            }
        node.children.push_back(cluster(cm, cls));
    }
    return node;
}

std::vector<int> sorted_leaves(const DiagramNode& n) {
    auto v = leaf_ids(n);
    std::sort(v.begin(), v.end());
    return v;
}

std::vector<int> image(const std::vector<int>& s, const std::vector<int>& partner) {
    std::vector<int> r;
    for (int i : s) r.push_back(partner[i]);
    std::sort(r.begin(), r.end());
    return r;
}

void mark(DiagramNode& node, const std::vector<int>& partner) {
    if (node.is_leaf()) {
        node.real = partner[node.branch] == node.branch;
        return;
    }
    std::vector<std::vector<int>> sets;
    for (auto& c : node.children) sets.push_back(sorted_leaves(c));
    std::vector<DiagramNode> kept;
    std::vector<bool> done(node.children.size(), false);
    for (std::size_t a = 0; a < node.children.size(); ++a) {
        if (done[a]) continue;
        auto img = image(sets[a], partner);
        if (img == sets[a]) {
            mark(node.children[a], partner);
            kept.push_back(std::move(node.children[a]));
            done[a] = true;
            continue;
        }
        std::size_t b = a + 1;
        while (b < node.children.size() && (done[b] || sets[b] != img)) ++b;
        if (b == node.children.size()) throw Error(ErrorCode::Internal, "conjugation is not a diagram automorphism");
        DiagramNode brace;
        brace.kind = DiagramNode::Kind::Brace;
        // leaves inside a swapped subtree are not real
        brace.children.push_back(std::move(node.children[a]));
        brace.children.push_back(std::move(node.children[b]));
        done[a] = done[b] = true;
        kept.push_back(std::move(brace));
    }
    node.children = std::move(kept);
}

void collect(const DiagramNode& n, std::vector<std::pair<int, const DiagramNode*>>& path,
             std::map<int, std::vector<const DiagramNode*>>& anc) {
    if (n.is_leaf()) {
        std::vector<const DiagramNode*> a;
        for (auto& p : path) a.push_back(p.second);
        anc[n.branch] = a;
        return;
    }
    if (n.kind == DiagramNode::Kind::Split) path.push_back({0, &n});
    for (auto& c : n.children) collect(c, path, anc);
    if (n.kind == DiagramNode::Kind::Split) path.pop_back();
}

}  // namespace

bool is_contact_automorphism(const ContactMatrix& cm, const std::vector<int>& partner) {
    for (int i = 0; i < cm.n; ++i)
        for (int j = i + 1; j < cm.n; ++j) {
            auto& a = cm.at(i, j);
            auto& b = cm.at(partner[i], partner[j]);
            if (a.has_value() != b.has_value() || (a && *a != *b)) return false;
        }
    return true;
}

Diagram build_diagram(const ContactMatrix& cm, const std::vector<int>& partner) {
    if (auto w = validate_ultrametric(cm))
        throw Error(ErrorCode::UltrametricViolation, "contact matrix is not ultrametric at (" +
                                                         std::to_string(w->i) + "," + std::to_string(w->j) + "," +
                                                         std::to_string(w->k) + ")");
    if (cm.n == 0) throw Error(ErrorCode::InvalidArgument, "no branches");
    std::vector<int> all(cm.n);
    for (int i = 0; i < cm.n; ++i) all[i] = i;
    Diagram d;
    d.root = cluster(cm, all);
    if (!partner.empty()) {
        if (!is_contact_automorphism(cm, partner))
            throw Error(ErrorCode::Internal, "conjugation is not a contact automorphism");
        mark(d.root, partner);
    }
    return d;
}

Diagram build_diagram(const ContactMatrix& cm, const std::vector<ProBranch>& branches) {
    std::vector<int> partner;
    for (auto& b : branches) partner.push_back(b.conjugate_partner < 0 ? b.id : b.conjugate_partner);
    return build_diagram(cm, partner);
}

ContactMatrix diagram_contacts(const Diagram& d) {
    std::vector<std::pair<int, const DiagramNode*>> path;
    std::map<int, std::vector<const DiagramNode*>> anc;
    collect(d.root, path, anc);
    int n = static_cast<int>(anc.size());
    ContactMatrix cm = ContactMatrix::make(n);
    for (auto& [i, ai] : anc)
        for (auto& [j, aj] : anc) {
            if (i >= j) continue;
            std::size_t k = 0;
            while (k < ai.size() && k < aj.size() && ai[k] == aj[k]) ++k;
            if (k == 0) throw Error(ErrorCode::Internal, "leaves without a common split");
            cm.set(i, j, ai[k - 1]->split);
        }
    return cm;
}

}  // namespace nps
