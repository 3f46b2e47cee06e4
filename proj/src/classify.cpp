#include "nps/classify.hpp"

#include "nps/errors.hpp"
#include "nps/render_io.hpp"

namespace nps {

const char* flag_name(Flag f) {
    switch (f) {
        case Flag::Unseparated: return "Unseparated";
        case Flag::NumericLowConfidence: return "NumericLowConfidence";
    }
    return "Unknown";
}

namespace {

void erase_braces(DiagramNode& n) {
    std::vector<DiagramNode> kids;
    for (auto& c : n.children) {
        if (c.kind == DiagramNode::Kind::Brace) {
            for (auto& m : c.children) kids.push_back(std::move(m));
        } else {
            kids.push_back(std::move(c));
        }
    }
    n.children = std::move(kids);
    for (auto& c : n.children) erase_braces(c);
}

}  // namespace

Diagram canonical_diagram(const Diagram& d, Mode mode) {
    Diagram c = d;
    if (mode == Mode::Complex) erase_braces(c.root);
    canonical_order(c.root);
    return c;
}

CanonicalKey canonical_form(const Diagram& d, Mode mode) {
    return CanonicalKey{mode, to_text(canonical_diagram(d, mode))};
}

bool equivalent(const Diagram& a, const Diagram& b, Mode mode) {
    return canonical_form(a, mode) == canonical_form(b, mode);
}

namespace {

// lambda sequence 1, -1, 2, -2, ...
Rat shear_candidate(int k) { return make_rat(k % 2 == 0 ? k / 2 + 1 : -(k / 2 + 1)); }

ContactMatrix contacts_of(const std::vector<ProBranch>& br, const Expansion& e, int bits, bool& unsep) {
    int n = static_cast<int>(br.size());
    ContactMatrix cm = ContactMatrix::make(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            try {
                cm.set(i, j, contact_exponent(br[i], br[j], bits));
            } catch (const Error& err) {
                bool u = e.cycles[br[i].cycle_id].unseparated || e.cycles[br[j].cycle_id].unseparated;
                if (err.code() != ErrorCode::InsufficientTruncation || !u) throw;
                // only a lower bound is known
                Rat t = br[i].trunc && br[j].trunc ? std::min(*br[i].trunc, *br[j].trunc)
                                                   : br[i].trunc ? *br[i].trunc : *br[j].trunc;
                cm.set(i, j, t);
                unsep = true;
            }
        }
    return cm;
}

std::vector<int> partners(const std::vector<ProBranch>& br) {
    std::vector<int> p;
    for (auto& b : br) p.push_back(b.conjugate_partner < 0 ? b.id : b.conjugate_partner);
    return p;
}

bool involution(const std::vector<int>& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] < 0 || p[i] >= static_cast<int>(p.size()) || p[p[i]] != static_cast<int>(i)) return false;
    return true;
}

}  // namespace

ClassificationResult classify_curve(const BivariatePoly& f, const ExpansionSettings& s, ShearPolicy policy) {
    if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "zero polynomial");
    if (f.coeff(0, 0) != 0) throw Error(ErrorCode::InvalidArgument, "the curve does not pass through the origin");
    PrecisionGuard guard(s.precision_bits);
    ClassificationResult r;
    r.multiplicity = multiplicity_at_origin(f);
    int m = r.multiplicity;
    RootOptions ro;
    ro.tol = s.tol;
    r.tangent_cone = tangent_cone(f, ro);
    for (auto& t : r.tangent_cone) r.tangent_cone_summary += describe(t);

    r.prepared = f;
    if (f.coeff(0, m) == 0) {
        if (policy == ShearPolicy::Never)
            throw Error(ErrorCode::NeedsPreparation, "x divides the tangent cone; shear first");
        for (int k = 0;; ++k) {
            if (k > 4 * m + 8) throw Error(ErrorCode::Internal, "no shear makes y^m appear");
            Rat lam = shear_candidate(k);
            BivariatePoly g = shear(f, lam);
            if (g.coeff(0, m) != 0) {
                r.shear = lam;
                r.prepared = g;
                r.notes.push_back("sheared with x -> x + (" + to_string(lam) + ")*y");
                break;
            }
        }
    }

    r.polygon = newton_polygon(r.prepared);
    r.expansion = puiseux_expand_full(r.prepared, s);
    bool unsep = r.expansion.unseparated;
    bool low = r.expansion.low_confidence;
    for (auto& n : r.expansion.notes) r.notes.push_back(n);

    r.branches = expand_to_probranches(r.expansion.cycles, s);
    if (static_cast<int>(r.branches.size()) != m)
        throw Error(ErrorCode::Internal, "pro-branch count " + std::to_string(r.branches.size()) +
                                             " differs from multiplicity " + std::to_string(m));
    r.contacts = contacts_of(r.branches, r.expansion, s.precision_bits, unsep);

    std::vector<int> p = partners(r.branches);
    if (!involution(p) || !is_contact_automorphism(r.contacts, p)) {
        r.branches = expand_to_probranches(r.expansion.cycles, s, 1);
        p = partners(r.branches);
        r.notes.push_back("per-cycle half-line choice broke contact symmetry; read every cycle on x > 0");
        low = true;
        if (!involution(p) || !is_contact_automorphism(r.contacts, p)) {
            p.clear();
            r.notes.push_back("conjugation is not a contact automorphism; braces dropped");
        }
    }
    r.diagram = build_diagram(r.contacts, p);
    r.key_real = canonical_form(r.diagram, Mode::Real);
    r.key_complex = canonical_form(r.diagram, Mode::Complex);
    if (unsep) r.flags.push_back(Flag::Unseparated);
    if (low) r.flags.push_back(Flag::NumericLowConfidence);
    return r;
}

}  // namespace nps
