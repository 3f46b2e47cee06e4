#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nps/puiseux.hpp"

namespace nps {

// off-diagonal entries are exact rationals; the diagonal is "infinite"
using ContactValue = std::optional<Rat>;

struct ContactMatrix {
    int n = 0;
    std::vector<std::vector<ContactValue>> entries;

    static ContactMatrix make(int n);
    const ContactValue& at(int i, int j) const { return entries[i][j]; }
    void set(int i, int j, const Rat& v);
};

// smallest exponent where the two series differ (absent terms are zero);
// throws InsufficientTruncation when they agree up to the shorter truncation
Rat contact_exponent(const ProBranch& b1, const ProBranch& b2, int precision_bits = 256);

ContactMatrix contact_matrix(const std::vector<ProBranch>& branches, int precision_bits = 256);

struct Witness {
    int i = -1, j = -1, k = -1;  // entries[i][k] < min(entries[i][j], entries[j][k])
};
std::optional<Witness> validate_ultrametric(const ContactMatrix& cm);

struct DiagramNode {
    enum class Kind { Leaf, Split, Brace };
    Kind kind = Kind::Leaf;
    Rat split;                          // Split only
    std::vector<DiagramNode> children;  // Split: >= 2, Brace: exactly 2
    int branch = -1;                    // Leaf only
    bool real = false;                  // Leaf only

    bool is_leaf() const { return kind == Kind::Leaf; }
};

struct Diagram {
    DiagramNode root;
};

int leaf_count(const DiagramNode& n);
std::vector<int> leaf_ids(const DiagramNode& n);

// single-linkage dendrogram; conjugate-swapped sibling subtrees under a
// conjugation-invariant node are grouped into Brace nodes. partner[i] is
// the conjugate of branch i (i itself for real branches); empty = no braces
Diagram build_diagram(const ContactMatrix& cm, const std::vector<int>& partner);
Diagram build_diagram(const ContactMatrix& cm, const std::vector<ProBranch>& branches);

// contact of two leaves = split label of their lowest common ancestor
ContactMatrix diagram_contacts(const Diagram& d);

// whether the involution preserves every contact
bool is_contact_automorphism(const ContactMatrix& cm, const std::vector<int>& partner);

}  // namespace nps
