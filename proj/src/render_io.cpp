#include "nps/render_io.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include "nps/errors.hpp"

namespace nps {

using nlohmann::json;

namespace {

int category(const DiagramNode& n) {
    switch (n.kind) {
        case DiagramNode::Kind::Leaf: return 0;
        case DiagramNode::Kind::Split: return 1;
        case DiagramNode::Kind::Brace: return 2;
    }
    return 3;
}

std::string raw_text(const DiagramNode& n) {
    switch (n.kind) {
        case DiagramNode::Kind::Leaf: return "leaf";
        case DiagramNode::Kind::Brace: return "{" + raw_text(n.children[0]) + ", " + raw_text(n.children[1]) + "}";
        case DiagramNode::Kind::Split: {
            std::string s = "(" + to_string(n.split) + " \u2192 [";
            for (std::size_t i = 0; i < n.children.size(); ++i) {
                if (i) s += ", ";
                s += raw_text(n.children[i]);
            }
            return s + "])";
        }
    }
    return "";
}

int min_leaf(const DiagramNode& n) {
    auto ids = leaf_ids(n);
    return ids.empty() ? -1 : *std::min_element(ids.begin(), ids.end());
}

}  // namespace

void canonical_order(DiagramNode& n) {
    for (auto& c : n.children) canonical_order(c);
    std::vector<std::pair<std::string, DiagramNode*>> keyed;
    std::vector<DiagramNode> sorted;
    std::vector<std::size_t> idx(n.children.size());
    std::vector<std::string> text(n.children.size());
    for (std::size_t i = 0; i < n.children.size(); ++i) {
        idx[i] = i;
        text[i] = raw_text(n.children[i]);
    }
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        auto& x = n.children[a];
        auto& y = n.children[b];
        if (category(x) != category(y)) return category(x) < category(y);
        if (x.kind == DiagramNode::Kind::Split && x.split != y.split) return x.split < y.split;
        if (text[a] != text[b]) return text[a] < text[b];
        return min_leaf(x) < min_leaf(y);
    });
    for (auto i : idx) sorted.push_back(std::move(n.children[i]));
    n.children = std::move(sorted);
}

std::string to_text(const DiagramNode& n) {
    DiagramNode c = n;
    canonical_order(c);
    return raw_text(c);
}

std::string to_text(const Diagram& d) { return to_text(d.root); }

namespace {

class DiagramParser {
public:
    explicit DiagramParser(const std::string& s) : s_(s) {}

    Diagram parse() {
        skip();
        Diagram d;
        if (peek() == '{') fail("leaf or '('");
        d.root = item(false, nullptr);
        skip();
        if (i_ != s_.size()) fail("end of input");
        return d;
    }

private:
    const std::string& s_;
    std::size_t i_ = 0;
    int next_leaf_ = 0;

    // columns count code points, not bytes
    [[noreturn]] void fail(const std::string& expected) {
        std::size_t cols = 0;
        for (std::size_t k = 0; k < i_ && k < s_.size(); ++k)
            if ((static_cast<unsigned char>(s_[k]) & 0xC0) != 0x80) ++cols;
        throw SyntaxError(cols, expected);
    }

    void skip() {
        while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t' || s_[i_] == '\n' || s_[i_] == '\r')) ++i_;
    }
    char peek() const { return i_ < s_.size() ? s_[i_] : '\0'; }
    bool accept(const std::string& tok) {
        if (s_.compare(i_, tok.size(), tok) == 0) {
            i_ += tok.size();
            return true;
        }
        return false;
    }
    void expect(const std::string& tok) {
        skip();
        if (!accept(tok)) fail("'" + tok + "'");
    }

    Rat label() {
        skip();
        std::size_t start = i_;
        auto digits = [&] {
            std::size_t b = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            return i_ > b;
        };
        if (!digits()) fail("a rational label");
        if (peek() == '/') {
            ++i_;
            if (!digits()) fail("a denominator");
        }
        std::string t = s_.substr(start, i_ - start);
        Rat r;
        try {
            r = parse_rat(t);
        } catch (const Error&) {
            i_ = start;
            fail("a rational label");
        }
        if (r <= 0) {
            i_ = start;
            fail("a positive label");
        }
        return r;
    }

    DiagramNode item(bool in_brace, const Rat* parent) {
        skip();
        if (accept("leaf")) {
            DiagramNode n;
            n.branch = next_leaf_++;
            n.real = !in_brace;
            return n;
        }
        if (peek() == '{') {
            if (in_brace) fail("leaf or '(' (braces cannot be nested)");
            ++i_;
            DiagramNode b;
            b.kind = DiagramNode::Kind::Brace;
            skip();
            if (peek() == '{') fail("leaf or '('");
            b.children.push_back(item(true, parent));
            expect(",");
            skip();
            if (peek() == '{') fail("leaf or '('");
            b.children.push_back(item(true, parent));
            expect("}");
            return b;
        }
        if (peek() != '(') fail("leaf, '(' or '{'");
        ++i_;
        std::size_t at = i_;
        DiagramNode n;
        n.kind = DiagramNode::Kind::Split;
        n.split = label();
        if (parent && n.split <= *parent) {
            i_ = at;
            skip();
            fail("a label larger than " + to_string(*parent));
        }
        skip();
        if (!accept("\u2192") && !accept("->")) fail("'\u2192' or '->'");
        expect("[");
        int count = 0;
        skip();
        if (peek() == ']') fail("at least one child");
        while (true) {
            n.children.push_back(item(in_brace, &n.split));
            count += n.children.back().kind == DiagramNode::Kind::Brace ? 2 : 1;
            skip();
            if (accept(",")) continue;
            break;
        }
        std::size_t close_at = i_;
        expect("]");
        if (count < 2) {
            i_ = close_at;
            fail("at least two branches below a split");
        }
        expect(")");
        return n;
    }
};

}  // namespace

Diagram parse_diagram(const std::string& text) { return DiagramParser(text).parse(); }

json to_json(const DiagramNode& n) {
    json j;
    switch (n.kind) {
        case DiagramNode::Kind::Leaf:
            j["branch"] = n.branch;
            j["real"] = n.real;
            break;
        case DiagramNode::Kind::Brace:
        case DiagramNode::Kind::Split:
            if (n.kind == DiagramNode::Kind::Split) j["split"] = to_string(n.split);
            j["brace"] = n.kind == DiagramNode::Kind::Brace;
            j["children"] = json::array();
            for (auto& c : n.children) j["children"].push_back(to_json(c));
            break;
    }
    return j;
}

json to_json(const Diagram& d) {
    DiagramNode r = d.root;
    canonical_order(r);
    return to_json(r);
}

namespace {

DiagramNode node_from_json(const json& j, const std::string& path) {
    DiagramNode n;
    if (!j.is_object()) throw SchemaError(path, "node must be an object");
    if (j.contains("branch")) {
        if (!j["branch"].is_number_integer()) throw SchemaError(path, "branch");
        n.branch = j["branch"].get<int>();
        n.real = j.value("real", true);
        return n;
    }
    if (!j.contains("children") || !j["children"].is_array()) throw SchemaError(path, "children");
    bool brace = j.value("brace", false);
    n.kind = brace ? DiagramNode::Kind::Brace : DiagramNode::Kind::Split;
    if (!brace) {
        if (!j.contains("split") || !j["split"].is_string()) throw SchemaError(path, "split");
        try {
            n.split = parse_rat(j["split"].get<std::string>());
        } catch (const Error&) {
            throw SchemaError(path, "split");
        }
    } else if (j["children"].size() != 2) {
        throw SchemaError(path, "a brace has exactly two children");
    }
    int k = 0;
    for (auto& c : j["children"]) n.children.push_back(node_from_json(c, path + "/children/" + std::to_string(k++)));
    return n;
}

}  // namespace

Diagram diagram_from_json(const json& j) {
    Diagram d;
    d.root = node_from_json(j, "");
    return d;
}

json to_json(const NewtonPolygon& p) {
    json j;
    j["y_order"] = p.y_order;
    j["support"] = json::array();
    for (auto& s : p.support) j["support"].push_back({s.a, s.b});
    j["edges"] = json::array();
    for (auto& e : p.edges) {
        json je;
        je["from"] = {e.p1.a, e.p1.b};
        je["to"] = {e.p2.a, e.p2.b};
        je["mu"] = to_string(e.mu);
        je["height"] = e.height;
        json face = json::array();
        if (!e.face_exact.empty())
            for (auto& c : e.face_exact) face.push_back(to_string(c));
        else
            for (auto& c : e.face.coeffs) face.push_back(to_string(c, 20));
        je["face"] = face;
        j["edges"].push_back(je);
    }
    return j;
}

namespace {

json term_json(const SeriesTerm& t, int digits) {
    json j;
    j["exp"] = to_string(t.exp);
    j["re"] = t.coeff.re.str(digits);
    j["im"] = t.coeff.im.str(digits);
    if (t.exact) j["exact"] = to_string(t.exact_value);
    return j;
}

json trunc_json(const Truncation& t) { return t ? json(to_string(*t)) : json(nullptr); }

}  // namespace

json to_json(const std::vector<PuiseuxCycle>& cycles, int digits) {
    json a = json::array();
    for (auto& c : cycles) {
        json j;
        j["id"] = c.id;
        j["q"] = c.q;
        j["trunc"] = trunc_json(c.trunc);
        j["conj_class"] = c.conj_class;
        j["unseparated"] = c.unseparated;
        j["terms"] = json::array();
        for (auto& t : c.terms) j["terms"].push_back(term_json(t, digits));
        a.push_back(j);
    }
    return a;
}

json to_json(const ClassificationResult& r) {
    json j;
    j["multiplicity"] = r.multiplicity;
    j["tangent_cone"] = r.tangent_cone_summary;
    j["shear"] = r.shear ? json(to_string(*r.shear)) : json(nullptr);
    j["prepared"] = to_string(r.prepared);
    j["polygon"] = to_json(r.polygon);
    j["cycles"] = to_json(r.expansion.cycles);
    j["diagram"] = to_json(r.diagram);
    j["key_real"] = r.key_real.text;
    j["key_complex"] = r.key_complex.text;
    j["flags"] = json::array();
    for (auto f : r.flags) j["flags"].push_back(flag_name(f));
    j["provisional"] = r.provisional();
    j["notes"] = r.notes;
    return j;
}

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    std::string s = buf;
    if (s == "-0.00") s = "0.00";
    return s;
}

std::string pt(double x, double y) { return "(" + num(x) + "," + num(y) + ")"; }

std::string tex_rat(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return "\\frac{" + r.get_num().get_str() + "}{" + r.get_den().get_str() + "}";
}

struct TikzLayout {
    std::ostringstream out;
    int next_row = 0;
    const double dx = 1.5, dy = 0.6;

    void arc(double x, int first, int last) {
        double ytop = -dy * first + 0.15, ybot = -dy * last - 0.15;
        out << "  \\draw[rounded corners=3pt] " << pt(x + 0.25, ytop) << " -- " << pt(x + 0.45, ytop) << " -- "
            << pt(x + 0.45, ybot) << " -- " << pt(x + 0.25, ybot) << ";\n";
    }

    // returns the position of the drawn node
    std::pair<double, double> draw(const DiagramNode& n, int depth) {
        if (n.kind == DiagramNode::Kind::Leaf) {
            double y = -dy * next_row++;
            double x = dx * depth;
            out << "  \\fill " << pt(x, y) << " circle (1.2pt);\n";
            return {x, y};
        }
        std::vector<std::pair<double, double>> kids;
        for (auto& c : n.children) {
            if (c.kind != DiagramNode::Kind::Brace) {
                kids.push_back(draw(c, depth + 1));
                continue;
            }
            // brace members hang from this node; the arc spans their leaves
            int first = next_row;
            double xmax = 0;
            for (auto& m : c.children) {
                kids.push_back(draw(m, depth + 1));
                xmax = std::max(xmax, max_x(m, depth + 1));
            }
            arc(xmax, first, next_row - 1);
        }
        double x = dx * depth;
        double y = 0;
        for (auto& k : kids) y += k.second;
        y /= static_cast<double>(kids.size());
        for (auto& k : kids) out << "  \\draw " << pt(x, y) << " -- " << pt(k.first, k.second) << ";\n";
        out << "  \\fill " << pt(x, y) << " circle (1.5pt);\n";
        out << "  \\node[above left] at " << pt(x, y) << " {$" << tex_rat(n.split) << "$};\n";
        return {x, y};
    }

    double max_x(const DiagramNode& n, int depth) {
        double m = dx * depth;
        for (auto& c : n.children) m = std::max(m, max_x(c, c.kind == DiagramNode::Kind::Brace ? depth : depth + 1));
        return m;
    }
};

}  // namespace

std::string to_tikz(const Diagram& d) {
    DiagramNode r = d.root;
    canonical_order(r);
    TikzLayout lay;
    lay.out << "\\begin{tikzpicture}\n";
    auto root = lay.draw(r, 1);
    // stem into the root
    lay.out << "  \\draw " << pt(0, root.second) << " -- " << pt(root.first, root.second) << ";\n";
    lay.out << "\\end{tikzpicture}\n";
    return lay.out.str();
}

std::string to_tikz(const NewtonPolygon& p) {
    int ma = 0, mb = 0;
    for (auto& s : p.support) {
        ma = std::max(ma, s.a);
        mb = std::max(mb, s.b);
    }
    std::ostringstream out;
    out << "\\begin{tikzpicture}[scale=0.5]\n";
    out << "  \\draw[help lines] (0,0) grid (" << ma + 1 << "," << mb + 1 << ");\n";
    out << "  \\draw[->] (0,0) -- (" << ma + 1 << ",0) node[right] {$x$};\n";
    out << "  \\draw[->] (0,0) -- (0," << mb + 1 << ") node[above] {$y$};\n";
    auto sup = p.support;
    std::sort(sup.begin(), sup.end(), [](auto& l, auto& r) { return l.a != r.a ? l.a < r.a : l.b < r.b; });
    for (auto& s : sup) out << "  \\fill (" << s.a << "," << s.b << ") circle (4pt);\n";
    for (auto& e : p.edges)
        out << "  \\draw[thick] (" << e.p1.a << "," << e.p1.b << ") -- (" << e.p2.a << "," << e.p2.b << ");\n";
    out << "\\end{tikzpicture}\n";
    return out.str();
}

}  // namespace nps
