#include "nps/catalogue.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <thread>

#include "nps/errors.hpp"
#include "nps/render_io.hpp"

namespace nps {

using nlohmann::json;

std::vector<Rat> ParamRange::values() const {
    std::vector<Rat> v;
    for (long n = lo; n <= hi; ++n) v.push_back(make_rat(n, q));
    return v;
}

std::vector<std::string> DiagramTemplate::letters() const {
    std::set<std::string> s;
    static const std::regex re(R"(\(\s*([a-z])\s)");
    for (std::sregex_iterator it(text.begin(), text.end(), re), end; it != end; ++it) s.insert((*it)[1]);
    return {s.begin(), s.end()};
}

bool Constraint::holds(const std::map<std::string, Rat>& v) const {
    auto it = v.find(lhs);
    if (it == v.end()) return true;
    Rat r = rhs_value;
    if (!rhs_var.empty()) {
        auto jt = v.find(rhs_var);
        if (jt == v.end()) return true;
        r = jt->second;
    }
    return op == Op::Ne ? it->second != r : it->second > r;
}

std::string Constraint::str() const {
    return lhs + (op == Op::Ne ? "!=" : ">") + (rhs_var.empty() ? to_string(rhs_value) : rhs_var);
}

Constraint parse_constraint(const std::string& s) {
    static const std::regex re(R"(\s*([A-Za-z_][A-Za-z_0-9]*)\s*(!=|>)\s*(-?[0-9]+(?:/[0-9]+)?|[A-Za-z_][A-Za-z_0-9]*)\s*)");
    std::smatch m;
    if (!std::regex_match(s, m, re)) throw Error(ErrorCode::Schema, "bad constraint '" + s + "'");
    Constraint c;
    c.lhs = m[1];
    c.op = m[2] == "!=" ? Constraint::Op::Ne : Constraint::Op::Gt;
    std::string r = m[3];
    if (std::isalpha(static_cast<unsigned char>(r[0])) || r[0] == '_')
        c.rhs_var = r;
    else
        c.rhs_value = parse_rat(r);
    return c;
}

BivariatePoly FamilySpec::instantiate(const std::map<std::string, Rat>& values) const {
    std::string tc = tangent_cone;
    for (auto& p : parameters) {
        auto it = values.find(p);
        if (it == values.end()) throw Error(ErrorCode::InvalidArgument, "no value for parameter " + p);
        tc = std::regex_replace(tc, std::regex("\\b" + p + "\\b"), "(" + to_string(it->second) + ")");
    }
    BivariatePoly f = parse_poly(tc);
    for (auto& t : perturbation) {
        auto it = values.find(t.coeff);
        if (it == values.end()) continue;
        f.add_term(t.a, t.b, it->second);
    }
    return f;
}

namespace {

const json& field(const json& j, const std::string& key, const std::string& path, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) throw SchemaError(path, where + key);
    return j.at(key);
}

std::string str_field(const json& j, const std::string& key, const std::string& path, const std::string& where) {
    auto& v = field(j, key, path, where);
    if (!v.is_string()) throw SchemaError(path, where + key);
    return v.get<std::string>();
}

Rat rat_field(const json& v, const std::string& path, const std::string& where) {
    try {
        if (v.is_number_integer()) return Rat(v.get<long>());
        if (v.is_string()) return parse_rat(v.get<std::string>());
    } catch (const Error&) {
    }
    throw SchemaError(path, where);
}

std::pair<int, int> monomial_exponents(const std::string& mono, const std::string& path, const std::string& where) {
    BivariatePoly p;
    try {
        p = parse_poly(mono);
    } catch (const Error&) {
        throw SchemaError(path, where);
    }
    if (p.size() != 1 || p.terms().begin()->second != 1) throw SchemaError(path, where);
    return p.terms().begin()->first;
}

DiagramTemplate template_from_json(const json& j, int idx, const std::string& path) {
    std::string w = "diagrams/" + std::to_string(idx) + "/";
    DiagramTemplate t;
    t.index = idx;
    t.block = str_field(j, "block", path, w);
    t.text = str_field(j, "template", path, w);
    if (j.contains("params")) {
        if (!j["params"].is_object()) throw SchemaError(path, w + "params");
        for (auto& [k, v] : j["params"].items()) {
            std::string pw = w + "params/" + k + "/";
            ParamRange r;
            auto& q = field(v, "q", path, pw);
            auto& lo = field(v, "lo", path, pw);
            auto& hi = field(v, "hi", path, pw);
            if (!q.is_number_integer() || q.get<int>() < 1) throw SchemaError(path, pw + "q");
            if (!lo.is_number_integer()) throw SchemaError(path, pw + "lo");
            if (!hi.is_number_integer() || hi.get<long>() < lo.get<long>()) throw SchemaError(path, pw + "hi");
            r.q = q.get<int>();
            r.lo = lo.get<long>();
            r.hi = hi.get<long>();
            r.uncertain = v.value("uncertain", false);
            t.params[k] = r;
        }
    }
    if (j.contains("pairs")) {
        auto& p = j["pairs"];
        std::string pw = w + "pairs/";
        PairSet ps;
        auto& letters = field(p, "letters", path, pw);
        if (!letters.is_array() || letters.size() != 2) throw SchemaError(path, pw + "letters");
        for (auto& l : letters) ps.letters.push_back(l.get<std::string>());
        ps.verbatim = p.value("verbatim", "");
        auto& vals = field(p, "values", path, pw);
        if (!vals.is_array()) throw SchemaError(path, pw + "values");
        int k = 0;
        for (auto& v : vals) {
            std::string vw = pw + "values/" + std::to_string(k++) + "/";
            PairValue pv;
            pv.a = rat_field(field(v, ps.letters[0], path, vw), path, vw + ps.letters[0]);
            pv.b = rat_field(field(v, ps.letters[1], path, vw), path, vw + ps.letters[1]);
            pv.uncertain = v.value("uncertain", false);
            ps.values.push_back(pv);
        }
        t.pairs = ps;
    }
    t.drawn = j.value("drawn", "");
    t.note = j.value("note", "");
    for (auto& l : t.letters()) {
        bool known = t.params.count(l) || (t.pairs && (t.pairs->letters[0] == l || t.pairs->letters[1] == l));
        if (!known) throw SchemaError(path, w + "params/" + l);
    }
    return t;
}

FamilySpec family_from_json(const json& j, int idx, const std::string& path) {
    std::string w = "families/" + std::to_string(idx) + "/";
    FamilySpec f;
    f.id = str_field(j, "id", path, w);
    f.block = j.value("block", f.id);
    f.tangent_cone = str_field(j, "tangent_cone", path, w);
    if (j.contains("parameters")) {
        for (auto& p : j["parameters"]) {
            if (!p.is_string()) throw SchemaError(path, w + "parameters");
            f.parameters.push_back(p.get<std::string>());
        }
    }
    auto& pert = field(j, "perturbation", path, w);
    if (!pert.is_array()) throw SchemaError(path, w + "perturbation");
    int k = 0;
    for (auto& t : pert) {
        std::string tw = w + "perturbation/" + std::to_string(k++) + "/";
        PerturbationTerm pt;
        pt.monomial = str_field(t, "monomial", path, tw);
        pt.coeff = str_field(t, "coeff", path, tw);
        pt.printed = t.value("printed", "");
        std::tie(pt.a, pt.b) = monomial_exponents(pt.monomial, path, tw + "monomial");
        f.perturbation.push_back(pt);
    }
    if (j.contains("constraints")) {
        k = 0;
        for (auto& c : j["constraints"]) {
            std::string cw = w + "constraints/" + std::to_string(k++);
            if (!c.is_string()) throw SchemaError(path, cw);
            try {
                f.constraints.push_back(parse_constraint(c.get<std::string>()));
            } catch (const Error&) {
                throw SchemaError(path, cw);
            }
        }
    }
    if (j.contains("expected_polygon")) {
        for (auto& v : j["expected_polygon"]) {
            if (!v.is_array() || v.size() != 2) throw SchemaError(path, w + "expected_polygon");
            f.expected_polygon.push_back({v[0].get<int>(), v[1].get<int>()});
        }
    }
    if (j.contains("notes"))
        for (auto& n : j["notes"]) f.notes.push_back(n.get<std::string>());
    // the tangent cone must parse once parameters are given values
    std::map<std::string, Rat> probe;
    for (auto& p : f.parameters) probe[p] = make_rat(3, 7);
    try {
        (void)f.instantiate(probe);
    } catch (const Error&) {
        throw SchemaError(path, w + "tangent_cone");
    }
    return f;
}

}  // namespace

Manifest manifest_from_json(const json& j, const std::string& path) {
    Manifest m;
    if (j.is_null()) return m;
    if (!j.is_object()) throw SchemaError(path, "root must be an object");
    m.schema = j.value("schema", m.schema);
    if (m.schema != "nps-manifest/1") throw SchemaError(path, "schema");
    if (j.contains("multiplicity")) {
        if (!j["multiplicity"].is_number_integer()) throw SchemaError(path, "multiplicity");
        m.multiplicity = j["multiplicity"].get<int>();
    }
    if (j.contains("diagrams")) {
        if (!j["diagrams"].is_array()) throw SchemaError(path, "diagrams");
        int k = 0;
        for (auto& d : j["diagrams"]) {
            m.diagrams.push_back(template_from_json(d, k, path));
            ++k;
        }
    }
    if (j.contains("families")) {
        if (!j["families"].is_array()) throw SchemaError(path, "families");
        int k = 0;
        std::set<std::string> ids;
        for (auto& f : j["families"]) {
            auto fam = family_from_json(f, k, path);
            if (!ids.insert(fam.id).second) throw SchemaError(path, "families/" + std::to_string(k) + "/id");
            for (auto& d : m.diagrams)
                if (d.block == fam.block) fam.expected_diagrams.push_back(d);
            m.families.push_back(std::move(fam));
            ++k;
        }
    }
    return m;
}

Manifest load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) return Manifest{};
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError(path, std::string("not valid JSON: ") + e.what());
    }
    return manifest_from_json(j, path);
}

json to_json(const Manifest& m) {
    json j;
    j["schema"] = m.schema;
    j["multiplicity"] = m.multiplicity;
    j["families"] = json::array();
    for (auto& f : m.families) {
        json jf;
        jf["id"] = f.id;
        jf["block"] = f.block;
        jf["tangent_cone"] = f.tangent_cone;
        jf["parameters"] = f.parameters;
        jf["perturbation"] = json::array();
        for (auto& t : f.perturbation) {
            json jt{{"monomial", t.monomial}, {"coeff", t.coeff}};
            if (!t.printed.empty()) jt["printed"] = t.printed;
            jf["perturbation"].push_back(jt);
        }
        jf["constraints"] = json::array();
        for (auto& c : f.constraints) jf["constraints"].push_back(c.str());
        jf["expected_polygon"] = json::array();
        for (auto& v : f.expected_polygon) jf["expected_polygon"].push_back({v.a, v.b});
        if (!f.notes.empty()) jf["notes"] = f.notes;
        j["families"].push_back(jf);
    }
    j["diagrams"] = json::array();
    for (auto& d : m.diagrams) {
        json jd{{"block", d.block}, {"template", d.text}};
        if (!d.params.empty()) {
            for (auto& [k, r] : d.params) jd["params"][k] = {{"q", r.q}, {"lo", r.lo}, {"hi", r.hi}, {"uncertain", r.uncertain}};
        }
        if (d.pairs) {
            json jp;
            jp["letters"] = d.pairs->letters;
            jp["verbatim"] = d.pairs->verbatim;
            jp["values"] = json::array();
            for (auto& v : d.pairs->values)
                jp["values"].push_back({{d.pairs->letters[0], to_string(v.a)},
                                        {d.pairs->letters[1], to_string(v.b)},
                                        {"uncertain", v.uncertain}});
            jd["pairs"] = jp;
        }
        if (!d.drawn.empty()) jd["drawn"] = d.drawn;
        if (!d.note.empty()) jd["note"] = d.note;
        j["diagrams"].push_back(jd);
    }
    return j;
}

void save_manifest(const Manifest& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
    out << to_json(m).dump(1) << "\n";
}

const FamilySpec* find_family(const Manifest& m, const std::string& id) {
    for (auto& f : m.families)
        if (f.id == id) return &f;
    return nullptr;
}

namespace {

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t mix(std::uint64_t seed, const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
    for (unsigned char c : s) h = (h ^ c) * 1099511628211ULL;
    return splitmix(seed ^ splitmix(h));
}

// nonzero p/q with |p| <= 9, 1 <= q <= 4
Rat draw(std::mt19937_64& g) {
    long p = static_cast<long>(g() % 18);
    p = p < 9 ? p - 9 : p - 8;
    long q = static_cast<long>(g() % 4) + 1;
    return make_rat(p, q);
}

}  // namespace

std::vector<Instance> sample_family(const FamilySpec& spec, int n, std::uint64_t seed) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "sample count must be positive");
    std::vector<Instance> out;
    for (int i = 0; i < n; ++i) {
        std::uint64_t s = mix(seed + static_cast<std::uint64_t>(i), spec.id);
        std::mt19937_64 g(s);
        bool ok = false;
        for (int attempt = 0; attempt < 500 && !ok; ++attempt) {
            std::map<std::string, Rat> v;
            for (auto& p : spec.parameters) v[p] = draw(g);
            for (auto& t : spec.perturbation) v[t.coeff] = draw(g);
            ok = std::all_of(spec.constraints.begin(), spec.constraints.end(), [&](auto& c) { return c.holds(v); });
            if (ok) out.push_back(Instance{spec.instantiate(v), v, s});
        }
        if (!ok)
            throw Error(ErrorCode::ConstraintUnsatisfiable, "no admissible coefficients for " + spec.id +
                                                                " after 500 draws");
    }
    return out;
}

std::vector<BivariatePoly> sample_instances(const FamilySpec& spec, int n, std::uint64_t seed) {
    std::vector<BivariatePoly> out;
    for (auto& inst : sample_family(spec, n, seed)) out.push_back(std::move(inst.poly));
    return out;
}

std::vector<TemplateExpansion> expand_template(const DiagramTemplate& t) {
    std::vector<std::pair<std::map<std::string, Rat>, bool>> assigns;
    if (t.pairs) {
        for (auto& v : t.pairs->values)
            assigns.push_back({{{t.pairs->letters[0], v.a}, {t.pairs->letters[1], v.b}}, v.uncertain});
    } else {
        assigns.push_back({{}, false});
        for (auto& l : t.letters()) {
            auto& r = t.params.at(l);
            std::vector<std::pair<std::map<std::string, Rat>, bool>> next;
            for (auto& a : assigns)
                for (auto& v : r.values()) {
                    auto m = a.first;
                    m[l] = v;
                    next.push_back({m, a.second || r.uncertain});
                }
            assigns = std::move(next);
        }
    }
    std::vector<TemplateExpansion> out;
    for (auto& [a, unc] : assigns) {
        TemplateExpansion e;
        e.template_index = t.index;
        e.block = t.block;
        e.assignment = a;
        e.uncertain = unc;
        std::string text = t.text;
        for (auto& [l, v] : a) text = std::regex_replace(text, std::regex("\\(\\s*" + l + "\\s"), "(" + to_string(v) + " ");
        try {
            e.diagram = parse_diagram(text);
            e.key_real = canonical_form(e.diagram, Mode::Real);
            e.key_complex = canonical_form(e.diagram, Mode::Complex);
        } catch (const Error& err) {
            e.valid = false;
            e.error = err.what();
        }
        out.push_back(std::move(e));
    }
    return out;
}

namespace {

std::string assignment_text(const std::map<std::string, Rat>& a) {
    std::string s;
    for (auto& [k, v] : a) s += (s.empty() ? "" : ",") + k + "=" + to_string(v);
    return s;
}

struct SampleOutcome {
    bool ok = false;
    int multiplicity = 0;
    std::string key_real, key_complex;
    bool provisional = false;
    std::string code, message;
};

void add_key(std::map<std::string, KeyEntry>& m, const std::string& key, const Provenance& p, bool provisional,
             bool uncertain) {
    auto& e = m[key];
    e.provenance.push_back(p);
    if (!provisional) e.provisional = false;
    if (!uncertain) e.uncertain = false;
}

}  // namespace

CatalogueReport run_catalogue(const Manifest& m, const ExpansionSettings& s, const CatalogueOptions& opt) {
    CatalogueReport rep;
    rep.samples_per_family = opt.samples_per_family;
    rep.seed = opt.seed;

    struct Task {
        const FamilySpec* fam;
        int index;
        Instance inst;
    };
    std::vector<Task> tasks;
    for (auto& f : m.families) {
        if (opt.samples_per_family <= 0) break;
        try {
            auto inst = sample_family(f, opt.samples_per_family, opt.seed);
            for (int i = 0; i < static_cast<int>(inst.size()); ++i) tasks.push_back({&f, i, std::move(inst[i])});
        } catch (const Error& e) {
            rep.errors.push_back({f.id, -1, error_name(e.code()), e.what()});
        }
    }

    std::vector<SampleOutcome> results(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            std::size_t k = next.fetch_add(1);
            if (k >= tasks.size()) return;
            SampleOutcome& o = results[k];
            try {
                auto r = classify_curve(tasks[k].inst.poly, s);
                o.ok = true;
                o.multiplicity = r.multiplicity;
                o.key_real = r.key_real.text;
                o.key_complex = r.key_complex.text;
                o.provisional = r.provisional();
            } catch (const Error& e) {
                o.code = error_name(e.code());
                o.message = e.what();
            } catch (const std::exception& e) {
                o.code = "InternalError";
                o.message = e.what();
            }
        }
    };
    int jobs = opt.jobs > 0 ? opt.jobs : std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min<int>(jobs, std::max<std::size_t>(1, tasks.size()));
    std::vector<std::thread> pool;
    for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    // deterministic reduction in (family, sample) order
    std::set<std::string> sampled_real;
    for (std::size_t k = 0; k < tasks.size(); ++k) {
        auto& t = tasks[k];
        auto& o = results[k];
        if (!o.ok) {
            rep.errors.push_back({t.fam->id, t.index, o.code, o.message});
            continue;
        }
        Provenance p{"sample", t.fam->id, t.index, t.inst.seed, to_string(t.inst.poly), ""};
        auto& mc = rep.per_multiplicity[o.multiplicity];
        add_key(mc.real, o.key_real, p, o.provisional, false);
        add_key(mc.complex, o.key_complex, p, o.provisional, false);
        if (!o.provisional) sampled_real.insert(o.key_real);
    }

    std::set<std::string> template_real;
    if (opt.include_templates) {
        std::map<std::string, std::string> first_seen;
        for (auto& t : m.diagrams) {
            for (auto& e : expand_template(t)) {
                ++rep.reconciliation.template_expansions;
                std::string where = t.block + " figure " + std::to_string(t.index) +
                                    (e.assignment.empty() ? "" : " (" + assignment_text(e.assignment) + ")");
                if (!e.valid) {
                    ++rep.reconciliation.invalid_expansions;
                    rep.errors.push_back({t.block, t.index, "InvalidTemplate", where + ": " + e.error});
                    continue;
                }
                Provenance p{"template", t.block, t.index, 0, "", assignment_text(e.assignment)};
                auto& mc = rep.per_multiplicity[m.multiplicity];
                add_key(mc.real, e.key_real.text, p, false, e.uncertain);
                add_key(mc.complex, e.key_complex.text, p, false, e.uncertain);
                template_real.insert(e.key_real.text);
                auto [it, fresh] = first_seen.emplace(e.key_real.text, where);
                if (!fresh) rep.reconciliation.duplicate_templates.push_back(where + " = " + it->second);
            }
        }
    }

    for (auto& [mult, mc] : rep.per_multiplicity) {
        for (auto& [k, e] : mc.real) {
            if (e.provisional)
                ++mc.provisional;
            else
                ++mc.distinct_real;
            if (!e.provisional && e.uncertain) ++mc.uncertain;
        }
        for (auto& [k, e] : mc.complex)
            if (!e.provisional) ++mc.distinct_complex;
    }
    if (opt.include_templates) {
        for (auto& k : sampled_real)
            if (!template_real.count(k)) rep.reconciliation.sample_only.push_back(k);
        if (opt.samples_per_family > 0)
            for (auto& k : template_real)
                if (!sampled_real.count(k)) rep.reconciliation.template_only.push_back(k);
    }
    return rep;
}

json to_json(const CatalogueReport& r) {
    json j;
    j["samples_per_family"] = r.samples_per_family;
    j["seed"] = r.seed;
    j["per_multiplicity"] = json::object();
    for (auto& [m, mc] : r.per_multiplicity) {
        json jm;
        jm["distinct_real"] = mc.distinct_real;
        jm["distinct_complex"] = mc.distinct_complex;
        jm["provisional"] = mc.provisional;
        jm["uncertain"] = mc.uncertain;
        auto keys = [](const std::map<std::string, KeyEntry>& km) {
            json a = json::array();
            for (auto& [k, e] : km) {
                json je;
                je["key"] = k;
                je["provisional"] = e.provisional;
                je["uncertain"] = e.uncertain;
                je["provenance"] = json::array();
                for (auto& p : e.provenance) {
                    json jp{{"kind", p.kind}, {"source", p.source}, {"index", p.index}};
                    if (p.kind == "sample") {
                        jp["seed"] = p.seed;
                        jp["poly"] = p.poly;
                    } else if (!p.assignment.empty()) {
                        jp["assignment"] = p.assignment;
                    }
                    je["provenance"].push_back(jp);
                }
                a.push_back(je);
            }
            return a;
        };
        jm["real"] = keys(mc.real);
        jm["complex"] = keys(mc.complex);
        j["per_multiplicity"][std::to_string(m)] = jm;
    }
    j["errors"] = json::array();
    for (auto& e : r.errors)
        j["errors"].push_back({{"source", e.family}, {"index", e.index}, {"code", e.code}, {"message", e.message}});
    auto& rc = r.reconciliation;
    j["reconciliation"] = {{"sample_only", rc.sample_only},
                           {"template_only", rc.template_only},
                           {"duplicate_templates", rc.duplicate_templates},
                           {"template_expansions", rc.template_expansions},
                           {"invalid_expansions", rc.invalid_expansions}};
    return j;
}

std::string summary_table(const CatalogueReport& r) {
    std::ostringstream out;
    out << "multiplicity  distinctReal  distinctComplex  provisional  uncertain\n";
    for (auto& [m, mc] : r.per_multiplicity) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "%12d  %12d  %15d  %11d  %9d\n", m, mc.distinct_real, mc.distinct_complex,
                      mc.provisional, mc.uncertain);
        out << buf;
    }
    auto& rc = r.reconciliation;
    out << "template expansions: " << rc.template_expansions << " (invalid: " << rc.invalid_expansions << ")\n";
    out << "duplicate figures: " << rc.duplicate_templates.size() << "\n";
    for (auto& d : rc.duplicate_templates) out << "  " << d << "\n";
    out << "keys from samples only: " << rc.sample_only.size() << "\n";
    for (auto& k : rc.sample_only) out << "  " << k << "\n";
    out << "figure keys not hit by samples: " << rc.template_only.size() << "\n";
    if (!r.errors.empty()) {
        out << "errors: " << r.errors.size() << "\n";
        for (auto& e : r.errors)
            out << "  " << e.family << "[" << e.index << "] " << e.code << ": " << e.message << "\n";
    }
    return out.str();
}

}  // namespace nps
