#include "nps/nps.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <sstream>

#include "nps/catalogue.hpp"
#include "nps/errors.hpp"
#include "nps/render_io.hpp"

struct nps_poly {
    nps::BivariatePoly p;
};
struct nps_result {
    nps::ClassificationResult r;
};
struct nps_manifest {
    nps::Manifest m;
};
struct nps_report {
    nps::CatalogueReport r;
};

namespace {

thread_local std::string last_error;

nps_status fail(nps::ErrorCode c, const std::string& msg) {
    last_error = msg;
    return static_cast<nps_status>(c);
}

template <class F>
nps_status guarded(F&& f) {
    try {
        last_error.clear();
        f();
        return NPS_OK;
    } catch (const nps::Error& e) {
        return fail(e.code(), e.what());
    } catch (const nlohmann::json::exception& e) {
        return fail(nps::ErrorCode::Schema, e.what());
    } catch (const std::bad_alloc&) {
        return fail(nps::ErrorCode::Internal, "out of memory");
    } catch (const std::exception& e) {
        return fail(nps::ErrorCode::Internal, e.what());
    }
}

char* dup(const std::string& s) {
    char* c = static_cast<char*>(std::malloc(s.size() + 1));
    if (!c) throw std::bad_alloc();
    std::memcpy(c, s.c_str(), s.size() + 1);
    return c;
}

void need(const void* p, const char* what) {
    if (!p) throw nps::Error(nps::ErrorCode::InvalidArgument, std::string(what) + " is null");
}

nps::ExpansionSettings settings(const nps_settings* s) {
    nps::ExpansionSettings e;
    if (!s) return e;
    if (s->precision_bits < 16) throw nps::Error(nps::ErrorCode::InvalidArgument, "precision below 16 bits");
    e.precision_bits = s->precision_bits;
    if (s->tol > 0) e.tol = s->tol;
    if (s->max_order && *s->max_order) e.max_order = nps::parse_rat(s->max_order);
    if (e.max_order < 0) throw nps::Error(nps::ErrorCode::InvalidArgument, "negative max order");
    if (s->max_depth > 0) e.max_depth = s->max_depth;
    return e;
}

nps::Mode mode(nps_mode m) { return m == NPS_MODE_COMPLEX ? nps::Mode::Complex : nps::Mode::Real; }

std::string term_text(const nps::SeriesTerm& t) {
    std::string c = t.exact ? nps::to_string(t.exact_value) : nps::to_string(t.coeff, 12);
    return "(" + c + ")*x^(" + nps::to_string(t.exp) + ")";
}

std::string cycles_text(const nps::Expansion& e) {
    std::ostringstream o;
    for (auto& c : e.cycles) {
        o << "cycle " << c.id << " q=" << c.q << " conj=" << c.conj_class << (c.unseparated ? " unseparated" : "")
          << ": y =";
        if (c.terms.empty()) o << " 0";
        for (std::size_t i = 0; i < c.terms.size(); ++i) o << (i ? " + " : " ") << term_text(c.terms[i]);
        if (c.trunc) o << " + O(x^(" << nps::to_string(*c.trunc) << "))";
        o << "\n";
    }
    return o.str();
}

std::string polygon_text(const nps::NewtonPolygon& p) {
    std::ostringstream o;
    for (auto& e : p.edges) {
        o << "edge (" << e.p1.a << "," << e.p1.b << ")-(" << e.p2.a << "," << e.p2.b << ") mu=" << nps::to_string(e.mu)
          << " height=" << e.height << "\n";
    }
    if (p.y_order > 0) o << "y^" << p.y_order << " divides f\n";
    return o.str();
}

}  // namespace

extern "C" {

const char* nps_version(void) { return "1.0.0"; }

const char* nps_status_name(nps_status s) { return nps::error_name(static_cast<nps::ErrorCode>(s)); }

const char* nps_last_error(void) { return last_error.c_str(); }

void nps_settings_init(nps_settings* s) {
    if (!s) return;
    nps::ExpansionSettings d;
    s->precision_bits = d.precision_bits;
    s->tol = d.tol;
    s->max_order = nullptr;
    s->max_depth = d.max_depth;
    s->shear_never = 0;
}

void nps_string_free(char* s) { std::free(s); }

nps_status nps_poly_parse(const char* text, nps_poly** out) {
    return guarded([&] {
        need(text, "text");
        need(out, "out");
        *out = nullptr;
        auto p = std::make_unique<nps_poly>();
        p->p = nps::parse_poly(text);
        *out = p.release();
    });
}

void nps_poly_free(nps_poly* p) { delete p; }

nps_status nps_poly_to_string(const nps_poly* p, char** out) {
    return guarded([&] {
        need(p, "poly");
        need(out, "out");
        *out = dup(nps::to_string(p->p));
    });
}

nps_status nps_polygon_render(const nps_poly* p, nps_format fmt, char** out) {
    return guarded([&] {
        need(p, "poly");
        need(out, "out");
        nps::NewtonPolygon np = nps::newton_polygon(p->p);
        switch (fmt) {
            case NPS_FORMAT_JSON: *out = dup(nps::to_json(np).dump(2) + "\n"); break;
            case NPS_FORMAT_TIKZ: *out = dup(nps::to_tikz(np)); break;
            default: *out = dup(polygon_text(np));
        }
    });
}

nps_status nps_puiseux_render(const nps_poly* p, const nps_settings* s, nps_format fmt, char** out) {
    return guarded([&] {
        need(p, "poly");
        need(out, "out");
        nps::ExpansionSettings es = settings(s);
        nps::Expansion e = nps::puiseux_expand_full(p->p, es);
        if (fmt == NPS_FORMAT_TIKZ) throw nps::Error(nps::ErrorCode::InvalidArgument, "no tikz form for series");
        if (fmt == NPS_FORMAT_JSON) {
            nlohmann::json j;
            j["multiplicity"] = e.multiplicity;
            j["cycles"] = nps::to_json(e.cycles);
            j["unseparated"] = e.unseparated;
            j["low_confidence"] = e.low_confidence;
            j["notes"] = e.notes;
            *out = dup(j.dump(2) + "\n");
        } else {
            *out = dup(cycles_text(e));
        }
    });
}

nps_status nps_classify(const nps_poly* p, const nps_settings* s, nps_result** out) {
    return guarded([&] {
        need(p, "poly");
        need(out, "out");
        *out = nullptr;
        auto r = std::make_unique<nps_result>();
        auto policy = s && s->shear_never ? nps::ShearPolicy::Never : nps::ShearPolicy::Auto;
        r->r = nps::classify_curve(p->p, settings(s), policy);
        *out = r.release();
    });
}

void nps_result_free(nps_result* r) { delete r; }

int nps_result_multiplicity(const nps_result* r) { return r ? r->r.multiplicity : 0; }

int nps_result_provisional(const nps_result* r) { return r && r->r.provisional() ? 1 : 0; }

nps_status nps_result_key(const nps_result* r, nps_mode m, char** out) {
    return guarded([&] {
        need(r, "result");
        need(out, "out");
        *out = dup(m == NPS_MODE_COMPLEX ? r->r.key_complex.text : r->r.key_real.text);
    });
}

nps_status nps_result_render(const nps_result* r, nps_mode m, nps_format fmt, char** out) {
    return guarded([&] {
        need(r, "result");
        need(out, "out");
        switch (fmt) {
            case NPS_FORMAT_JSON: *out = dup(nps::to_json(r->r).dump(2) + "\n"); break;
            case NPS_FORMAT_TIKZ: *out = dup(nps::to_tikz(nps::canonical_diagram(r->r.diagram, mode(m)))); break;
            default: *out = dup((m == NPS_MODE_COMPLEX ? r->r.key_complex.text : r->r.key_real.text) + "\n");
        }
    });
}

nps_status nps_diagram_render(const char* text, nps_mode m, nps_format fmt, char** out) {
    return guarded([&] {
        need(text, "text");
        need(out, "out");
        nps::Diagram d = nps::canonical_diagram(nps::parse_diagram(text), mode(m));
        switch (fmt) {
            case NPS_FORMAT_JSON: *out = dup(nps::to_json(d).dump(2) + "\n"); break;
            case NPS_FORMAT_TIKZ: *out = dup(nps::to_tikz(d)); break;
            default: *out = dup(nps::to_text(d) + "\n");
        }
    });
}

nps_status nps_manifest_load(const char* path, nps_manifest** out) {
    return guarded([&] {
        need(path, "path");
        need(out, "out");
        *out = nullptr;
        auto m = std::make_unique<nps_manifest>();
        m->m = nps::load_manifest(path);
        *out = m.release();
    });
}

void nps_manifest_free(nps_manifest* m) { delete m; }

int nps_manifest_multiplicity(const nps_manifest* m) { return m ? m->m.multiplicity : 0; }

nps_status nps_catalogue_run(const nps_manifest* m, const nps_settings* s, int samples, uint64_t seed, int jobs,
                             nps_report** out) {
    return guarded([&] {
        need(m, "manifest");
        need(out, "out");
        *out = nullptr;
        if (samples < 1) throw nps::Error(nps::ErrorCode::InvalidArgument, "sample count must be positive");
        if (jobs < 0) throw nps::Error(nps::ErrorCode::InvalidArgument, "negative job count");
        nps::CatalogueOptions o;
        o.samples_per_family = samples;
        o.seed = seed;
        o.jobs = jobs;
        auto r = std::make_unique<nps_report>();
        r->r = nps::run_catalogue(m->m, settings(s), o);
        *out = r.release();
    });
}

void nps_report_free(nps_report* r) { delete r; }

nps_status nps_report_json(const nps_report* r, char** out) {
    return guarded([&] {
        need(r, "report");
        need(out, "out");
        *out = dup(nps::to_json(r->r).dump(2) + "\n");
    });
}

nps_status nps_report_summary(const nps_report* r, char** out) {
    return guarded([&] {
        need(r, "report");
        need(out, "out");
        *out = dup(nps::summary_table(r->r));
    });
}

nps_status nps_report_counts(const nps_report* r, int multiplicity, int* distinct_real, int* distinct_complex) {
    return guarded([&] {
        need(r, "report");
        auto it = r->r.per_multiplicity.find(multiplicity);
        if (it == r->r.per_multiplicity.end())
            throw nps::Error(nps::ErrorCode::InvalidArgument, "no entries for multiplicity " + std::to_string(multiplicity));
        if (distinct_real) *distinct_real = it->second.distinct_real;
        if (distinct_complex) *distinct_complex = it->second.distinct_complex;
    });
}

nps_status nps_realize(const nps_manifest* m, const char* family, const char* target, int budget, uint64_t seed,
                       const nps_settings* s, nps_format fmt, char** out, int* found) {
    return guarded([&] {
        need(m, "manifest");
        need(family, "family");
        need(target, "target");
        need(out, "out");
        if (budget < 1) throw nps::Error(nps::ErrorCode::InvalidArgument, "budget must be positive");
        const nps::FamilySpec* f = nps::find_family(m->m, family);
        if (!f) throw nps::Error(nps::ErrorCode::InvalidArgument, std::string("no family ") + family);
        nps::Rat t = nps::parse_rat(target);
        nps::RealizationOutcome r = nps::find_realizations(*f, t, budget, seed, settings(s));
        if (found) *found = r.found.empty() ? 0 : 1;
        if (fmt == NPS_FORMAT_JSON) {
            nlohmann::json j;
            j["family"] = f->id;
            j["target"] = nps::to_string(t);
            j["found"] = !r.found.empty();
            j["attempts"] = r.attempts;
            j["reason"] = r.reason;
            j["realizations"] = nlohmann::json::array();
            for (auto& x : r.found)
                j["realizations"].push_back({{"poly", nps::to_string(x.poly)},
                                             {"template_index", x.template_index},
                                             {"template", x.template_text},
                                             {"key_real", x.result.key_real.text},
                                             {"key_complex", x.result.key_complex.text}});
            *out = dup(j.dump(2) + "\n");
            return;
        }
        if (fmt == NPS_FORMAT_TIKZ && !r.found.empty()) {
            *out = dup(nps::to_tikz(r.found[0].result.diagram));
            return;
        }
        std::ostringstream o;
        if (r.found.empty()) {
            o << "Exhausted after " << r.attempts << " attempts: " << r.reason << "\n";
        } else {
            for (auto& x : r.found)
                o << "poly: " << nps::to_string(x.poly) << "\nreal: " << x.result.key_real.text
                  << "\ncomplex: " << x.result.key_complex.text << "\nfigure: " << x.template_text << "\n";
        }
        *out = dup(o.str());
    });
}

}  // extern "C"
