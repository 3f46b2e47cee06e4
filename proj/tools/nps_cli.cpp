// command-line front end; talks to the library only through nps.h

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nps/nps.h"

namespace {

enum Exit { Ok = 0, Internal = 1, Input = 2, Numeric = 3, Provisional = 4 };

int exit_for(nps_status s) {
    switch (s) {
        case NPS_OK: return Ok;
        case NPS_E_SYNTAX:
        case NPS_E_DEGREE_OVERFLOW:
        case NPS_E_ZERO_POLYNOMIAL:
        case NPS_E_NEEDS_PREPARATION:
        case NPS_E_SCHEMA:
        case NPS_E_CONSTRAINT:
        case NPS_E_INVALID_ARGUMENT:
        case NPS_E_IO: return Input;
        case NPS_E_INTERNAL: return Internal;
        default: return Numeric;
    }
}

int report(nps_status s, const std::string& what = "") {
    if (s == NPS_OK) return Ok;
    std::cerr << "nps: " << nps_status_name(s) << ": " << nps_last_error();
    if (!what.empty()) std::cerr << " (" << what << ")";
    std::cerr << "\n";
    return exit_for(s);
}

// takes ownership of a library string
std::string take(char* s) {
    std::string r = s ? s : "";
    nps_string_free(s);
    return r;
}

struct Common {
    int precision = 256;
    double tol = 0;
    std::string max_order;
    int max_depth = 0;
    std::string format = "text";
    std::string mode = "real";
    std::uint64_t seed = 0;
    int jobs = 0;

    nps_settings settings() const {
        nps_settings s;
        nps_settings_init(&s);
        s.precision_bits = precision;
        if (tol > 0) s.tol = tol;
        s.max_order = max_order.empty() ? nullptr : max_order.c_str();
        if (max_depth > 0) s.max_depth = max_depth;
        return s;
    }
    nps_format fmt() const {
        if (format == "json") return NPS_FORMAT_JSON;
        if (format == "tikz") return NPS_FORMAT_TIKZ;
        return NPS_FORMAT_TEXT;
    }
    nps_mode md() const { return mode == "complex" ? NPS_MODE_COMPLEX : NPS_MODE_REAL; }
};

std::vector<std::string> inputs(const std::string& poly, const std::string& file) {
    std::vector<std::string> out;
    if (!poly.empty()) out.push_back(poly);
    if (!file.empty()) {
        std::ifstream in(file);
        if (!in) throw std::runtime_error("cannot read " + file);
        std::string line;
        while (std::getline(in, line)) {
            auto a = line.find_first_not_of(" \t\r");
            if (a == std::string::npos || line[a] == '#') continue;
            out.push_back(line.substr(a));
        }
    }
    return out;
}

int with_poly(const std::string& text, nps_poly** p) { return report(nps_poly_parse(text.c_str(), p), text); }

int cmd_classify(const Common& c, const std::vector<std::string>& polys, bool no_shear) {
    int worst = Ok;
    nps_settings s = c.settings();
    s.shear_never = no_shear ? 1 : 0;
    for (auto& text : polys) {
        nps_poly* p = nullptr;
        int rc = with_poly(text, &p);
        if (rc != Ok) {
            worst = std::max(worst, rc);
            continue;
        }
        nps_result* r = nullptr;
        nps_status st = nps_classify(p, &s, &r);
        nps_poly_free(p);
        if (st != NPS_OK) {
            worst = std::max(worst, report(st, text));
            continue;
        }
        char* out = nullptr;
        st = nps_result_render(r, c.md(), c.fmt(), &out);
        if (st == NPS_OK) std::cout << take(out);
        rc = report(st);
        if (rc == Ok && nps_result_provisional(r)) {
            std::cerr << "nps: provisional result for " << text << "\n";
            rc = Provisional;
        }
        nps_result_free(r);
        worst = std::max(worst, rc);
    }
    return worst;
}

template <class F>
int per_poly(const std::vector<std::string>& polys, F&& f) {
    int worst = Ok;
    for (auto& text : polys) {
        nps_poly* p = nullptr;
        int rc = with_poly(text, &p);
        if (rc == Ok) {
            char* out = nullptr;
            nps_status st = f(p, &out);
            if (st == NPS_OK) std::cout << take(out);
            rc = report(st, text);
            nps_poly_free(p);
        }
        worst = std::max(worst, rc);
    }
    return worst;
}

int cmd_catalogue(const Common& c, const std::string& manifest, int samples, const std::string& out_path) {
    nps_manifest* m = nullptr;
    if (int rc = report(nps_manifest_load(manifest.c_str(), &m)); rc != Ok) return rc;
    nps_settings s = c.settings();
    nps_report* r = nullptr;
    nps_status st = nps_catalogue_run(m, &s, samples, c.seed, c.jobs, &r);
    nps_manifest_free(m);
    if (st != NPS_OK) return report(st);
    char* json = nullptr;
    char* table = nullptr;
    st = nps_report_json(r, &json);
    if (st == NPS_OK) st = nps_report_summary(r, &table);
    nps_report_free(r);
    if (st != NPS_OK) return report(st);
    std::string j = take(json), t = take(table);
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        f << j;
        if (!f) {
            std::cerr << "nps: IoError: cannot write " << out_path << "\n";
            return Input;
        }
    }
    std::cout << (c.fmt() == NPS_FORMAT_JSON ? j : t);
    return Ok;
}

int cmd_realize(const Common& c, const std::string& manifest, const std::string& family, const std::string& target,
                int budget) {
    nps_manifest* m = nullptr;
    if (int rc = report(nps_manifest_load(manifest.c_str(), &m)); rc != Ok) return rc;
    nps_settings s = c.settings();
    char* out = nullptr;
    int found = 0;
    nps_status st = nps_realize(m, family.c_str(), target.c_str(), budget, c.seed, &s, c.fmt(), &out, &found);
    nps_manifest_free(m);
    if (st != NPS_OK) return report(st);
    std::cout << take(out);
    return Ok;
}

int default_precision() {
    const char* e = std::getenv("NPS_PRECISION");
    if (!e || !*e) return 256;
    char* end = nullptr;
    long v = std::strtol(e, &end, 10);
    if (*end != '\0' || v < 16 || v > 1 << 20) {
        std::cerr << "nps: ignoring NPS_PRECISION=" << e << "\n";
        return 256;
    }
    return static_cast<int>(v);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Newton polygons, Puiseux expansions and contact diagrams of plane curve singularities"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(nps_version()));

    Common c;
    c.precision = default_precision();
    std::string poly, file, diagram, manifest, out_path, family, target;
    int samples = 20, budget = 200;
    bool no_shear = false;

    auto numeric = [&](CLI::App* sub) {
        sub->add_option("--precision", c.precision, "working precision in bits (env NPS_PRECISION)")
            ->check(CLI::Range(16, 1 << 20));
        sub->add_option("--tol", c.tol, "root clustering floor")->check(CLI::PositiveNumber);
        sub->add_option("--max-order", c.max_order, "expand every branch up to this order (p/q)");
        sub->add_option("--max-depth", c.max_depth, "recursion limit of the expansion")->check(CLI::Range(1, 10000));
    };
    auto formats = [&](CLI::App* sub, std::vector<std::string> allowed) {
        sub->add_option("--format", c.format, "output format")->check(CLI::IsMember(allowed));
    };
    auto source = [&](CLI::App* sub) {
        sub->add_option("--poly", poly, "polynomial in x and y");
        sub->add_option("--file", file, "file with one polynomial per line")->check(CLI::ExistingFile);
    };
    auto mode = [&](CLI::App* sub) {
        sub->add_option("--mode", c.mode, "real keeps conjugate pairs, complex erases them")
            ->check(CLI::IsMember({"real", "complex"}));
    };

    auto* classify = app.add_subcommand("classify", "classify the singularity at the origin");
    source(classify);
    numeric(classify);
    formats(classify, {"text", "json", "tikz"});
    mode(classify);
    classify->add_option("--seed", c.seed, "accepted for uniformity; classification is deterministic");
    classify->add_flag("--no-shear", no_shear, "fail instead of shearing when y^m is missing");

    auto* polygon = app.add_subcommand("polygon", "Newton polygon");
    source(polygon);
    formats(polygon, {"text", "json", "tikz"});

    auto* puiseux = app.add_subcommand("puiseux", "Newton-Puiseux expansion");
    source(puiseux);
    numeric(puiseux);
    formats(puiseux, {"text", "json"});

    auto* render = app.add_subcommand("render", "render a diagram given as text or computed from a polynomial");
    render->add_option("--diagram", diagram, "diagram text, e.g. \"(3/2 -> [leaf, leaf])\"");
    source(render);
    numeric(render);
    mode(render);
    formats(render, {"text", "json", "tikz"});

    auto* catalogue = app.add_subcommand("catalogue", "sample, classify and count a manifest");
    catalogue->add_option("--manifest", manifest, "manifest file")->required()->check(CLI::ExistingFile);
    catalogue->add_option("--samples", samples, "samples per family")->check(CLI::Range(1, 1000000));
    catalogue->add_option("--seed", c.seed, "sampling seed");
    catalogue->add_option("--jobs", c.jobs, "worker threads (0: logical cores)")->check(CLI::NonNegativeNumber);
    catalogue->add_option("--out", out_path, "write the JSON report here");
    numeric(catalogue);
    formats(catalogue, {"text", "json"});

    auto* realize = app.add_subcommand("realize", "search coefficients realizing a parameterized label");
    realize->add_option("--manifest", manifest, "manifest file")->required()->check(CLI::ExistingFile);
    realize->add_option("--family", family, "family id")->required();
    realize->add_option("--target", target, "label value p/q")->required();
    realize->add_option("--budget", budget, "attempts")->check(CLI::Range(1, 100000000));
    realize->add_option("--seed", c.seed, "search seed");
    numeric(realize);
    formats(realize, {"text", "json", "tikz"});

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? Ok : Input;
    }

    try {
        if (*catalogue) {
            if (catalogue->count("--seed") == 0) c.seed = 7;
            return cmd_catalogue(c, manifest, samples, out_path);
        }
        if (*realize) {
            if (realize->count("--seed") == 0) c.seed = 1;
            return cmd_realize(c, manifest, family, target, budget);
        }
        if (*render && render->count("--format") == 0) c.format = "tikz";
        if (*render && !diagram.empty()) {
            char* out = nullptr;
            nps_status st = nps_diagram_render(diagram.c_str(), c.md(), c.fmt(), &out);
            if (st == NPS_OK) std::cout << take(out);
            return report(st, diagram);
        }
        auto polys = inputs(poly, file);
        if (polys.empty()) {
            std::cerr << "nps: give --poly or --file" << (*render ? " or --diagram" : "") << "\n";
            return Input;
        }
        if (*classify || *render) return cmd_classify(c, polys, no_shear);
        nps_settings s = c.settings();
        if (*polygon) return per_poly(polys, [&](nps_poly* p, char** out) { return nps_polygon_render(p, c.fmt(), out); });
        return per_poly(polys, [&](nps_poly* p, char** out) { return nps_puiseux_render(p, &s, c.fmt(), out); });
    } catch (const std::exception& e) {
        std::cerr << "nps: " << e.what() << "\n";
        return Input;
    }
}
