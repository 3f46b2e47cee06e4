#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "nps/classify.hpp"

namespace nps {

// values n/q for n = lo..hi
struct ParamRange {
    int q = 1;
    long lo = 0, hi = 0;
    bool uncertain = false;
    std::vector<Rat> values() const;
};

struct PairValue {
    Rat a, b;
    bool uncertain = false;
};

// explicit (a, b) combinations, kept with the printed caption
struct PairSet {
    std::vector<std::string> letters;
    std::string verbatim;
    std::vector<PairValue> values;
};

struct DiagramTemplate {
    int index = 0;  // position in the manifest
    std::string block;
    std::string text;  // diagram text, labels may be single letters
    std::map<std::string, ParamRange> params;
    std::optional<PairSet> pairs;
    std::string drawn;  // figure as drawn when the template is a correction
    std::string note;

    std::vector<std::string> letters() const;
};

struct PerturbationTerm {
    std::string monomial;
    std::string coeff;
    std::string printed;
    int a = 0, b = 0;
};

struct Constraint {
    enum class Op { Ne, Gt };
    std::string lhs;
    Op op = Op::Ne;
    std::string rhs_var;           // empty when rhs is a number
    Rat rhs_value;
    bool holds(const std::map<std::string, Rat>& v) const;
    std::string str() const;
};
Constraint parse_constraint(const std::string& s);

struct FamilySpec {
    std::string id;
    std::string block;
    std::string tangent_cone;  // may contain parameters
    std::vector<std::string> parameters;
    std::vector<PerturbationTerm> perturbation;
    std::vector<Constraint> constraints;
    std::vector<SupportPoint> expected_polygon;
    std::vector<std::string> notes;
    std::vector<DiagramTemplate> expected_diagrams;  // templates of the same block

    // tangent cone with parameter values substituted, plus the perturbation
    BivariatePoly instantiate(const std::map<std::string, Rat>& values) const;
};

struct Manifest {
    std::string schema = "nps-manifest/1";
    int multiplicity = 0;
    std::vector<FamilySpec> families;
    std::vector<DiagramTemplate> diagrams;
};

Manifest load_manifest(const std::string& path);
Manifest manifest_from_json(const nlohmann::json& j, const std::string& path = "<memory>");
nlohmann::json to_json(const Manifest& m);
void save_manifest(const Manifest& m, const std::string& path);

const FamilySpec* find_family(const Manifest& m, const std::string& id);

struct Instance {
    BivariatePoly poly;
    std::map<std::string, Rat> values;
    std::uint64_t seed = 0;
};

std::vector<Instance> sample_family(const FamilySpec& spec, int n, std::uint64_t seed);
std::vector<BivariatePoly> sample_instances(const FamilySpec& spec, int n, std::uint64_t seed);

// one diagram per parameter assignment
struct TemplateExpansion {
    int template_index = 0;
    std::string block;
    std::map<std::string, Rat> assignment;
    bool uncertain = false;  // from a "?" range or an uncertain pair
    bool valid = true;       // false when labels do not increase along a path
    std::string error;
    Diagram diagram;
    CanonicalKey key_real, key_complex;
};
std::vector<TemplateExpansion> expand_template(const DiagramTemplate& t);

struct Provenance {
    std::string kind;  // "sample" or "template"
    std::string source;  // family id or block id
    int index = 0;       // sample index or template index
    std::uint64_t seed = 0;
    std::string poly;    // sample polynomial
    std::string assignment;
};

struct KeyEntry {
    std::vector<Provenance> provenance;
    bool provisional = true;  // every occurrence carries a flag
    bool uncertain = true;    // every template occurrence is uncertain
};

struct MultiplicityCounts {
    int distinct_real = 0;
    int distinct_complex = 0;
    int provisional = 0;
    int uncertain = 0;
    std::map<std::string, KeyEntry> real;
    std::map<std::string, KeyEntry> complex;
};

struct FamilyError {
    std::string family;
    int index = 0;
    std::string code;
    std::string message;
};

struct Reconciliation {
    std::vector<std::string> sample_only;       // real keys found by sampling, absent from templates
    std::vector<std::string> template_only;     // real keys never hit by a sample
    std::vector<std::string> duplicate_templates; // figures collapsing to an earlier key
    int template_expansions = 0;
    int invalid_expansions = 0;
};

struct CatalogueReport {
    std::map<int, MultiplicityCounts> per_multiplicity;
    std::vector<FamilyError> errors;
    Reconciliation reconciliation;
    int samples_per_family = 0;
    std::uint64_t seed = 0;
};

struct CatalogueOptions {
    int samples_per_family = 20;
    std::uint64_t seed = 7;
    int jobs = 0;  // 0: hardware concurrency
    bool include_templates = true;
};

CatalogueReport run_catalogue(const Manifest& m, const ExpansionSettings& s, const CatalogueOptions& opt);
nlohmann::json to_json(const CatalogueReport& r);
std::string summary_table(const CatalogueReport& r);

// search for coefficient choices realizing a parameterized label
struct Realization {
    BivariatePoly poly;
    ClassificationResult result;
    std::string template_text;
    int template_index = 0;
};
struct RealizationOutcome {
    std::vector<Realization> found;
    bool exhausted = false;
    std::string reason;
    int attempts = 0;
};
RealizationOutcome find_realizations(const FamilySpec& spec, const Rat& target, int budget,
                                     std::uint64_t seed = 1, const ExpansionSettings& s = {});

}  // namespace nps
