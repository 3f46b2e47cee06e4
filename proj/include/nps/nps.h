#ifndef NPS_H
#define NPS_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* values match nps::ErrorCode */
typedef enum nps_status {
    NPS_OK = 0,
    NPS_E_SYNTAX = 1,
    NPS_E_DEGREE_OVERFLOW = 2,
    NPS_E_ZERO_POLYNOMIAL = 3,
    NPS_E_NUMERIC = 4,
    NPS_E_NON_CONVERGENCE = 5,
    NPS_E_NEEDS_PREPARATION = 6,
    NPS_E_EDGE_MISMATCH = 7,
    NPS_E_DEPTH_EXCEEDED = 8,
    NPS_E_INSUFFICIENT_TRUNCATION = 9,
    NPS_E_ULTRAMETRIC = 10,
    NPS_E_NON_REDUCED = 11,
    NPS_E_SCHEMA = 12,
    NPS_E_CONSTRAINT = 13,
    NPS_E_PROBE_UNDERFLOW = 14,
    NPS_E_EXHAUSTED = 15,
    NPS_E_INVALID_ARGUMENT = 16,
    NPS_E_IO = 17,
    NPS_E_INTERNAL = 99
} nps_status;

typedef enum nps_format { NPS_FORMAT_TEXT = 0, NPS_FORMAT_JSON = 1, NPS_FORMAT_TIKZ = 2 } nps_format;
typedef enum nps_mode { NPS_MODE_REAL = 0, NPS_MODE_COMPLEX = 1 } nps_mode;

typedef struct nps_settings {
    int precision_bits;    /* working precision of the numeric levels */
    double tol;            /* root clustering floor */
    const char* max_order; /* "p/q"; NULL or "0" stops once branches separate */
    int max_depth;
    int shear_never;       /* nonzero: fail instead of shearing when y^m is missing */
} nps_settings;

typedef struct nps_poly nps_poly;
typedef struct nps_result nps_result;
typedef struct nps_manifest nps_manifest;
typedef struct nps_report nps_report;

const char* nps_version(void);
const char* nps_status_name(nps_status s);
/* message of the last failing call on this thread; never NULL */
const char* nps_last_error(void);

void nps_settings_init(nps_settings* s);
/* strings returned through char** are owned by the caller */
void nps_string_free(char* s);

nps_status nps_poly_parse(const char* text, nps_poly** out);
void nps_poly_free(nps_poly* p);
nps_status nps_poly_to_string(const nps_poly* p, char** out);

/* text, json or tikz */
nps_status nps_polygon_render(const nps_poly* p, nps_format fmt, char** out);
/* text or json */
nps_status nps_puiseux_render(const nps_poly* p, const nps_settings* s, nps_format fmt, char** out);

nps_status nps_classify(const nps_poly* p, const nps_settings* s, nps_result** out);
void nps_result_free(nps_result* r);
int nps_result_multiplicity(const nps_result* r);
int nps_result_provisional(const nps_result* r);
nps_status nps_result_key(const nps_result* r, nps_mode mode, char** out);
/* text: canonical key; json: full result; tikz: diagram */
nps_status nps_result_render(const nps_result* r, nps_mode mode, nps_format fmt, char** out);

/* parse diagram text and re-emit it canonically */
nps_status nps_diagram_render(const char* text, nps_mode mode, nps_format fmt, char** out);

nps_status nps_manifest_load(const char* path, nps_manifest** out);
void nps_manifest_free(nps_manifest* m);
int nps_manifest_multiplicity(const nps_manifest* m);

/* jobs = 0: one worker per logical core */
nps_status nps_catalogue_run(const nps_manifest* m, const nps_settings* s, int samples, uint64_t seed, int jobs,
                             nps_report** out);
void nps_report_free(nps_report* r);
nps_status nps_report_json(const nps_report* r, char** out);
nps_status nps_report_summary(const nps_report* r, char** out);
nps_status nps_report_counts(const nps_report* r, int multiplicity, int* distinct_real, int* distinct_complex);

/* found is set to 0 when the search is exhausted; that is not an error */
nps_status nps_realize(const nps_manifest* m, const char* family, const char* target, int budget, uint64_t seed,
                       const nps_settings* s, nps_format fmt, char** out, int* found);

#ifdef __cplusplus
}
#endif

#endif
