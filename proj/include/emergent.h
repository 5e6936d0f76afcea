/*
 * C interface to the emergent-algebra workbench. Models are opaque handles
 * built from JSON configuration records; every operation returns a status
 * code and, on success, a heap-allocated JSON report that the caller frees
 * with emg_string_free(). emg_last_error() describes the last failure on
 * the calling thread.
 *
 * Determinism contract: identical configuration, request and seed produce
 * byte-identical report strings.
 */
#ifndef EMERGENT_H
#define EMERGENT_H

#ifdef __cplusplus
extern "C" {
#endif

#define EMG_OK 0
#define EMG_EINVAL 1       /* invalid configuration or request */
#define EMG_EPARSE 2       /* DSL syntax error (terms, braids, identities) */
#define EMG_EUNSUPPORTED 3 /* structure not provided by this model */
#define EMG_EDOMAIN 4      /* input outside an operation's domain */
#define EMG_EINTERNAL 5

typedef struct emg_model emg_model;

const char* emg_version(void);
const char* emg_last_error(void);
void emg_string_free(char* s);

/* config: {"model":"affine"|"warped"|"heisenberg"|"contractible"|
 *          "alexander"|"mobius", "dimension":n, "mode":"exact"|"double",
 *          "grading":"graded"|"isotropic"} */
int emg_model_create(const char* config_json, emg_model** out);
void emg_model_destroy(emg_model* model);
int emg_model_config(const emg_model* model, char** json_out);

/* Runs the axiom, gate-identity and distributivity suites.
 * params: {"seed":7, "samples":1000, "eps":["1/2","1/3","3/7"],
 *          "lambda":"1/2", "xfail":["self_distributivity"]}
 * Laws listed in xfail count as documented expected failures. */
int emg_check(const emg_model* model, const char* params_json, char** report_out);

/* Normal form and derivation trace of one term. */
int emg_term_normalize(const char* term_text, char** report_out);

/* identity_text: "lhs = rhs" in the term DSL.
 * params: {"trials":100, "seed":2, "trace":true} (all optional, may be NULL) */
int emg_prove(const char* identity_text, const char* params_json, char** report_out);

/* Proves the seven built-in gate identities. */
int emg_prove_builtin(const char* params_json, char** report_out);

/* request: {"op":"color"|"move"|"defect"|"encircle"|"sweep",
 *           "word":"s1+{1/2} ...", "strands":3, "input":[...points...],
 *           "word2":"...",                       (defect, sweep)
 *           "r3_at":0,                           (sweep: derive word2)
 *           "move":{"kind":"r2_cancel"|"r2_insert"|"r3_shift","at":0,
 *                   "pos":1,"sign":"+","scale":"1/2"},
 *           "encircle":{"x":<point>,"eps":"1/8",
 *                       "mode":"whole"|"per_crossing"},
 *           "k_min":1,"k_max":12}                (sweep schedule) */
int emg_braid_run(const emg_model* model, const char* request_json, char** report_out);

/* request: {"test":"conical"|"relative"|"gwd"|"a2"|"cone"|"norm"|"derivative",
 *           "seed":7, "samples":n, "k_min":1, "k_max":20,
 *           "x":<point>, "u":<point>, "lambda":"1/2", "lambdas":[...],
 *           "radius":1.0, "grid":50, "tolerance":1e-6, "threshold":0.9,
 *           "norm":"koranyi", "expect_definite":false, "probes":[...],
 *           "f":"square"|"identity"|"affine:<A>,<b>", "oracle":<point>} */
int emg_limits_run(const emg_model* model, const char* request_json, char** report_out);

/* (k, |eps|, value) rows from any report carrying a sweep. */
int emg_report_to_csv(const char* report_json, char** csv_out);

#ifdef __cplusplus
}
#endif

#endif /* EMERGENT_H */
