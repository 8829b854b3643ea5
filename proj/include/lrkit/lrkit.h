#ifndef LRKIT_H
#define LRKIT_H

/* C interface to lrkit.  Every call returns an lrk_status; on failure
 * lrk_last_error() describes the problem (thread-local, valid until the
 * next call on the same thread).  Results are JSON objects written to
 * *out and released with lrk_string_free.  When a check fails or a
 * search finds nothing the status is LRK_CHECK_FAILED and *out still
 * holds the report.
 *
 * Text arguments use the printed syntax: polynomials "x1^2 - 1/2",
 * enveloping elements "x1*d1 + 1", symbols "x1*s1^2", sections
 * "(x1, x2)".  Names resolve through the workspace: builtins, definitions
 * loaded from files, or inline JSON. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lrk_status {
    LRK_OK = 0,
    LRK_CHECK_FAILED = 1,
    LRK_PARSE_ERROR = 2,
    LRK_INVALID_ARGUMENT = 3,
    LRK_DIMENSION_MISMATCH = 4,
    LRK_PRECONDITION = 5,
    LRK_INTERNAL = 6
} lrk_status;

typedef struct lrk_workspace lrk_workspace;
typedef struct lrk_algebroid lrk_algebroid;
typedef struct lrk_presentation lrk_presentation;
typedef struct lrk_cochain lrk_cochain;
typedef struct lrk_connection lrk_connection;
typedef struct lrk_operator lrk_operator;

const char* lrk_last_error(void);
const char* lrk_status_name(lrk_status s);
void lrk_string_free(char* s);

/* Workspace */
lrk_status lrk_workspace_new(lrk_workspace** out);
void lrk_workspace_free(lrk_workspace* ws);
lrk_status lrk_workspace_load_file(lrk_workspace* ws, const char* path);
lrk_status lrk_workspace_load_json(lrk_workspace* ws, const char* json_text, const char* stem);
/* Checks every definition: algebroid axioms, Poisson axioms and
 * associativity of U for algebroids, the cocycle condition for cochains
 * that name their algebroid, connection shapes and operator orders. */
lrk_status lrk_workspace_check(const lrk_workspace* ws, size_t trials, uint64_t seed, char** out);

/* Algebroids */
lrk_status lrk_algebroid_get(const lrk_workspace* ws, const char* spec, lrk_algebroid** out);
void lrk_algebroid_free(lrk_algebroid* a);
size_t lrk_algebroid_rank(const lrk_algebroid* a);
size_t lrk_algebroid_nvars(const lrk_algebroid* a);
lrk_status lrk_algebroid_to_json(const lrk_algebroid* a, char** out);
lrk_status lrk_algebroid_equal(const lrk_algebroid* a, const lrk_algebroid* b, int* equal);
lrk_status lrk_check_axioms(const lrk_algebroid* a, char** out);
lrk_status lrk_log_member(const lrk_algebroid* a, const char* f, const char* derivation, char** out);

/* Cochains and connections; degree < 0 means "any" */
lrk_status lrk_cochain_get(const lrk_workspace* ws, const lrk_algebroid* a, const char* spec, int degree,
                           lrk_cochain** out);
void lrk_cochain_free(lrk_cochain* c);
lrk_status lrk_cochain_to_json(const lrk_cochain* c, char** out);
lrk_status lrk_connection_get(const lrk_workspace* ws, const lrk_algebroid* a, const char* spec,
                              lrk_connection** out);
void lrk_connection_free(lrk_connection* c);

lrk_status lrk_ce_differential(const lrk_algebroid* a, const lrk_connection* conn_or_null, const lrk_cochain* c,
                               char** out);
lrk_status lrk_is_cocycle(const lrk_algebroid* a, const lrk_cochain* c, char** out);
/* bound < 0 selects the default bound. */
lrk_status lrk_coboundary_solve(const lrk_algebroid* a, const lrk_cochain* omega1, const lrk_cochain* omega2,
                                int bound, char** out);
lrk_status lrk_cohomology_dim(const lrk_algebroid* a, size_t k, char** out);
lrk_status lrk_curvature(const lrk_algebroid* a, const lrk_connection* conn, char** out);
lrk_status lrk_curvature_type(const lrk_algebroid* a, const lrk_connection* conn, const lrk_cochain* omega,
                              char** out);

/* Enveloping algebras; twist may be NULL.  checked = 0 skips the cocycle
 * test so that non-associative presentations can be probed. */
lrk_status lrk_presentation_new(const lrk_algebroid* a, const lrk_cochain* twist_or_null, int checked,
                                lrk_presentation** out);
void lrk_presentation_free(lrk_presentation* p);
lrk_status lrk_normal_form(const lrk_presentation* p, const char* element, char** out);
lrk_status lrk_u_multiply(const lrk_presentation* p, const char* u, const char* v, char** out);
lrk_status lrk_u_commutator(const lrk_presentation* p, const char* u, const char* v, char** out);
lrk_status lrk_principal_symbol(const lrk_presentation* p, const char* element, char** out);
lrk_status lrk_symmetrize(const lrk_presentation* p, const char* symbol, char** out);
lrk_status lrk_associativity_probe(const lrk_presentation* p, size_t trials, uint64_t seed, unsigned max_degree,
                                   char** out);
lrk_status lrk_module_action(const lrk_presentation* p, const lrk_connection* conn, const char* element,
                             const char* section, char** out);
/* out_algebroid may be NULL. */
lrk_status lrk_induced_algebroid(const lrk_presentation* p, lrk_algebroid** out_algebroid, char** out);
lrk_status lrk_twist_isomorphism(const lrk_algebroid* a, const lrk_cochain* omega_from, const lrk_cochain* rho,
                                 const lrk_cochain* omega_to, size_t samples, uint64_t seed, char** out);

/* Symmetric algebra */
lrk_status lrk_poisson_bracket(const lrk_algebroid* a, const char* s1, const char* s2, char** out);
lrk_status lrk_poisson_check(const lrk_algebroid* a, size_t trials, uint64_t seed, char** out);

/* Differential operators on O^m over Q[x1..xn] */
lrk_status lrk_operator_get(const lrk_workspace* ws, const char* spec, size_t nvars, lrk_operator** out);
void lrk_operator_free(lrk_operator* t);
size_t lrk_operator_nvars_hint(const lrk_workspace* ws, const char* spec);
lrk_status lrk_operator_order(const lrk_operator* t, char** out);
lrk_status lrk_order_predicate(const lrk_operator* t, int n, char** out);
lrk_status lrk_operator_apply(const lrk_operator* t, const char* section, char** out);
lrk_status lrk_scalar_symbol(const lrk_operator* t, char** out);
lrk_status lrk_diff_qp_check(size_t m, size_t n, size_t trials, uint64_t seed, unsigned max_order, char** out);

#ifdef __cplusplus
}
#endif

#endif
