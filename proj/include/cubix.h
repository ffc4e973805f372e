/* cubix - exact cubical homotopy kernel, C interface.
 *
 * Every function returns a cubix_status; results come back through out
 * parameters. On failure the out parameters are untouched and
 * cubix_last_error() describes the problem (per thread). Strings returned
 * through char** are heap-allocated; release them with cubix_string_free.
 * Objects are opaque handles released with cubix_object_free.
 */

#ifndef CUBIX_H
#define CUBIX_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cubix_status {
    CUBIX_OK = 0,
    CUBIX_ERR_PARSE = 2,
    CUBIX_ERR_SEMANTIC = 3,
    CUBIX_ERR_GUARD = 4,
    CUBIX_ERR_IO = 5,
} cubix_status;

typedef struct cubix_object cubix_object;

const char* cubix_last_error(void);
void cubix_object_free(cubix_object* obj);
void cubix_string_free(char* s);

/* Size guards for enumerative operations (process-wide). */
cubix_status cubix_set_limits(int max_cube_dim, uint64_t max_candidates);

/* Words: normalize token syntax ("d1@1 . d0@0", identity = "id") against a
 * source dimension (-1 = smallest valid). Returns the normal form, the
 * function table (one "vertex -> vertex" line per source vertex), and the
 * dimensions. flavor is 'r' or 'c'. */
cubix_status cubix_word_normalize(char flavor, const char* word, int src_dim, char** out_normal,
                                  char** out_table, int* out_src_dim, int* out_tgt_dim);
cubix_status cubix_homset_count(char flavor, int m, int n, uint64_t* out);

/* Builders. Face indices are 0-based. */
cubix_status cubix_build_box(char flavor, int n, int trunc, cubix_object** out);
cubix_status cubix_build_boundary(char flavor, int n, int trunc, cubix_object** out);
cubix_status cubix_build_cap(char flavor, int n, int eps, int i, int trunc, cubix_object** out);
cubix_status cubix_build_simplex(int n, int trunc, cubix_object** out);
cubix_status cubix_build_boundary_simplex(int n, int trunc, cubix_object** out);
cubix_status cubix_build_horn(int n, int k, int trunc, cubix_object** out);
cubix_status cubix_build_nerve_of_chain(int n, int trunc, cubix_object** out);
cubix_status cubix_build_w_category(int n, int trunc, cubix_object** out);
cubix_status cubix_build_discrete_category(const char* name, char flavor, int trunc,
                                           cubix_object** out); /* "[1]","[2]","[3]","square" */

/* Map builders (inputs for pushout): the Yoneda map of a word between
 * representables, and the boundary / cap inclusions. */
cubix_status cubix_build_word_map(char flavor, const char* word, int src_dim, int trunc,
                                  cubix_object** out);
cubix_status cubix_build_boundary_map(char flavor, int n, int trunc, cubix_object** out);
cubix_status cubix_build_cap_map(char flavor, int n, int eps, int i, int trunc,
                                 cubix_object** out);

/* Serialization: the versioned JSON formats. */
cubix_status cubix_object_load(const char* path, cubix_object** out);
cubix_status cubix_object_save(const cubix_object* obj, const char* path);
cubix_status cubix_object_to_json(const cubix_object* obj, char** out);
cubix_status cubix_object_from_json(const char* text, cubix_object** out);
cubix_status cubix_object_kind(const cubix_object* obj, char** out);
cubix_status cubix_object_summary(const cubix_object* obj, int as_json, char** out);

/* Operations. */
cubix_status cubix_tensor(const cubix_object* a, const cubix_object* b, cubix_object** out);
cubix_status cubix_pushout(const cubix_object* f_map, const cubix_object* g_map,
                           cubix_object** out);
cubix_status cubix_iso(const cubix_object* a, const cubix_object* b, int* out_isomorphic);
cubix_status cubix_triangulate(const cubix_object* cubical, cubix_object** out);
/* ring: "Z" or "Fp" with p prime. */
cubix_status cubix_chain_realize(const cubix_object* cubical, const char* ring, int p,
                                 cubix_object** out);
/* Homology of a chain complex, or of a cubical set via realization over Z. */
cubix_status cubix_homology(const cubix_object* obj, int as_json, char** out);
cubix_status cubix_cap_fill(const cubix_object* cubical, int n, int eps, int i, uint64_t* out_total,
                            uint64_t* out_unfillable);
cubix_status cubix_horn_fill(const cubix_object* simplicial, int n, int k, uint64_t* out_total,
                             uint64_t* out_unfillable);
/* Homotopy coherent nerve of a cubical category object. */
cubix_status cubix_nerve(const cubix_object* category, int k_max, cubix_object** out);
/* dg nerve of a builtin dg category ("arrow" or "trivial") over F_p. */
cubix_status cubix_nerve_dg(const char* name, int p, int k_max, cubix_object** out);

/* Invariant suites; the report has one "ok <name>" / "FAIL <name>" line per
 * check. out_failures receives the failure count. */
cubix_status cubix_selftest(int quick, char** out_report, int* out_failures);

#ifdef __cplusplus
}
#endif

#endif /* CUBIX_H */
