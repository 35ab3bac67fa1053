#ifndef PFORMS_H
#define PFORMS_H

/*
 * C interface to the pforms library. Every call returns a pforms_status; on
 * failure pforms_last_error() describes the problem for the calling thread.
 * Strings handed out by the library are released with pforms_string_free.
 */

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define PFORMS_API __declspec(dllexport)
#else
#define PFORMS_API __attribute__((visibility("default")))
#endif

typedef struct pforms_context pforms_context;

typedef enum pforms_status {
  PFORMS_OK = 0,
  PFORMS_INVALID_ARGUMENT = 1,
  PFORMS_CONSISTENCY_ERROR = 2,
  PFORMS_INTERNAL_ERROR = 3
} pforms_status;

PFORMS_API const char* pforms_version(void);

/* Message of the last failed call on this thread, or "" after a success. */
PFORMS_API const char* pforms_last_error(void);

/*
 * config_json: {"family": "so", "p": 3, "q": 1} or {"family": "sl", "n": 3},
 * with an optional "sigma": [simple root indices].
 */
PFORMS_API pforms_status pforms_context_create(const char* config_json, pforms_context** out);
PFORMS_API void pforms_context_destroy(pforms_context* ctx);

/* Algebra, roots, grading, quotient dimensions and invariant-form dimensions. */
PFORMS_API pforms_status pforms_inspect(const pforms_context* ctx, char** out_json);

/* The serialized kernel phi_k. */
PFORMS_API pforms_status pforms_kernel(const pforms_context* ctx, int k, char** out_json);

/* Verification report of phi_k; *all_ok (may be NULL) is 1 when every check passes. */
PFORMS_API pforms_status pforms_verify(const pforms_context* ctx, int k, char** out_json, int* all_ok);

/*
 * Numeric Poisson transform on real hyperbolic space. options_json fields, all optional
 * except "n": "n", "lambda", "nodes" (one count per angle), "fd_step", "probe" (spatial
 * coordinates), "density" (built-in name or array of node values), "partitions".
 */
PFORMS_API pforms_status pforms_transform(const char* options_json, char** out_json);

PFORMS_API void pforms_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
