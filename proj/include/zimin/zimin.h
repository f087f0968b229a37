#ifndef ZIMIN_ZIMIN_H
#define ZIMIN_ZIMIN_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ZIMIN_API __declspec(dllexport)
#else
#define ZIMIN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum zimin_status {
  ZIMIN_OK = 0,
  ZIMIN_E_INVALID_ARGUMENT = 1,
  ZIMIN_E_OUT_OF_RANGE = 2,
  ZIMIN_E_EMPTY_WORD = 3,
  ZIMIN_E_BUDGET = 4,
  ZIMIN_E_REGION = 5,
  ZIMIN_E_SINGULAR = 6,
  ZIMIN_E_NO_CONVERGENCE = 7,
  ZIMIN_E_DISAGREEMENT = 8,
  ZIMIN_E_ASSERTION = 9,
  ZIMIN_E_PARSE = 10,
  ZIMIN_E_HYPOTHESIS = 11,
  ZIMIN_E_IO = 12,
  ZIMIN_E_UNKNOWN_OP = 13,
  ZIMIN_E_INTERNAL = 14
} zimin_status;

typedef struct zimin_context zimin_context;
typedef struct zimin_result zimin_result;

ZIMIN_API const char* zimin_version(void);
ZIMIN_API const char* zimin_status_name(zimin_status status);

ZIMIN_API zimin_status zimin_context_new(zimin_context** out);
ZIMIN_API void zimin_context_free(zimin_context* ctx);
/* 0 restores the default (ZIMIN_THREADS or hardware concurrency). */
ZIMIN_API zimin_status zimin_context_set_threads(zimin_context* ctx, unsigned threads);
ZIMIN_API zimin_status zimin_context_set_node_budget(zimin_context* ctx, uint64_t nodes);
ZIMIN_API zimin_status zimin_context_set_enum_budget(zimin_context* ctx, uint64_t words);
ZIMIN_API zimin_status zimin_context_set_alphabet(zimin_context* ctx, const char* alphabet);
/* Message of the last failed call on this context; empty when none. */
ZIMIN_API const char* zimin_context_last_error(const zimin_context* ctx);

/* Runs operation `op` with a JSON object of parameters. On success *out owns a JSON document. */
ZIMIN_API zimin_status zimin_call(zimin_context* ctx, const char* op, const char* params_json, zimin_result** out);
/* JSON array of operation names accepted by zimin_call. */
ZIMIN_API const char* zimin_operations(void);

ZIMIN_API const char* zimin_result_json(const zimin_result* result);
/* Nonzero when a search stopped at its budget and the result is partial. */
ZIMIN_API int zimin_result_partial(const zimin_result* result);
ZIMIN_API void zimin_result_free(zimin_result* result);

ZIMIN_API zimin_status zimin_encounters(zimin_context* ctx, const char* pattern, const char* word, int* out);
ZIMIN_API zimin_status zimin_is_instance(zimin_context* ctx, const char* pattern, const char* word, int* out);
/* Largest n such that the word is a Z_n-instance; 0 for the empty word. */
ZIMIN_API zimin_status zimin_zimin_order(zimin_context* ctx, const char* word, unsigned* out);
/* *out = f(n,q); ZIMIN_E_BUDGET when the search stops early (then *out is a lower bound). */
ZIMIN_API zimin_status zimin_f_value(zimin_context* ctx, unsigned n, unsigned q, uint64_t* out);

#ifdef __cplusplus
}
#endif

#endif
