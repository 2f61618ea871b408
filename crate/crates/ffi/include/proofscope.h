/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#ifndef PROOFSCOPE_H
#define PROOFSCOPE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes of fallible calls.
typedef enum PsStatus {
  PS_STATUS_OK = 0,
  PS_STATUS_NULL_POINTER = 1,
  PS_STATUS_INVALID_UTF8 = 2,
  PS_STATUS_PARSE_ERROR = 3,
  PS_STATUS_INVALID_CONFIG = 4,
  PS_STATUS_NO_CLAUSES = 5,
  PS_STATUS_INDEX_OUT_OF_RANGE = 6,
  PS_STATUS_INTERNAL = 7,
} PsStatus;

// How a search ended.
typedef enum PsOutcome {
  PS_OUTCOME_SATURATED = 0,
  PS_OUTCOME_LIMIT_REACHED = 1,
  PS_OUTCOME_PROOFS_EXHAUSTED_BY_MAX = 2,
} PsOutcome;

// A parsed and clausified problem.
typedef struct PsProblem PsProblem;

// The outcome of one search with its analysis.
typedef struct PsResult PsResult;

// Search limits; 0 means unlimited.
typedef struct PsSearchConfig {
  uint64_t max_proofs;
  uint64_t max_weight;
  uint64_t max_given;
  uint64_t max_kept_clauses;
  // Nonzero: every input clause is in the set of support.
  int32_t sos_all_input;
  // Nonzero: one proof per identity class.
  int32_t dedup_proofs;
} PsSearchConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The default limits of the command line tool.
struct PsSearchConfig ps_search_config_default(void);

// Static version string.
const char *ps_version(void);

// Message of the last failed call on this thread. Valid until the next
// failing call on the same thread; never null.
const char *ps_last_error_message(void);

// Parses and clausifies a self-contained problem (no `include`).
//
// # Safety
// `source` must be a nul-terminated string and `out` a writable pointer.
enum PsStatus ps_problem_parse(const char *source, struct PsProblem **out);

// Number of clauses after clausification; 0 for a null handle.
//
// # Safety
// `problem` must be null or a live handle from [`ps_problem_parse`].
size_t ps_problem_clause_count(const struct PsProblem *problem);

// # Safety
// `problem` must be null or a handle from [`ps_problem_parse`] not yet freed.
void ps_problem_free(struct PsProblem *problem);

// Saturates the problem, collecting refutations up to the configured limits.
//
// # Safety
// `problem` must be a live handle, `config` null (defaults) or readable,
// and `out` writable.
enum PsStatus ps_enumerate(const struct PsProblem *problem,
                           const struct PsSearchConfig *config,
                           struct PsResult **out);

// # Safety
// `result` must be a live handle from [`ps_enumerate`].
enum PsOutcome ps_result_outcome(const struct PsResult *result);

// Number of distinct refutations; 0 for a null handle.
//
// # Safety
// `result` must be null or a live handle from [`ps_enumerate`].
size_t ps_result_proof_count(const struct PsResult *result);

// Node count of proof `index` (0-based), inputs and empty clause included.
//
// # Safety
// `result` must be a live handle and `length` writable.
enum PsStatus ps_result_proof_length(const struct PsResult *result, size_t index, size_t *length);

// The JSON report. Release with [`ps_string_free`]; null for a null handle.
//
// # Safety
// `result` must be null or a live handle from [`ps_enumerate`].
char *ps_result_report_json(const struct PsResult *result);

// The derivation log, one record per line. Release with [`ps_string_free`].
//
// # Safety
// `result` must be null or a live handle from [`ps_enumerate`].
char *ps_result_log(const struct PsResult *result);

// # Safety
// `result` must be null or a handle from [`ps_enumerate`] not yet freed.
void ps_result_free(struct PsResult *result);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void ps_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PROOFSCOPE_H */
