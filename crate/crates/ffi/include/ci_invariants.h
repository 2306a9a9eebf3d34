#ifndef CI_INVARIANTS_H
#define CI_INVARIANTS_H

/* Generated by cbindgen from crates/ffi; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CiEquivalenceLevel {
  CI_EQUIVALENCE_LEVEL_DISTINCT_INVARIANTS = 0,
  CI_EQUIVALENCE_LEVEL_SAME_INVARIANTS = 1,
  CI_EQUIVALENCE_LEVEL_SAME_INVARIANTS_PLUS_DIVISIBILITY = 2,
} CiEquivalenceLevel;

typedef enum CiExponentRule {
  CI_EXPONENT_RULE_FLOOR = 0,
  CI_EXPONENT_RULE_CEILING = 1,
} CiExponentRule;

/**
 * Result codes; values 2..=4 match the command-line exit codes.
 */
typedef enum CiStatus {
  CI_STATUS_OK = 0,
  CI_STATUS_NULL_POINTER = 1,
  CI_STATUS_INVALID_INPUT = 2,
  CI_STATUS_EXCLUDED = 3,
  CI_STATUS_BUDGET = 4,
  CI_STATUS_INTERNAL = 5,
} CiStatus;

/**
 * Opaque multidegree handle.
 */
typedef struct CiMultidegree CiMultidegree;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Validates `len` degrees and creates a handle in `*out`.
 *
 * # Safety
 * `degrees` must point to `len` readable values; `out` must be writable.
 */
enum CiStatus ci_multidegree_new(const int64_t *degrees, size_t len, struct CiMultidegree **out);

/**
 * # Safety
 * `md` must be null or a handle from this library not yet freed.
 */
void ci_multidegree_free(struct CiMultidegree *md);

/**
 * Number of degrees `r`; zero for a null handle.
 *
 * # Safety
 * `md` must be null or a live handle.
 */
size_t ci_multidegree_len(const struct CiMultidegree *md);

/**
 * Copies the canonical (non-increasing) degrees into `buf`, which must hold
 * `ci_multidegree_len(md)` entries.
 *
 * # Safety
 * `buf` must be writable for `cap` values.
 */
enum CiStatus ci_multidegree_degrees(const struct CiMultidegree *md, uint64_t *buf, size_t cap);

/**
 * `lambda` copies of `a` followed by `mu` copies of `b`.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum CiStatus ci_compose(const struct CiMultidegree *a,
                         const struct CiMultidegree *b,
                         uint32_t lambda,
                         uint32_t mu,
                         struct CiMultidegree **out);

/**
 * Total degree as a decimal string.
 *
 * # Safety
 * `md` must be live; `out` must be writable.
 */
enum CiStatus ci_total_degree(const struct CiMultidegree *md, char **out);

/**
 * `s_i` as a decimal string.
 *
 * # Safety
 * `md` must be live; `out` must be writable.
 */
enum CiStatus ci_power_sum(const struct CiMultidegree *md, uint32_t i, char **out);

/**
 * `{"n":..,"d":"..","s":[..]}`.
 *
 * # Safety
 * `md` must be live; `out` must be writable.
 */
enum CiStatus ci_invariants_json(const struct CiMultidegree *md, uint32_t n, char **out);

/**
 * Moduli dimension as a decimal string.
 *
 * # Safety
 * `md` must be live; `out` must be writable.
 */
enum CiStatus ci_moduli_dimension(const struct CiMultidegree *md, uint32_t n, char **out);

/**
 * Moduli report as JSON; `breakdown` adds the per-subset-size corrections.
 *
 * # Safety
 * `md` must be live; `out` must be writable.
 */
enum CiStatus ci_moduli_report_json(const struct CiMultidegree *md,
                                    uint32_t n,
                                    bool breakdown,
                                    char **out);

/**
 * `m(d_{lambda+1,s-lambda-1}) - m(d_{lambda,s-lambda})` report as JSON.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum CiStatus ci_difference_json(const struct CiMultidegree *a,
                                 const struct CiMultidegree *b,
                                 uint32_t n,
                                 uint32_t lambda,
                                 uint32_t s,
                                 char **out);

/**
 * Scan over `lambda = 0..=s` as JSON.
 *
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum CiStatus ci_scan_json(const struct CiMultidegree *a,
                           const struct CiMultidegree *b,
                           uint32_t n,
                           uint32_t s,
                           char **out);

/**
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum CiStatus ci_same_homeomorphism_data(const struct CiMultidegree *a,
                                         const struct CiMultidegree *b,
                                         uint32_t n,
                                         bool *out);

/**
 * Writes the verdict level to `level` and, when `json` is non-null, the full
 * verdict as JSON to `*json`.
 *
 * # Safety
 * Handles must be live; `level` must be writable; `json` may be null.
 */
enum CiStatus ci_classify(const struct CiMultidegree *a,
                          const struct CiMultidegree *b,
                          uint32_t n,
                          enum CiExponentRule rule,
                          enum CiEquivalenceLevel *level,
                          char **json);

/**
 * # Safety
 * Handles must be live; `out` must be writable.
 */
enum CiStatus ci_verify_pair(const struct CiMultidegree *a,
                             const struct CiMultidegree *b,
                             uint32_t k,
                             bool *out);

/**
 * Search hits as JSON lines (empty string when none).
 *
 * # Safety
 * `out` must be writable.
 */
enum CiStatus ci_find_pairs_json(size_t r,
                                 uint32_t k,
                                 uint64_t lo,
                                 uint64_t hi,
                                 uint64_t budget,
                                 char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library, freed once.
 */
void ci_string_free(char *s);

/**
 * Message for the last failed call on this thread; empty if none. Valid
 * until the next failing call on the same thread.
 */
const char *ci_last_error(void);

/**
 * Library version as a static string.
 */
const char *ci_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CI_INVARIANTS_H */
