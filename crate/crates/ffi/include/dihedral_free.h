#ifndef DIHEDRAL_FREE_H
#define DIHEDRAL_FREE_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of an FFI call.
 */
typedef enum DhStatus {
  DH_STATUS_OK = 0,
  DH_STATUS_NULL_POINTER = 1,
  DH_STATUS_INVALID_ARGUMENT = 2,
  DH_STATUS_PARSE_ERROR = 3,
  DH_STATUS_INVALID_UTF8 = 4,
  DH_STATUS_CAP_EXCEEDED = 5,
  DH_STATUS_BUDGET_EXCEEDED = 6,
  DH_STATUS_INTERNAL = 7,
} DhStatus;

/**
 * Certificate for an embedded `D_k`. Opaque.
 */
typedef struct DhCorollary DhCorollary;

/**
 * Certificate for the order-`8n` action. Opaque.
 */
typedef struct DhTheorem DhTheorem;

/**
 * Properties of one group element on `A`.
 */
typedef struct DhElementReport {
  uint64_t order;
  bool is_identity;
  bool is_translation;
  bool has_fixed_point;
} DhElementReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next call into this library from the same thread.
 */
const char *dh_last_error_message(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed already.
 */
void dh_string_free(char *s);

/**
 * Verifies the order-`8n` action and stores a new handle in `*out`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage.
 */
enum DhStatus dh_theorem_verify(uint32_t n, struct DhTheorem **out);

/**
 * # Safety
 * `h` must be null or a handle from [`dh_theorem_verify`] not yet freed.
 */
void dh_theorem_free(struct DhTheorem *h);

/**
 * Whether every check passed. False for a null handle.
 *
 * # Safety
 * `h` must be null or a live handle.
 */
bool dh_theorem_verified(const struct DhTheorem *h);

/**
 * Size of the generated group, or 0 if it could not be computed.
 *
 * # Safety
 * `h` must be null or a live handle.
 */
uint64_t dh_theorem_group_order(const struct DhTheorem *h);

/**
 * Complex dimension of the torus.
 *
 * # Safety
 * `h` must be null or a live handle.
 */
uint64_t dh_theorem_dimension(const struct DhTheorem *h);

/**
 * Whether step `step` (1 to 5) passed. False for any other index.
 *
 * # Safety
 * `h` must be null or a live handle.
 */
bool dh_theorem_step_passed(const struct DhTheorem *h, uint32_t step);

/**
 * Serializes the certificate into a new string stored in `*out`.
 *
 * # Safety
 * `h` must be a live handle; `out` must be valid for writes.
 */
enum DhStatus dh_theorem_to_json(const struct DhTheorem *h, char **out);

/**
 * Verifies the embedded action of `D_k` and stores a new handle in `*out`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage.
 */
enum DhStatus dh_corollary_verify(uint32_t k, struct DhCorollary **out);

/**
 * # Safety
 * `h` must be null or a handle from [`dh_corollary_verify`] not yet freed.
 */
void dh_corollary_free(struct DhCorollary *h);

/**
 * # Safety
 * `h` must be null or a live handle.
 */
bool dh_corollary_verified(const struct DhCorollary *h);

/**
 * Order of the embedded subgroup, or 0 if it could not be computed.
 *
 * # Safety
 * `h` must be null or a live handle.
 */
uint64_t dh_corollary_group_order(const struct DhCorollary *h);

/**
 * # Safety
 * `h` must be null or a live handle.
 */
uint64_t dh_corollary_dimension(const struct DhCorollary *h);

/**
 * # Safety
 * `h` must be a live handle; `out` must be valid for writes.
 */
enum DhStatus dh_corollary_to_json(const struct DhCorollary *h, char **out);

/**
 * Evaluates `word` (e.g. `"r^2 s"`, applied right to left) in the order-`8n`
 * action on `A` and fills `*out`.
 *
 * # Safety
 * `word` must be a NUL-terminated string; `out` must be valid for writes.
 */
enum DhStatus dh_element_report(uint32_t n, const char *word, struct DhElementReport *out);

/**
 * Brute-force search for a fixed point of `word` among points of `A` with
 * coordinates in `(1/denominator)Z`. Sets `*found`.
 *
 * # Safety
 * `word` must be a NUL-terminated string; `found` must be valid for writes.
 */
enum DhStatus dh_element_oracle(uint32_t n,
                                const char *word,
                                uint32_t denominator,
                                uint64_t budget,
                                bool *found);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DIHEDRAL_FREE_H */
