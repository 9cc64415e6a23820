#ifndef HWSG_H
#define HWSG_H

#pragma once

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HwsgStatus {
  HWSG_STATUS_OK = 0,
  HWSG_STATUS_NULL_POINTER = 1,
  HWSG_STATUS_BUFFER_TOO_SMALL = 2,
  HWSG_STATUS_EMPTY_GENERATORS = 3,
  HWSG_STATUS_NON_POSITIVE_GENERATOR = 4,
  HWSG_STATUS_NOT_COPRIME = 5,
  HWSG_STATUS_TOO_LARGE = 6,
  HWSG_STATUS_NOT_A_GAP = 7,
  HWSG_STATUS_MODULUS_NOT_IN_SEMIGROUP = 8,
  HWSG_STATUS_AMBIENT_MISMATCH = 9,
  HWSG_STATUS_HYPOTHESIS_VIOLATED = 10,
  HWSG_STATUS_BOUND_INSUFFICIENT = 11,
  HWSG_STATUS_INVALID_ARGUMENT = 12,
  HWSG_STATUS_INTERNAL = 13,
  HWSG_STATUS_PANIC = 14,
} HwsgStatus;

typedef enum HwsgVerdict {
  HWSG_VERDICT_PRINCIPAL = 0,
  HWSG_VERDICT_HW = 1,
  HWSG_VERDICT_NOT_HW = 2,
} HwsgVerdict;

// Opaque relative ideal.
typedef struct HwsgIdeal HwsgIdeal;

// Opaque numerical semigroup.
typedef struct HwsgSemigroup HwsgSemigroup;

// Outcome of a Huneke-Wiegand check.
typedef struct HwsgHwResult {
  enum HwsgVerdict verdict;
  // Set when `verdict` is `HWSG_VERDICT_HW`.
  bool has_witness;
  int64_t witness_element;
  uint64_t checked_partitions;
} HwsgHwResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failure on this thread, or null. The pointer stays
// valid until the next failing call on the same thread.
const char *hwsg_last_error_message(void);

// Builds the semigroup generated by `gens[0..len]`.
//
// # Safety
// `gens` must point to `len` readable values and `out` must be writable.
enum HwsgStatus hwsg_semigroup_new(const int64_t *gens, size_t len, struct HwsgSemigroup **out);

// # Safety
// `s` must come from `hwsg_semigroup_new` and not have been freed. Null is ignored.
void hwsg_semigroup_free(struct HwsgSemigroup *s);

// # Safety
// `s` must be a live handle and `out` writable.
enum HwsgStatus hwsg_semigroup_frobenius(const struct HwsgSemigroup *s, int64_t *out);

// # Safety
// `s` must be a live handle and `out` writable.
enum HwsgStatus hwsg_semigroup_genus(const struct HwsgSemigroup *s, uint64_t *out);

// # Safety
// `s` must be a live handle and `out` writable.
enum HwsgStatus hwsg_semigroup_is_symmetric(const struct HwsgSemigroup *s, bool *out);

// # Safety
// `s` must be a live handle and `out` writable.
enum HwsgStatus hwsg_semigroup_contains(const struct HwsgSemigroup *s, int64_t x, bool *out);

// Minimal generators, increasing.
//
// # Safety
// `s` must be a live handle, `buf` must hold `cap` values, `len` writable.
enum HwsgStatus hwsg_semigroup_generators(const struct HwsgSemigroup *s,
                                          int64_t *buf,
                                          size_t cap,
                                          size_t *len);

// Apéry set with respect to `z`, increasing.
//
// # Safety
// As for `hwsg_semigroup_generators`.
enum HwsgStatus hwsg_semigroup_apery(const struct HwsgSemigroup *s,
                                     int64_t z,
                                     int64_t *buf,
                                     size_t cap,
                                     size_t *len);

// JSON summary of the semigroup; release it with `hwsg_string_free`.
//
// # Safety
// `s` must be a live handle and `out` writable.
enum HwsgStatus hwsg_semigroup_to_json(const struct HwsgSemigroup *s, char **out);

// # Safety
// `text` must come from this library, or be null.
void hwsg_string_free(char *text);

// Fails with `HWSG_STATUS_NOT_A_GAP` unless `step` is a positive gap.
//
// # Safety
// `s` must be a live handle and `out` writable.
enum HwsgStatus hwsg_two_generated(const struct HwsgSemigroup *s,
                                   int64_t step,
                                   struct HwsgHwResult *out);

// Smallest `x <= bound` with `(x, x+step, x+2 step)` irreducible. A negative
// `bound` selects the default bound.
//
// # Safety
// `s` must be a live handle; `found` and `x` writable.
enum HwsgStatus hwsg_find_irreducible(const struct HwsgSemigroup *s,
                                      int64_t step,
                                      int64_t bound,
                                      bool *found,
                                      int64_t *x);

// # Safety
// `s` must be a live handle; `is_free` and `is_ci` writable.
enum HwsgStatus hwsg_classify(const struct HwsgSemigroup *s, bool *is_free, bool *is_ci);

// The ideal generated by `gens[0..len]` over `s`.
//
// # Safety
// `s` must be a live handle, `gens` readable for `len` values, `out` writable.
enum HwsgStatus hwsg_ideal_new(const struct HwsgSemigroup *s,
                               const int64_t *gens,
                               size_t len,
                               struct HwsgIdeal **out);

// # Safety
// `a` must come from this library and not have been freed. Null is ignored.
void hwsg_ideal_free(struct HwsgIdeal *a);

// # Safety
// As for `hwsg_semigroup_generators`.
enum HwsgStatus hwsg_ideal_generators(const struct HwsgIdeal *a,
                                      int64_t *buf,
                                      size_t cap,
                                      size_t *len);

// The dual `S - A`, as a new handle.
//
// # Safety
// `a` must be a live handle and `out` writable.
enum HwsgStatus hwsg_ideal_dual(const struct HwsgIdeal *a, struct HwsgIdeal **out);

// # Safety
// `a` must be a live handle and `out` writable.
enum HwsgStatus hwsg_ideal_check_hw(const struct HwsgIdeal *a, struct HwsgHwResult *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HWSG_H */
