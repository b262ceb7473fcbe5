#ifndef FAIRRANK_H
#define FAIRRANK_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define FR_BACKEND_DP 0

#define FR_BACKEND_WALK 1

typedef enum FrStatus {
  FR_OK = 0,
  FR_NULL_POINTER = 1,
  FR_INVALID_ARGUMENT = 2,
  FR_INFEASIBLE = 3,
  FR_DELTA_TOO_SMALL = 4,
  FR_REJECTION_BUDGET = 5,
  FR_BUFFER_TOO_SMALL = 6,
  FR_PANIC = 7,
  FR_INTERNAL = 8,
} FrStatus;

/**
 * Opaque sampler handle.
 */
typedef struct FrSampler FrSampler;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread; empty after success-only
 * use. Valid until the next failing call on the same thread.
 */
const char *fr_last_error(void);

/**
 * Builds a sampler for bounds `lower[0..ell]`, `upper[0..ell]` summing to `k`.
 *
 * # Safety
 * `lower` and `upper` must point to `ell` values; `out` must be writable.
 */
enum FrStatus fr_sampler_new(size_t k,
                             size_t ell,
                             const size_t *lower,
                             const size_t *upper,
                             uint32_t backend,
                             double tv_delta,
                             uint64_t seed,
                             struct FrSampler **out);

/**
 * # Safety
 * `sampler` must come from [`fr_sampler_new`] and not be freed twice.
 */
void fr_sampler_free(struct FrSampler *sampler);

/**
 * Writes one group-fair representation (`ell` counts) to `out`.
 *
 * # Safety
 * `sampler` must be a live handle and `out` must hold `len` values.
 */
enum FrStatus fr_sampler_sample_representation(struct FrSampler *sampler, size_t *out, size_t len);

/**
 * Writes the group of each of the `k` ranks to `out`.
 *
 * # Safety
 * `sampler` must be a live handle and `out` must hold `len` values.
 */
enum FrStatus fr_sampler_sample_assignment(struct FrSampler *sampler, size_t *out, size_t len);

/**
 * Number of group-fair representations as a NUL-terminated decimal
 * string. `required` (if not null) receives the buffer size needed,
 * including the terminator.
 *
 * # Safety
 * Bounds must point to `ell` values and `buf` to `buf_len` bytes.
 */
enum FrStatus fr_count_fair_representations(size_t k,
                                            size_t ell,
                                            const size_t *lower,
                                            const size_t *upper,
                                            char *buf,
                                            size_t buf_len,
                                            size_t *required);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FAIRRANK_H */
