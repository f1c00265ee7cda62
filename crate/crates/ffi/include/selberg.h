#ifndef SELBERG_H
#define SELBERG_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum SelbergStatus {
  SELBERG_STATUS_OK = 0,
  SELBERG_STATUS_NULL_POINTER = 1,
  SELBERG_STATUS_DIMENSION_MISMATCH = 2,
  SELBERG_STATUS_INVALID_CHANNEL = 3,
  SELBERG_STATUS_INVALID_PARAMETER = 4,
  SELBERG_STATUS_PRECONDITION = 5,
  SELBERG_STATUS_POLE_PROXIMITY = 6,
  SELBERG_STATUS_NON_GENERIC = 7,
  SELBERG_STATUS_NON_CONVERGENCE = 8,
  SELBERG_STATUS_UNSUPPORTED = 9,
  SELBERG_STATUS_INPUT = 10,
  SELBERG_STATUS_PANIC = 11,
} SelbergStatus;

// Opaque channel handle.
typedef struct SelbergChannel SelbergChannel;

// Opaque parameter handle: the pairings `(λ, α_i)` and `κ`.
typedef struct SelbergParamSet SelbergParamSet;

typedef struct SelbergComplex {
  double re;
  double im;
} SelbergComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Static description of a status code. Never null.
const char *selberg_status_name(enum SelbergStatus status);

// Copies the last error message of this thread into `buf` (NUL-terminated,
// truncated to `len − 1` bytes) and returns the full message length.
//
// # Safety
// `buf` must be null or point to `len` writable bytes.
size_t selberg_last_error(char *buf, size_t len);

// Creates a channel from `len` indices `i_j ∈ [1, n+1]`.
//
// # Safety
// `indices` must point to `len` values (or be null when `len == 0`);
// the out pointer must be valid.
enum SelbergStatus selberg_channel_new(const size_t *indices,
                                       size_t len,
                                       size_t n,
                                       struct SelbergChannel **out_channel);

// # Safety
// `channel` must be null or come from [`selberg_channel_new`] and not be freed twice.
void selberg_channel_free(struct SelbergChannel *channel);

// Creates a parameter set from the `n` pairings `(λ, α_i)` and `κ`.
//
// # Safety
// `pairings` must point to `len` values (or be null when `len == 0`);
// the out pointer must be valid.
enum SelbergStatus selberg_params_new(const double *pairings,
                                      size_t len,
                                      double kappa,
                                      struct SelbergParamSet **out_params);

// # Safety
// `params` must be null or come from [`selberg_params_new`] and not be freed twice.
void selberg_params_free(struct SelbergParamSet *params);

// Closed-form value of the channel integral.
//
// # Safety
// All pointers must be valid handles or out locations.
enum SelbergStatus selberg_generalized(const struct SelbergChannel *channel,
                                       const struct SelbergParamSet *params,
                                       struct SelbergComplex *out_value);

// Leading exponent `μ_N` of an all-equal channel.
//
// # Safety
// All pointers must be valid handles or out locations.
enum SelbergStatus selberg_monomial_exponent(const struct SelbergChannel *channel,
                                             const struct SelbergParamSet *params,
                                             struct SelbergComplex *out_value);

// Loop Beta integral `(1 − e^{2πia}) B(a, b)`.
//
// # Safety
// `out_value` must be a valid pointer.
enum SelbergStatus selberg_contour_beta(struct SelbergComplex a,
                                        struct SelbergComplex b,
                                        struct SelbergComplex *out_value);

// Classical Selberg integral over the ordered simplex `0 < t₁ < … < t_m < 1`.
//
// # Safety
// `out_value` must be a valid pointer.
enum SelbergStatus selberg_classical(double a,
                                     double b,
                                     double c,
                                     size_t m,
                                     struct SelbergComplex *out_value);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SELBERG_H */
