#ifndef KOHN_LENS_H
#define KOHN_LENS_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum KohnStatus {
  KOHN_STATUS_OK = 0,
  KOHN_STATUS_NULL_POINTER = 1,
  KOHN_STATUS_INVALID_ARGUMENT = 2,
  KOHN_STATUS_PARSE = 3,
  KOHN_STATUS_RESOURCE_LIMIT = 4,
  KOHN_STATUS_MISMATCHED_SPACES = 5,
  KOHN_STATUS_UNSUPPORTED_DIMENSION = 6,
  KOHN_STATUS_DOMAIN_VIOLATION = 7,
  KOHN_STATUS_NON_CONVERGENCE = 8,
  KOHN_STATUS_BUFFER_TOO_SMALL = 9,
  KOHN_STATUS_PANIC = 10,
} KohnStatus;

// Opaque lens space handle.
typedef struct KohnLensSpace KohnLensSpace;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Builds `L(k; weights[0], ..., weights[n-1])`.
//
// # Safety
// `weights` must point to `n` readable values; `out` must be writable.
enum KohnStatus kohn_lens_new(int64_t k,
                              const int64_t *weights,
                              size_t n,
                              struct KohnLensSpace **out);

// Parses `"k:l1,l2,..."`.
//
// # Safety
// `spec` must be a NUL-terminated string; `out` must be writable.
enum KohnStatus kohn_lens_parse(const char *spec, struct KohnLensSpace **out);

// # Safety
// `lens` must come from this library and not be freed twice. Null is ignored.
void kohn_lens_free(struct KohnLensSpace *lens);

// Dimension parameter `n`, or 0 for a null handle.
//
// # Safety
// `lens` must be null or a live handle.
size_t kohn_lens_n(const struct KohnLensSpace *lens);

// Group order `k`, or 0 for a null handle.
//
// # Safety
// `lens` must be null or a live handle.
uint64_t kohn_lens_k(const struct KohnLensSpace *lens);

// Canonical `"k:l1,..."` form.
//
// # Safety
// `lens` must be a live handle; `out` must be writable.
enum KohnStatus kohn_lens_to_string(const struct KohnLensSpace *lens, char **out);

// `dim H^G_{p,q}` in decimal.
//
// # Safety
// `lens` must be a live handle; `out` must be writable.
enum KohnStatus kohn_dim_invariant(const struct KohnLensSpace *lens,
                                   uint64_t p,
                                   uint64_t q,
                                   char **out);

// Multiplicity of the eigenvalue `lambda` in decimal.
//
// # Safety
// `lens` must be a live handle; `out` must be writable.
enum KohnStatus kohn_multiplicity(const struct KohnLensSpace *lens, int64_t lambda, char **out);

// `N_L(lambda)` in decimal.
//
// # Safety
// `lens` must be a live handle; `out` must be writable.
enum KohnStatus kohn_counting(const struct KohnLensSpace *lens, uint64_t lambda, char **out);

// `gcd(k, l_1 - l_2)`; requires `n = 2`.
//
// # Safety
// `lens` must be a live handle; `out` must be writable.
enum KohnStatus kohn_gcd_invariant(const struct KohnLensSpace *lens, uint64_t *out);

// Searches for `(a, sigma)` with `right_i = a * left_{sigma(i)} mod k`.
//
// `sigma` is written zero-based into `sigma_out`, which must hold `n`
// entries. When no witness exists `*found` is false and the other outputs
// are untouched.
//
// # Safety
// Handles must be live; `found` and `a_out` writable; `sigma_out` writable for `sigma_len` entries.
enum KohnStatus kohn_isometry_witness(const struct KohnLensSpace *left,
                                      const struct KohnLensSpace *right,
                                      bool *found,
                                      uint64_t *a_out,
                                      size_t *sigma_out,
                                      size_t sigma_len);

// Whether multiplicities agree at every even eigenvalue up to `lambda_max`.
//
// # Safety
// Handles must be live; `out` must be writable.
enum KohnStatus kohn_spectra_equal(const struct KohnLensSpace *left,
                                   const struct KohnLensSpace *right,
                                   uint64_t lambda_max,
                                   bool *out);

// The Weyl constant `u_n` with default quadrature settings.
//
// # Safety
// `out` must be writable.
enum KohnStatus kohn_universal_constant(size_t n, double *out);

// Rank over `Q` of `{C^lambda}` for the given eigenvalues.
//
// # Safety
// `lambdas` must point to `len` readable values; `out` must be writable.
enum KohnStatus kohn_span_dimension(uint64_t k, const uint64_t *lambdas, size_t len, size_t *out);

// Closed-form generating function at `(z, w)`.
//
// # Safety
// `lens` must be a live handle; `out_re` and `out_im` must be writable.
enum KohnStatus kohn_genfunc_closed(const struct KohnLensSpace *lens,
                                    double z_re,
                                    double z_im,
                                    double w_re,
                                    double w_im,
                                    double *out_re,
                                    double *out_im);

// Message for the last failed call on this thread, or null.
//
// The pointer stays valid until the next library call on the same thread.
const char *kohn_last_error_message(void);

// # Safety
// `s` must be null or a string returned by this library, freed once.
void kohn_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KOHN_LENS_H */
