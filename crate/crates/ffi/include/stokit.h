#ifndef STOKIT_H
#define STOKIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum StokitStatus {
  STOKIT_STATUS_OK = 0,
  // Null pointer, wrong buffer length or malformed argument.
  STOKIT_STATUS_INVALID_ARGUMENT = 1,
  // Matrix text could not be parsed.
  STOKIT_STATUS_PARSE = 2,
  // The matrix is not column-stochastic.
  STOKIT_STATUS_NOT_STOCHASTIC = 3,
  // No feasible construction exists for the requested parameters.
  STOKIT_STATUS_INFEASIBLE = 4,
  // Any other analysis failure (size limits, root finding, ...).
  STOKIT_STATUS_FAILED = 5,
  // A panic was caught at the boundary.
  STOKIT_STATUS_INTERNAL = 6,
} StokitStatus;

// Opaque matrix handle.
typedef struct StokitMatrix StokitMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses a JSON or CSV matrix (`rows[i][j] = a_ij`). Integer-only input
// uses the rational backend.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum StokitStatus stokit_matrix_parse(const char *text, struct StokitMatrix **out);

// Builds a float matrix from `n * n` row-major doubles (`data[i * n + j] = a_ij`).
//
// # Safety
// `data` must point to `n * n` readable doubles and `out` must be valid.
enum StokitStatus stokit_matrix_from_rows_f64(const double *data,
                                              size_t n,
                                              struct StokitMatrix **out);

// Releases a handle. Null is ignored.
//
// # Safety
// `m` must be null or a handle from this library that has not been freed.
void stokit_matrix_free(struct StokitMatrix *m);

// Dimension of the matrix, or 0 for a null handle.
//
// # Safety
// `m` must be null or a live handle.
size_t stokit_matrix_dim(const struct StokitMatrix *m);

// `true` when the matrix stores exact rationals.
//
// # Safety
// `m` must be null or a live handle.
bool stokit_matrix_is_exact(const struct StokitMatrix *m);

// Writes whether the matrix is column-stochastic.
//
// # Safety
// `m` must be a live handle and `valid` a valid pointer.
enum StokitStatus stokit_validate(const struct StokitMatrix *m, bool *valid);

// Full analysis report as a JSON string.
//
// # Safety
// `m` must be a live handle and `out` a valid pointer. Free the result with
// [`stokit_string_free`].
enum StokitStatus stokit_analyze_json(const struct StokitMatrix *m,
                                      size_t samples,
                                      uint64_t seed,
                                      char **out);

// Spectrum, characteristic polynomial and diagonalizability as JSON.
//
// # Safety
// As for [`stokit_analyze_json`].
enum StokitStatus stokit_spectrum_json(const struct StokitMatrix *m, char **out);

// Convergence class of `Mᵐx` as JSON.
//
// # Safety
// As for [`stokit_analyze_json`].
enum StokitStatus stokit_classify_json(const struct StokitMatrix *m, char **out);

// Matrix entries as JSON (`{"n", "scalar", "rows"}`).
//
// # Safety
// As for [`stokit_analyze_json`].
enum StokitStatus stokit_matrix_json(const struct StokitMatrix *m, char **out);

// Writes the stationary distribution (as doubles) into `out[0..len]`;
// `len` must equal the matrix dimension.
//
// # Safety
// `m` must be a live handle and `out` must hold `len` writable doubles.
enum StokitStatus stokit_stationary(const struct StokitMatrix *m, double *out, size_t len);

// Writes 1 if diagonalizable, 0 if defective, -1 if undecided. Rational
// matrices are decided exactly. Float matrices are always undecided since
// Jordan structure does not survive rounding; parse them as fractions to
// get an answer.
//
// # Safety
// `m` must be a live handle and `result` a valid pointer.
enum StokitStatus stokit_is_diagonalizable(const struct StokitMatrix *m, int32_t *result);

// The defective 3×3 example with spectrum {1, 0, 0}.
//
// # Safety
// `out` must be a valid pointer.
enum StokitStatus stokit_construct_defective_example(struct StokitMatrix **out);

// Defective 3×3 Markov matrix with spectrum {1, λ, λ}, `λ = num / den`.
//
// # Safety
// `out` must be a valid pointer.
enum StokitStatus stokit_construct_defective(int64_t num, int64_t den, struct StokitMatrix **out);

// Message for the last failure on this thread, or null. The pointer stays
// valid until the next library call on the same thread.
const char *stokit_last_error(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must be null or a string from this library that has not been freed.
void stokit_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STOKIT_H */
