#ifndef LIESIM_H
#define LIESIM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LsStatus {
  LS_STATUS_OK = 0,
  LS_STATUS_NULL_POINTER = 1,
  LS_STATUS_INVALID_UTF8 = 2,
  // Malformed JSON, wrong shapes or unreadable input.
  LS_STATUS_PARSE_ERROR = 3,
  // Well-formed input rejected by the algorithms: invalid values, failed
  // validation, non-convergence.
  LS_STATUS_DOMAIN_ERROR = 4,
  LS_STATUS_PANIC = 5,
} LsStatus;

// Algebra, rep and highest weight fixed once for repeated evaluations.
typedef struct LsSimulator LsSimulator;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static string.
const char *ls_version(void);

// Message of the last failed call on this thread, or null. Valid until the next call.
const char *ls_last_error(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from an `out` parameter of this library and not be freed twice.
void ls_string_free(char *s);

// Bracket consistency report of an algebra file. A report with violations is
// still `LS_STATUS_OK`; read its `clean` field.
//
// # Safety
// `spec_json` must be a valid string and `out` writable.
enum LsStatus ls_validate(const char *spec_json, char **out);

// Runs a circuit file. `config_json` may be null for defaults.
//
// # Safety
// Strings must be valid or null where allowed; `out` writable.
enum LsStatus ls_expect(const char *circuit_json, const char *config_json, char **out);

// Spectrum of a model file.
//
// # Safety
// As for [`ls_expect`].
enum LsStatus ls_solve(const char *model_json, const char *config_json, char **out);

// Ground-state preparation of a model file.
//
// # Safety
// As for [`ls_expect`].
enum LsStatus ls_prepare(const char *model_json, const char *config_json, char **out);

// Creates a simulator from `{"algebra": …, "weight": […], "rep": optional}`.
//
// # Safety
// `setup_json` must be a valid string and `out` writable.
enum LsStatus ls_simulator_new(const char *setup_json, struct LsSimulator **out);

// # Safety
// `sim` must be null or come from [`ls_simulator_new`], freed once.
void ls_simulator_free(struct LsSimulator *sim);

// Algebra dimension `M`; coefficient arrays hold `2M` doubles. Zero for null.
//
// # Safety
// `sim` must be null or a live handle.
size_t ls_simulator_dim(const struct LsSimulator *sim);

// `Σ_s p_s ⟨hw|U_s^{-1} W U_s|hw⟩` with `W` given as `len = 2M` interleaved
// real and imaginary parts and the ensemble as a JSON list of `{p, gates}`.
// Writes the real and imaginary parts of the value to `out[0]`, `out[1]`.
//
// # Safety
// `sim` must be a live handle, `coeffs` readable for `len` doubles, `out`
// writable for two doubles.
enum LsStatus ls_simulator_expect_element(const struct LsSimulator *sim,
                                          const char *ensemble_json,
                                          const double *coeffs,
                                          size_t len,
                                          double tol,
                                          double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LIESIM_H */
