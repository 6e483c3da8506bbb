/* C interface to the eqcohom equivariant cohomology engine. */

#ifndef EQCOHOM_H
#define EQCOHOM_H

/* Generated by cbindgen from eqcohom-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible call.
 */
typedef enum EcStatus {
  /**
   * The call succeeded and any out-pointers were filled in.
   */
  EC_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  EC_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  EC_STATUS_INVALID_UTF8 = 2,
  /**
   * The space name is not in the built-in catalog.
   */
  EC_STATUS_UNKNOWN_SPACE = 3,
  /**
   * The JSON input could not be parsed.
   */
  EC_STATUS_PARSE_FAILED = 4,
  /**
   * The complex violates a structural rule (see the error message).
   */
  EC_STATUS_INVALID_COMPLEX = 5,
  /**
   * The coefficient system name or twist was not recognized.
   */
  EC_STATUS_INVALID_SYSTEM = 6,
  /**
   * The request is outside the range the theory covers.
   */
  EC_STATUS_UNSUPPORTED = 7,
  /**
   * The computation itself failed.
   */
  EC_STATUS_COMPUTE_FAILED = 8,
  /**
   * An internal panic was caught at the boundary.
   */
  EC_STATUS_PANICKED = 9,
} EcStatus;

/**
 * Opaque handle to a finite complex with involution.
 */
typedef struct EcComplex EcComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Version of the library, as a static string. Never freed.
 */
const char *ec_version(void);

/**
 * Message describing the most recent failure on the calling thread, or null
 * if nothing has failed yet. The pointer stays valid until the next failing
 * call on the same thread; do not free it.
 */
const char *ec_last_error_message(void);

/**
 * Newline-separated names of the built-in spaces, alphabetically sorted.
 * Release the string with `ec_string_free`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum EcStatus ec_catalog_names(char **out);

/**
 * Build a complex from the built-in catalog by name. On success `*out`
 * receives a handle that must be released with `ec_complex_free`.
 *
 * # Safety
 * `name` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum EcStatus ec_build(const char *name, struct EcComplex **out);

/**
 * Parse a complex from its JSON description and check it structurally.
 * On success `*out` receives a handle to release with `ec_complex_free`.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum EcStatus ec_complex_from_json(const char *json, struct EcComplex **out);

/**
 * Serialize a complex to its canonical JSON form. Release the string with
 * `ec_string_free`.
 *
 * # Safety
 * `x` must be a live handle from this library and `out` a valid pointer.
 */
enum EcStatus ec_complex_to_json(const struct EcComplex *x, char **out);

/**
 * Check a complex against the structural rules. Returns `EC_STATUS_OK` when
 * it passes. When it fails and `out_report` is non-null, `*out_report`
 * receives a newline-separated list of violations (release with
 * `ec_string_free`); on success `*out_report` is set to null.
 *
 * # Safety
 * `x` must be a live handle; `out_report` may be null.
 */
enum EcStatus ec_validate(const struct EcComplex *x, char **out_report);

/**
 * Cohomology of the orbit-cochain theory in one degree, with the coefficient
 * system named as on the command line (`"0~Z"`, `"0~Ztilde"`, `"constZ"`,
 * `"constA-<rank>"`, `"fixedZ-<rank>"`). `*out` receives the rendered group.
 *
 * # Safety
 * `x` must be a live handle, `system` a valid NUL-terminated string, and
 * `out` a valid pointer.
 */
enum EcStatus ec_bredon(const struct EcComplex *x, const char *system, uint32_t degree, char **out);

/**
 * Cohomology of the homotopy-quotient theory in one degree, with integer
 * coefficients twisted by the sign representation when `twist` is 1. When
 * `relative_to_fixed` is true the group is taken relative to the fixed
 * subcomplex. `*out` receives the rendered group.
 *
 * # Safety
 * `x` must be a live handle and `out` a valid pointer.
 */
enum EcStatus ec_borel(const struct EcComplex *x,
                       uint32_t twist,
                       uint32_t degree,
                       bool relative_to_fixed,
                       char **out);

/**
 * Classify rank-2k families over the complex. `*out` receives a JSON
 * document with the classifying group, the phase count (a decimal string,
 * or null when the group is infinite), and explanatory notes. Returns
 * `EC_STATUS_UNSUPPORTED` above dimension 4, where the correspondence
 * between phases and group elements is not established.
 *
 * # Safety
 * `x` must be a live handle and `out` a valid pointer.
 */
enum EcStatus ec_classify(const struct EcComplex *x, char **out);

/**
 * Release a complex handle. Null is ignored.
 *
 * # Safety
 * `x` must be null or a handle obtained from this library, not yet freed.
 */
void ec_complex_free(struct EcComplex *x);

/**
 * Release a string obtained from this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string obtained from this library, not yet freed.
 */
void ec_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EQCOHOM_H */
