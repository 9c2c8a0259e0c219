#ifndef GM_H
#define GM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GmStatus {
  GM_STATUS_OK = 0,
  GM_STATUS_NULL_POINTER = 1,
  GM_STATUS_INVALID_UTF8 = 2,
  GM_STATUS_PARSE_ERROR = 3,
  GM_STATUS_INVALID_ARGUMENT = 4,
  GM_STATUS_NOT_SINGULAR = 5,
  GM_STATUS_NON_ISOLATED = 6,
  GM_STATUS_NOT_QUASI_HOMOGENEOUS = 7,
  GM_STATUS_UNSTABLE_TRUNCATION = 8,
  GM_STATUS_COMPUTATION_FAILED = 9,
  GM_STATUS_PANIC = 10,
} GmStatus;

typedef enum GmCommand {
  GM_COMMAND_MILNOR = 0,
  GM_COMMAND_BASIS = 1,
  GM_COMMAND_TMATRIX = 2,
  GM_COMMAND_CONNECTION = 3,
  GM_COMMAND_SATURATE = 4,
  GM_COMMAND_SPECTRUM = 5,
  GM_COMMAND_ALL = 6,
} GmCommand;

/**
 * Opaque handle: a parsed polynomial with its certified Milnor algebra.
 */
typedef struct GmSingularity GmSingularity;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses `polynomial` and certifies its Milnor algebra up to degree
 * `prec_x` (0 selects the default bound). On success `*out` owns a handle.
 *
 * # Safety
 * `polynomial` must be a nul-terminated string and `out` a valid pointer.
 */
enum GmStatus gm_singularity_new(const char *polynomial,
                                 uint32_t prec_x,
                                 struct GmSingularity **out);

/**
 * Releases a handle; null is accepted.
 *
 * # Safety
 * `handle` must come from [`gm_singularity_new`] and not be used afterwards.
 */
void gm_singularity_free(struct GmSingularity *handle);

/**
 * Writes the Milnor number to `*out_mu`.
 *
 * # Safety
 * `handle` must be live and `out_mu` valid.
 */
enum GmStatus gm_singularity_milnor_number(const struct GmSingularity *handle, size_t *out_mu);

/**
 * Writes whether quasi-homogeneous weights exist.
 *
 * # Safety
 * `handle` must be live and `out` valid.
 */
enum GmStatus gm_singularity_is_quasi_homogeneous(const struct GmSingularity *handle, bool *out);

/**
 * Runs `command` and stores the JSON report in `*out_json`, to be released
 * with [`gm_string_free`]. Precisions below 2 are rejected.
 *
 * # Safety
 * `handle` must be live and `out_json` valid.
 */
enum GmStatus gm_singularity_report_json(const struct GmSingularity *handle,
                                         enum GmCommand command,
                                         int64_t prec_s,
                                         int64_t prec_t,
                                         bool stability_check,
                                         char **out_json);

/**
 * Releases a string returned by this library; null is accepted.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void gm_string_free(char *s);

/**
 * Message of the last failed call on this thread, or null. The pointer
 * stays valid until the next call into the library on the same thread.
 */
const char *gm_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GM_H */
