#ifndef FIBERFIELD_H
#define FIBERFIELD_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes; the nonzero ones match the command-line exit codes where
 * they overlap.
 */
typedef enum ff_status {
  FF_STATUS_OK = 0,
  FF_STATUS_NULL_ARGUMENT = 1,
  FF_STATUS_CONFIG = 2,
  FF_STATUS_BUDGET = 3,
  FF_STATUS_INTERNAL = 4,
  FF_STATUS_INVALID_UTF8 = 5,
  FF_STATUS_PANIC = 6,
} ff_status;

/**
 * A finished report, owned by the caller until [`ff_report_free`].
 */
typedef struct ff_report ff_report;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or null. The pointer stays
 * valid until the next call into the library on the same thread.
 */
const char *ff_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *ff_version(void);

/**
 * Runs a subcommand (`der-solve`, `cohomology` or `example`) on a JSON
 * config. `budget` of 0 keeps the config's own budget.
 *
 * # Safety
 * `command` and `config_json` must be NUL-terminated strings; `out` must be
 * a valid pointer to writable storage.
 */
enum ff_status ff_run(const char *command,
                      const char *config_json,
                      uint64_t budget,
                      struct ff_report **out);

/**
 * Full report JSON, borrowed from the report.
 *
 * # Safety
 * `report` must come from [`ff_run`] and not yet be freed.
 */
const char *ff_report_json(const struct ff_report *report);

/**
 * Report JSON without timing, identical across runs of the same config.
 *
 * # Safety
 * `report` must come from [`ff_run`] and not yet be freed.
 */
const char *ff_report_payload(const struct ff_report *report);

/**
 * # Safety
 * `report` must come from [`ff_run`] or be null; it must not be used again.
 */
void ff_report_free(struct ff_report *report);

/**
 * Runs a named example with default settings and returns the report JSON,
 * to be released with [`ff_string_free`].
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out_json` must be writable.
 */
enum ff_status ff_run_example(const char *name, char **out_json);

/**
 * # Safety
 * `s` must come from this library or be null; it must not be used again.
 */
void ff_string_free(char *s);

/**
 * `dim H²` of the Witt algebra at `weight`, stabilized over windows
 * `window` and `window + 1`. `adjoint` selects adjoint coefficients.
 * Writes `-1` to `out_dim` when the two windows disagree.
 *
 * # Safety
 * `out_dim` must be writable.
 */
enum ff_status ff_witt_h2(int64_t window, int64_t weight, bool adjoint, int64_t *out_dim);

/**
 * `dim H²` of vector fields on the line minus `points` (rational strings
 * such as `"1/2"`) and infinity, at the default truncations. Writes `-1`
 * when the truncations disagree.
 *
 * # Safety
 * `points` must hold `n_points` NUL-terminated strings; `out_dim` must be
 * writable.
 */
enum ff_status ff_punctured_h2(const char *const *points, size_t n_points, int64_t *out_dim);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FIBERFIELD_H */
