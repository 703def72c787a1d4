#ifndef GRADEDPI_H
#define GRADEDPI_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GpMode {
  GP_MODE_IDENTITIES = 0,
  GP_MODE_CENTRALS = 1,
} GpMode;

typedef enum GpStatus {
  GP_STATUS_OK = 0,
  GP_STATUS_VERIFICATION_FAILED = 1,
  GP_STATUS_PARSE_ERROR = 2,
  GP_STATUS_PRECONDITION = 3,
  GP_STATUS_RESOURCE_LIMIT = 4,
  GP_STATUS_NULL_POINTER = 5,
  GP_STATUS_INVALID_UTF8 = 6,
  GP_STATUS_INTERNAL = 7,
} GpStatus;

/**
 * A graded algebra plus any generator sets named in its spec file.
 */
typedef struct GpAlgebra GpAlgebra;

typedef struct GpReport GpReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a catalog algebra such as `"m2-4"` or `"pauli(3)"`.
 *
 * # Safety
 * `id` must be a NUL-terminated string and `out` a valid pointer.
 */
enum GpStatus gp_algebra_from_catalog(const char *id, struct GpAlgebra **out);

/**
 * Parses the text of an algebra spec file.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum GpStatus gp_algebra_from_spec(const char *text, struct GpAlgebra **out);

/**
 * Real dimension; 0 for a null handle.
 *
 * # Safety
 * `a` must be null or a live handle.
 */
size_t gp_algebra_dim(const struct GpAlgebra *a);

/**
 * Exports the algebra as spec-file text.
 *
 * # Safety
 * `a` must be a live handle and `out` a valid pointer.
 */
enum GpStatus gp_algebra_to_spec(const struct GpAlgebra *a, char **out);

/**
 * # Safety
 * `a` must be null or a handle not yet freed.
 */
void gp_algebra_free(struct GpAlgebra *a);

/**
 * Verifies a named basis (as accepted by `gradedpi verify --basis`) up to
 * `max_degree`. The report is written to `out` whenever the check ran, so
 * `GP_STATUS_VERIFICATION_FAILED` still returns a report to inspect.
 *
 * # Safety
 * `a` must be a live handle, `basis` a NUL-terminated string and `out` a
 * valid pointer.
 */
enum GpStatus gp_verify(const struct GpAlgebra *a,
                        const char *basis,
                        enum GpMode mode,
                        uint32_t max_degree,
                        struct GpReport **out);

/**
 * # Safety
 * `r` must be null or a live report.
 */
bool gp_report_passed(const struct GpReport *r);

/**
 * # Safety
 * `r` must be a live report and `out` a valid pointer.
 */
enum GpStatus gp_report_to_json(const struct GpReport *r, char **out);

/**
 * # Safety
 * `r` must be null or a report not yet freed.
 */
void gp_report_free(struct GpReport *r);

/**
 * Decides whether a polynomial literal is a graded identity of `a`.
 *
 * # Safety
 * `a` must be a live handle, `poly` a NUL-terminated string and `out` a
 * valid pointer.
 */
enum GpStatus gp_is_identity(const struct GpAlgebra *a, const char *poly, bool *out);

/**
 * Message of the last failure on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *gp_last_error_message(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void gp_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GRADEDPI_H */
