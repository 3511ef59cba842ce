#ifndef MULTIGRADED_H
#define MULTIGRADED_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MgKind {
  MG_KIND_ASSOC = 0,
  MG_KIND_LIE = 1,
  MG_KIND_BIMODULE = 2,
  MG_KIND_LIEMODULE = 3,
} MgKind;

/**
 * Status codes. `MG_STATUS_OK` through `MG_STATUS_INVARIANT` mirror the
 * command-line exit codes.
 */
typedef enum MgStatus {
  MG_STATUS_OK = 0,
  MG_STATUS_STRUCTURE_FAILS = 1,
  MG_STATUS_INVALID_INPUT = 2,
  MG_STATUS_INVARIANT = 3,
  MG_STATUS_NULL_POINTER = 4,
  MG_STATUS_UTF8 = 5,
  MG_STATUS_PANIC = 6,
} MgStatus;

typedef enum MgTheory {
  MG_THEORY_HOCHSCHILD = 0,
  MG_THEORY_CHEVALLEY = 1,
  MG_THEORY_ADJOINT = 2,
} MgTheory;

typedef enum MgWhich {
  MG_WHICH_DELTA = 0,
  MG_WHICH_WEDGE = 1,
} MgWhich;

/**
 * A parsed and validated problem file.
 */
typedef struct MgProblem MgProblem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a problem file from TOML text. On success `*out` owns a handle
 * to be released with [`mg_problem_free`].
 *
 * # Safety
 * `text` must be a valid nul-terminated string and `out` a valid pointer.
 */
enum MgStatus mg_problem_parse(const char *text, struct MgProblem **out);

/**
 * Reads and parses a problem file.
 *
 * # Safety
 * `path` must be a valid nul-terminated string and `out` a valid pointer.
 */
enum MgStatus mg_problem_load(const char *path, struct MgProblem **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `problem` must come from this library and not be used afterwards.
 */
void mg_problem_free(struct MgProblem *problem);

/**
 * The canonical serialization of a problem.
 *
 * # Safety
 * `problem` must be a live handle and `out` a valid pointer.
 */
enum MgStatus mg_problem_to_toml(const struct MgProblem *problem, char **out);

/**
 * # Safety
 * `problem` must be a live handle and `out` a valid pointer.
 */
enum MgStatus mg_verify(const struct MgProblem *problem, enum MgKind kind, char **out);

/**
 * # Safety
 * `problem` must be a live handle, `lhs`/`rhs` nul-terminated strings and `out` a valid pointer.
 */
enum MgStatus mg_bracket(const struct MgProblem *problem,
                         const char *lhs,
                         const char *rhs,
                         enum MgWhich which,
                         char **out);

/**
 * # Safety
 * `problem` must be a live handle and `out` a valid pointer.
 */
enum MgStatus mg_cohomology(const struct MgProblem *problem,
                            enum MgTheory theory,
                            size_t kmax,
                            char **out);

/**
 * # Safety
 * `problem` must be a live handle and `out` a valid pointer.
 */
enum MgStatus mg_deform(const struct MgProblem *problem, size_t order, size_t kmax, char **out);

/**
 * Message of the last failing call on this thread, or null. Owned by the
 * library and valid until the next call on this thread.
 */
const char *mg_last_error(void);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void mg_string_free(char *s);

/**
 * Library version, static storage.
 */
const char *mg_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MULTIGRADED_H */
