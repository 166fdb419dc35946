#ifndef LTS_H
#define LTS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes. The first four match the command-line exit codes.
 */
typedef enum LtsStatus {
  LTS_STATUS_OK = 0,
  /**
   * A mathematical precondition does not hold.
   */
  LTS_STATUS_FAILURE = 1,
  /**
   * Malformed input or inconsistent dimensions.
   */
  LTS_STATUS_INPUT_ERROR = 2,
  /**
   * Two independent computations disagree.
   */
  LTS_STATUS_INTERNAL_ERROR = 3,
  LTS_STATUS_NULL_POINTER = 4,
  LTS_STATUS_PANIC = 5,
} LtsStatus;

/**
 * Which twisting computations to run.
 */
typedef enum LtsTwistPaths {
  LTS_TWIST_PATHS_SERIES = 0,
  LTS_TWIST_PATHS_CONJUGATION = 1,
  LTS_TWIST_PATHS_BOTH = 2,
} LtsTwistPaths;

/**
 * A linear map in the column convention.
 */
typedef struct LtsMap LtsMap;

/**
 * A representation of a Lie triple system.
 */
typedef struct LtsRepresentation LtsRepresentation;

/**
 * A Lie triple system.
 */
typedef struct LtsSystem LtsSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *lts_version(void);

/**
 * Message for the last non-OK status on this thread, or NULL. Valid until
 * the next call into the library on the same thread.
 */
const char *lts_last_error(void);

/**
 * Releases a string returned by the library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void lts_string_free(char *s);

/**
 * Parses an algebra document (`{"dim": n, "entries": [...]}`).
 *
 * # Safety
 * `json` must be NUL-terminated; `out` must be writable.
 */
enum LtsStatus lts_system_from_json(const char *json, struct LtsSystem **out);

/**
 * # Safety
 * `sys` must come from [`lts_system_from_json`] and not have been freed.
 */
void lts_system_free(struct LtsSystem *sys);

/**
 * Dimension of the system, or 0 for NULL.
 *
 * # Safety
 * `sys` must be a live handle or NULL.
 */
size_t lts_system_dim(const struct LtsSystem *sys);

/**
 * Serializes the system as an algebra document.
 *
 * # Safety
 * `sys` must be a live handle; `out` must be writable.
 */
enum LtsStatus lts_system_to_json(const struct LtsSystem *sys, char **out);

/**
 * Checks the three axioms; `*passed` receives the outcome. Writes the
 * verify report as JSON to `report` when it is not NULL.
 *
 * # Safety
 * `sys` must be a live handle; `passed` must be writable; `report` may be NULL.
 */
enum LtsStatus lts_system_check_axioms(const struct LtsSystem *sys, bool *passed, char **report);

/**
 * Parses a representation document (`{"base_dim", "carrier_dim", "entries"}`).
 *
 * # Safety
 * `json` must be NUL-terminated; `out` must be writable.
 */
enum LtsStatus lts_representation_from_json(const char *json, struct LtsRepresentation **out);

/**
 * # Safety
 * `rep` must come from [`lts_representation_from_json`] and not have been freed.
 */
void lts_representation_free(struct LtsRepresentation *rep);

/**
 * Parses a map document (`{"rows", "cols", "entries"}`, column convention).
 *
 * # Safety
 * `json` must be NUL-terminated; `out` must be writable.
 */
enum LtsStatus lts_map_from_json(const char *json, struct LtsMap **out);

/**
 * # Safety
 * `map` must come from [`lts_map_from_json`] and not have been freed.
 */
void lts_map_free(struct LtsMap *map);

/**
 * Relative Rota-Baxter identity for `map` with respect to `rep` (the
 * adjoint representation when `rep` is NULL). On failure the first failing
 * basis triple is written to `counterexample[0..3]` when it is not NULL.
 *
 * # Safety
 * Handles must be live (`rep` may be NULL); `holds` must be writable;
 * `counterexample` must be NULL or point to three writable `size_t`.
 */
enum LtsStatus lts_check_relative_rb(const struct LtsSystem *sys,
                                     const struct LtsRepresentation *rep,
                                     const struct LtsMap *map,
                                     bool *holds,
                                     size_t *counterexample);

/**
 * Twists the semidirect product by `map` and writes the JSON twist report
 * (entries, classification, path agreement) to `out`.
 *
 * # Safety
 * Handles must be live (`rep` may be NULL); `out` must be writable.
 */
enum LtsStatus lts_twist_report(const struct LtsSystem *sys,
                                const struct LtsRepresentation *rep,
                                const struct LtsMap *map,
                                enum LtsTwistPaths paths,
                                char **out);

/**
 * Maurer-Cartan residual of `map` cross-checked against the Rota-Baxter
 * identity; writes the JSON report to `out`. Returns
 * `LTS_STATUS_INTERNAL_ERROR` when the two disagree.
 *
 * # Safety
 * Handles must be live (`rep` may be NULL); `out` must be writable.
 */
enum LtsStatus lts_mc_report(const struct LtsSystem *sys,
                             const struct LtsRepresentation *rep,
                             const struct LtsMap *map,
                             char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LTS_H */
