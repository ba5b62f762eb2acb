#ifndef ARCMODEL_H
#define ARCMODEL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Stage selection bits for [`arcmodel_run`].
 */
#define ARC_STAGE_HILBERT 1

#define ARC_STAGE_RELATIONS (1 << 1)

#define ARC_STAGE_MODEL (1 << 2)

#define ARC_STAGE_DECOMPOSE (1 << 3)

#define ARC_STAGE_HENSEL (1 << 4)

#define ARC_STAGE_VERIFY (1 << 5)

#define ARC_STAGE_ALL ((1 << 6) - 1)

/**
 * Result codes of the C interface.
 */
typedef enum ArcStatus {
  ARC_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  ARC_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8 or the job was not valid JSON.
   */
  ARC_STATUS_INVALID_JOB = 2,
  /**
   * The input was rejected (cone, valuation, orders).
   */
  ARC_STATUS_INVALID_INPUT = 3,
  /**
   * A hypothesis of the construction failed for this input.
   */
  ARC_STATUS_HYPOTHESIS_VIOLATION = 4,
  /**
   * The finite-order comparison did not pass; the report is still
   * returned.
   */
  ARC_STATUS_VERIFICATION_FAILED = 5,
  /**
   * An internal error; the session stays usable.
   */
  ARC_STATUS_INTERNAL = 6,
} ArcStatus;

/**
 * Opaque session handle.
 */
typedef struct ArcSession ArcSession;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a session. Release it with [`arcmodel_session_free`].
 */
struct ArcSession *arcmodel_session_new(void);

/**
 * Releases a session. Null is ignored.
 *
 * # Safety
 * `session` must be null or a pointer returned by
 * [`arcmodel_session_new`] that has not been freed.
 */
void arcmodel_session_free(struct ArcSession *session);

/**
 * Runs the stages selected by `stage_mask` on the JSON job `job_json` and
 * stores the JSON report in `*out`. On `Ok` and `VerificationFailed` the
 * report is set; otherwise `*out` is null and the message is available
 * from [`arcmodel_last_error`].
 *
 * # Safety
 * `session` must be a live session, `job_json` a nul-terminated string and
 * `out` a valid pointer to write to.
 */
enum ArcStatus arcmodel_run(struct ArcSession *session,
                            const char *job_json,
                            uint32_t stage_mask,
                            char **out);

/**
 * [`arcmodel_run`] with every stage.
 *
 * # Safety
 * As for [`arcmodel_run`].
 */
enum ArcStatus arcmodel_analyze(struct ArcSession *session, const char *job_json, char **out);

/**
 * Message of the last failure on this session, or null. The pointer stays
 * valid until the next call on the session.
 *
 * # Safety
 * `session` must be null or a live session.
 */
const char *arcmodel_last_error(const struct ArcSession *session);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string returned through an `out` parameter of this
 * library that has not been freed.
 */
void arcmodel_string_free(char *s);

/**
 * Library version as a static string.
 */
const char *arcmodel_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ARCMODEL_H */
