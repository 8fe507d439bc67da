#ifndef POLARMULT_H
#define POLARMULT_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible entry point.
typedef enum PmStatus {
  PM_STATUS_OK = 0,
  // Unstable window, non-integer coefficient, genericity failure, inconsistency or inconclusive verdict.
  PM_STATUS_NUMERICAL = 1,
  // Malformed or unsupported input.
  PM_STATUS_INPUT = 2,
  PM_STATUS_BUDGET_EXCEEDED = 3,
  PM_STATUS_NULL_POINTER = 4,
  PM_STATUS_INVALID_UTF8 = 5,
  PM_STATUS_UNKNOWN_COMMAND = 6,
  PM_STATUS_PANIC = 7,
} PmStatus;

// Parsed and validated problem description.
typedef struct PmProblem PmProblem;

// Overrides for a run. Negative integers leave the document's value in place.
typedef struct PmFlags {
  int64_t seed;
  int64_t vmax;
  int64_t nmax;
  int64_t margin;
  int64_t budget;
  bool assume_equidimensional;
  bool no_timings;
} PmFlags;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses a JSON problem description. On success `*out` owns a new handle.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum PmStatus pm_problem_parse(const char *json, struct PmProblem **out);

// Releases a handle from `pm_problem_parse`. Null is ignored.
//
// # Safety
// `p` must come from `pm_problem_parse` and not have been freed.
void pm_problem_free(struct PmProblem *p);

// Runs `command` (e.g. "polar", "check-integral", "selftest") and stores the
// JSON report in `*out`. The report is produced for failing runs too; the
// status mirrors the command-line exit code. `problem` may be null only for
// "selftest"; `flags` may be null for defaults.
//
// # Safety
// Pointers must be valid or null as described; `command` NUL-terminated.
enum PmStatus pm_run(const struct PmProblem *problem,
                     const char *command,
                     const struct PmFlags *flags,
                     char **out);

// Releases a string returned by `pm_run`. Null is ignored.
//
// # Safety
// `s` must come from `pm_run` and not have been freed.
void pm_string_free(char *s);

// Message for the most recent failure on this thread, or "" if none.
// Valid until the next call into the library from the same thread.
const char *pm_last_error(void);

// Library version as a static NUL-terminated string.
const char *pm_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POLARMULT_H */
