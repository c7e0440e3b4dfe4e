#ifndef VIVISAT_H
#define VIVISAT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define VIVISAT_SAT 10

#define VIVISAT_UNSAT 20

#define VIVISAT_UNKNOWN 0

/*
 Status codes. Everything except `Ok` is negative.
 */
enum VivisatStatus
#ifdef __cplusplus
  : int32_t
#endif // __cplusplus
 {
  VIVISAT_STATUS_OK = 0,
  VIVISAT_STATUS_NULL_POINTER = -1,
  VIVISAT_STATUS_INVALID_ARGUMENT = -2,
  VIVISAT_STATUS_PARSE_ERROR = -3,
  /*
   A model was requested but the last solve did not answer satisfiable.
   */
  VIVISAT_STATUS_NO_MODEL = -4,
  VIVISAT_STATUS_PANIC = -5,
};
#ifndef __cplusplus
typedef int32_t VivisatStatus;
#endif // __cplusplus

/*
 Opaque solver handle.
 */
typedef struct VivisatSolver VivisatSolver;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Create a solver with default options. Free it with [`vivisat_free`].
 */
struct VivisatSolver *vivisat_new(void);

/*
 Destroy a solver. `NULL` is ignored.

 # Safety
 `s` must be `NULL` or a handle from [`vivisat_new`] that was not freed yet.
 */
void vivisat_free(struct VivisatSolver *s);

/*
 Library version as a static NUL-terminated string.
 */
const char *vivisat_version(void);

/*
 Set an option by its command-line name without the leading dashes, e.g.
 `("viv-select", "live++")` or `("seed", "7")`.

 # Safety
 `s` must be a live handle; `name` and `value` must be NUL-terminated strings.
 */
int32_t vivisat_set_option(struct VivisatSolver *s, const char *name, const char *value);

/*
 Limit the number of conflicts per solve; a negative limit removes it.

 # Safety
 `s` must be a live handle.
 */
int32_t vivisat_set_conflict_limit(struct VivisatSolver *s, int64_t limit);

/*
 Limit the wall-clock seconds per solve; zero or a negative value removes the limit.

 # Safety
 `s` must be a live handle.
 */
int32_t vivisat_set_time_limit(struct VivisatSolver *s, double seconds);

/*
 Add a clause of `len` signed DIMACS literals (no terminating zero). `lits` may be `NULL`
 when `len` is zero, which adds the empty clause.

 # Safety
 `s` must be a live handle; `lits` must point to `len` readable integers unless `len` is 0.
 */
int32_t vivisat_add_clause(struct VivisatSolver *s, const int32_t *lits, size_t len);

/*
 Parse DIMACS CNF text and add its clauses.

 # Safety
 `s` must be a live handle; `text` must be a NUL-terminated string.
 */
int32_t vivisat_parse_dimacs(struct VivisatSolver *s, const char *text);

/*
 Solve all clauses added so far. Returns `VIVISAT_SAT`, `VIVISAT_UNSAT`, `VIVISAT_UNKNOWN`
 (a limit was reached) or a negative status.

 # Safety
 `s` must be a live handle.
 */
int32_t vivisat_solve(struct VivisatSolver *s);

/*
 Number of variables seen so far.

 # Safety
 `s` must be a live handle.
 */
int32_t vivisat_num_vars(struct VivisatSolver *s);

/*
 Value of variable `var` (1-based) in the model of the last satisfiable solve: 1 for true,
 0 for false, or a negative status.

 # Safety
 `s` must be a live handle.
 */
int32_t vivisat_value(struct VivisatSolver *s, int32_t var);

/*
 Metrics of the last solve as a JSON object, or `NULL` if nothing was solved yet. Release
 the string with [`vivisat_string_free`].

 # Safety
 `s` must be a live handle.
 */
char *vivisat_stats_json(struct VivisatSolver *s);

/*
 Release a string returned by this library. `NULL` is ignored.

 # Safety
 `p` must be `NULL` or a string from [`vivisat_stats_json`] that was not freed yet.
 */
void vivisat_string_free(char *p);

/*
 Message of the most recent failed call on `s`, or `NULL` if the last call succeeded. The
 string stays valid until the next call on `s`.

 # Safety
 `s` must be `NULL` or a live handle.
 */
const char *vivisat_last_error(const struct VivisatSolver *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VIVISAT_H */
