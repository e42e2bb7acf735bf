#ifndef SMT_H
#define SMT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes.
typedef enum SmtStatus {
  SMT_STATUS_OK = 0,
  // A theorem-level check failed.
  SMT_STATUS_VIOLATION = 1,
  // Malformed input: bad JSON, out-of-range index, unknown family.
  SMT_STATUS_INVALID = 2,
  // Sizes outside the supported range, or m < n.
  SMT_STATUS_UNSUPPORTED = 3,
  SMT_STATUS_NULL_POINTER = 4,
  // A string argument is not UTF-8.
  SMT_STATUS_UTF8 = 5,
  // A Rust panic was caught at the boundary.
  SMT_STATUS_PANIC = 6,
  SMT_STATUS_INTERNAL = 7,
} SmtStatus;

// Straightening context for fixed (n, m). Opaque to C.
typedef struct SmtContext SmtContext;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Creates a context for (n, m); `*out` receives the handle.
//
// # Safety
// `out` must be a valid pointer to writable storage for one pointer.
enum SmtStatus smt_context_new(size_t n, size_t m, struct SmtContext **out);

// Releases a context. Null is ignored.
//
// # Safety
// `ctx` must come from `smt_context_new` and not be used afterwards.
void smt_context_free(struct SmtContext *ctx);

// Straightens a JSON word by an exact solve; `*out_json` receives the relation.
//
// # Safety
// `ctx` must be a live handle, `word_json` a NUL-terminated string and
// `out_json` writable.
enum SmtStatus smt_straighten(const struct SmtContext *ctx, const char *word_json, char **out_json);

// Straightens by catalog substitution. The degree-2 catalog is built on the
// first call and kept in the context.
//
// # Safety
// As for `smt_straighten`; `ctx` must not be used from two threads at once.
enum SmtStatus smt_rewrite(struct SmtContext *ctx, const char *word_json, char **out_json);

// Hilbert function value. `family` is "s", "dt", "rd" or "kp"; `t` is used
// by "dt" only.
//
// # Safety
// `family` must be a NUL-terminated string and `out` writable.
enum SmtStatus smt_hilbert(const char *family,
                           size_t n,
                           size_t m,
                           size_t t,
                           size_t d,
                           uint64_t *out);

// Runs acceptance criterion `k` (1..=12). `*out_json` receives the report
// whether or not it passes; the status is `Violation` when it fails.
//
// # Safety
// `out_json` must be writable.
enum SmtStatus smt_verify_criterion(uint32_t k, uint64_t seed, char **out_json);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be used afterwards.
void smt_string_free(char *s);

// Message of the last failed call on this thread; empty if none. The
// pointer stays valid until the next failing call on the same thread.
const char *smt_last_error(void);

// Library version, a static string.
const char *smt_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SMT_H */
