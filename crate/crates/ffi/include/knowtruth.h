#ifndef KNOWTRUTH_H
#define KNOWTRUTH_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum KtStatus {
  KT_STATUS_OK = 0,
  KT_STATUS_NULL_ARGUMENT = 1,
  KT_STATUS_INVALID_UTF8 = 2,
  KT_STATUS_PARSE = 3,
  KT_STATUS_REJECTED = 4,
  KT_STATUS_UNKNOWN_SCRIPT = 5,
  KT_STATUS_INTERNAL = 6,
} KtStatus;

/**
 * Opaque session: a system registry, a theorem store and the last error.
 */
typedef struct KtSession KtSession;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

struct KtSession *kt_session_new(void);

/**
 * # Safety
 * `session` is null or a handle from `kt_session_new` not yet freed.
 */
void kt_session_free(struct KtSession *session);

/**
 * The message of the last failed call on `session`, or null. Borrowed: valid
 * until the next call on the same session.
 *
 * # Safety
 * `session` is null or a live handle.
 */
const char *kt_last_error(const struct KtSession *session);

/**
 * # Safety
 * `s` is null or a string returned through an `out` parameter, not yet freed.
 */
void kt_string_free(char *s);

/**
 * Parse a term or formula and write its Gödel code in decimal.
 *
 * # Safety
 * `session` is a live handle, `text` a NUL-terminated string and `out` writable.
 */
enum KtStatus kt_code(struct KtSession *session, const char *text, char **out);

/**
 * Decode a decimal Gödel code back into the expression's text.
 *
 * # Safety
 * As for `kt_code`.
 */
enum KtStatus kt_decode(struct KtSession *session, const char *code, char **out);

/**
 * Check every proof in a bundle and write the conclusion of the last one.
 * Returns `KT_STATUS_REJECTED` at the first proof the kernel refuses.
 *
 * # Safety
 * As for `kt_code`.
 */
enum KtStatus kt_check(struct KtSession *session, const char *proofs, char **out);

/**
 * Run a built-in script and write its proofs as a bundle `kt_check` accepts.
 *
 * # Safety
 * As for `kt_code`.
 */
enum KtStatus kt_run_script(struct KtSession *session, const char *id, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KNOWTRUTH_H */
