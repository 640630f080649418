#ifndef SEPARATRIX_H
#define SEPARATRIX_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every call.
 */
typedef enum SeparatrixStatus {
  SEPARATRIX_STATUS_OK = 0,
  /**
   * Malformed input document or a command that does not apply to it.
   */
  SEPARATRIX_STATUS_PARSE_ERROR = 1,
  /**
   * Input outside the supported domain or a failed computation.
   */
  SEPARATRIX_STATUS_DOMAIN_ERROR = 2,
  /**
   * Null pointer, bad UTF-8 or unknown command / format name.
   */
  SEPARATRIX_STATUS_INVALID_ARGUMENT = 3,
  /**
   * A Rust panic was caught at the boundary.
   */
  SEPARATRIX_STATUS_PANIC = 4,
} SeparatrixStatus;

/**
 * Opaque parsed input document.
 */
typedef struct SeparatrixDocument SeparatrixDocument;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses `text` into a new document stored in `*out_doc`.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string and `out_doc` a valid pointer.
 */
enum SeparatrixStatus separatrix_parse(const char *text, struct SeparatrixDocument **out_doc);

/**
 * Runs `command` (`resolve`, `indices`, `separatrix`, `ramify`,
 * `curve-check`) and stores the report rendered as `format` (`text`,
 * `json`, `dot`) in `*out`.
 *
 * # Safety
 * `doc` must come from [`separatrix_parse`]; strings must be NUL-terminated;
 * `out` must be a valid pointer.
 */
enum SeparatrixStatus separatrix_run(const struct SeparatrixDocument *doc,
                                     const char *command,
                                     const char *format,
                                     char **out);

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next failing call on the same thread; do not free.
 */
const char *separatrix_last_error(void);

/**
 * Releases a string returned by [`separatrix_run`]. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void separatrix_string_free(char *s);

/**
 * Releases a document. Null is ignored.
 *
 * # Safety
 * `doc` must come from [`separatrix_parse`] and not be freed twice.
 */
void separatrix_document_free(struct SeparatrixDocument *doc);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* SEPARATRIX_H */
