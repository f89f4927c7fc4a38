#ifndef ELEVENFLOER_H
#define ELEVENFLOER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

#define ELF_OK 0

/**
 * Malformed JSON or an invalid diagram.
 */
#define ELF_ERR_INVALID_INPUT 1

/**
 * An internal consistency check failed.
 */
#define ELF_ERR_CONSISTENCY 2

#define ELF_ERR_IO 3

#define ELF_ERR_NULL_POINTER 4

/**
 * Rust code panicked; the handle arguments are untouched.
 */
#define ELF_ERR_PANIC 5

/**
 * A parsed, not yet validated diagram.
 */
typedef struct ElfDiagram ElfDiagram;

/**
 * The result of running the engine on a diagram.
 */
typedef struct ElfRun ElfRun;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *elf_last_error_message(void);

/**
 * Parse a diagram from NUL-terminated UTF-8 JSON.
 *
 * # Safety
 * `json` must be a valid C string; `out` must be valid for writes.
 */
int32_t elf_diagram_from_json(const char *json, struct ElfDiagram **out);

/**
 * # Safety
 * `d` must be NULL or a handle from [`elf_diagram_from_json`] not yet freed.
 */
void elf_diagram_free(struct ElfDiagram *d);

/**
 * Validate the diagram and compute its complex, homology and tau.
 *
 * # Safety
 * `d` must be a live diagram handle; `out` must be valid for writes.
 */
int32_t elf_compute(const struct ElfDiagram *d, struct ElfRun **out);

/**
 * # Safety
 * `r` must be NULL or a handle from [`elf_compute`] not yet freed.
 */
void elf_run_free(struct ElfRun *r);

/**
 * # Safety
 * `r` must be a live run handle; `out` must be valid for writes.
 */
int32_t elf_run_tau(const struct ElfRun *r, int64_t *out);

/**
 * Seifert genus, the largest Alexander grading with nonzero homology.
 *
 * # Safety
 * `r` must be a live run handle; `out` must be valid for writes.
 */
int32_t elf_run_genus(const struct ElfRun *r, int64_t *out);

/**
 * The JSON report (homology, tau, genus, bounds, checks).
 *
 * # Safety
 * `r` must be a live run handle; `out` must be valid for writes. Free the
 * string with [`elf_string_free`].
 */
int32_t elf_run_hfk_json(const struct ElfRun *r, char **out);

/**
 * JSON report of the closed-form homology of P(-2, m, n), odd `m >= n >= 3`.
 *
 * # Safety
 * `out` must be valid for writes. Free the string with [`elf_string_free`].
 */
int32_t elf_pretzel_closed_form_json(int64_t m, int64_t n, char **out);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void elf_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ELEVENFLOER_H */
