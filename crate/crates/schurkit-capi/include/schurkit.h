#ifndef SCHURKIT_H
#define SCHURKIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every API call.
 */
typedef enum SkStatus {
  SkOk = 0,
  SkErrParse = 1,
  SkErrInconsistent = 2,
  SkErrUnknownCatalog = 3,
  SkErrInvalid = 4,
  SkErrBudget = 5,
  SkErrResource = 6,
  SkErrNullArgument = 7,
  SkErrUtf8 = 8,
  SkErrUnknownLemma = 9,
} SkStatus;

/**
 * Opaque handle to a validated polycyclic group.
 */
typedef struct SkGroup SkGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread. Valid until the next
 * failing call; do not free.
 */
const char *sk_last_error(void);

/**
 * Parse and validate a PC-FILE; on success `*out` owns the group.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be a valid pointer.
 */
enum SkStatus sk_group_parse(const char *text, struct SkGroup **out);

/**
 * Resolve a `catalog:` URI (e.g. `catalog:heisenberg_mod:3`).
 *
 * # Safety
 * `uri` must be a NUL-terminated string; `out` must be a valid pointer.
 */
enum SkStatus sk_group_from_catalog(const char *uri, struct SkGroup **out);

/**
 * Release a group handle. Passing NULL is a no-op.
 *
 * # Safety
 * `g` must have been returned by this library and not yet freed.
 */
void sk_group_free(struct SkGroup *g);

/**
 * Group order, written to `*out`.
 *
 * # Safety
 * `g` must be a live handle; `out` must be a valid pointer.
 */
enum SkStatus sk_group_order(const struct SkGroup *g, uint64_t *out);

/**
 * Full structure report as a JSON string in `*out`.
 *
 * # Safety
 * `g` must be a live handle; `out` must be a valid pointer.
 */
enum SkStatus sk_group_structure_json(const struct SkGroup *g, char **out);

/**
 * Tensor-square summary (orders, exponents, multiplier invariants) as JSON.
 * `budget` caps live cosets; pass 0 for the library default. `extended`
 * widens the order envelope for ν(G).
 *
 * # Safety
 * `g` must be a live handle; `out` must be a valid pointer.
 */
enum SkStatus sk_tensor_square_json(const struct SkGroup *g,
                                    uint64_t budget,
                                    bool extended,
                                    char **out);

/**
 * Verify a built-in identity (`"4.1"`, `"4.2i"`, ...) at its default sample
 * points; the verification report is returned as JSON and `*all_equal` says
 * whether every point checked out.
 *
 * # Safety
 * `lemma` must be a NUL-terminated string; `out` and `all_equal` valid.
 */
enum SkStatus sk_verify_identity_json(const char *lemma, char **out, bool *all_equal);

/**
 * Release a string returned by this library. Passing NULL is a no-op.
 *
 * # Safety
 * `s` must have been returned by this library and not yet freed.
 */
void sk_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* SCHURKIT_H */
