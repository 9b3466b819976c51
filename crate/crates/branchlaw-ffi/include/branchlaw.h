#ifndef BRANCHLAW_H
#define BRANCHLAW_H

/* Generated by cbindgen from the branchlaw-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every call. Values above OK mirror the process exit codes of
 * the command-line tool where a counterpart exists.
 */
typedef enum BlStatus {
  BL_STATUS_OK = 0,
  BL_STATUS_NULL_ARGUMENT = 1,
  BL_STATUS_PARSE = 2,
  BL_STATUS_GROUP = 3,
  BL_STATUS_TABLE = 4,
  BL_STATUS_INTEGRALITY = 5,
  BL_STATUS_RATIONALITY = 6,
  BL_STATUS_SPLIT = 7,
  BL_STATUS_ORACLE = 8,
  BL_STATUS_KEY_RELATION = 9,
  BL_STATUS_VERIFY = 10,
  BL_STATUS_INTERNAL = 11,
  BL_STATUS_IO = 12,
  BL_STATUS_ARITHMETIC = 13,
  BL_STATUS_INVALID_UTF8 = 14,
  BL_STATUS_INDEX_OUT_OF_RANGE = 15,
  BL_STATUS_PANIC = 16,
} BlStatus;

/**
 * An analyzed finite subgroup: class data, character table, and tensor
 * multiplicity matrices.
 */
typedef struct BlGroup BlGroup;

/**
 * The exact multiplicity generating functions of one group.
 */
typedef struct BlSeries BlSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string; do not free.
 */
const char *bl_version(void);

/**
 * Message for the most recent failure on this thread; empty string if none.
 * Valid until the next call into the library from the same thread.
 */
const char *bl_last_error(void);

/**
 * Release a string returned through an out-pointer.
 */
void bl_string_free(char *s);

/**
 * Analyze a group given a built-in name (`trivial`, `cyclic4`, `typeII`) or
 * the path of a generator file.
 */
enum BlStatus bl_group_new(const char *source, struct BlGroup **out);

/**
 * Analyze a group from the text of a saved character table. `label` names
 * the group in diagnostics and may be null.
 */
enum BlStatus bl_group_new_from_table_text(const char *text,
                                           const char *label,
                                           struct BlGroup **out);

void bl_group_free(struct BlGroup *group);

enum BlStatus bl_group_order(const struct BlGroup *group, uint64_t *out);

/**
 * Number of conjugacy classes, which equals the number of irreducibles and
 * the number of series coordinates.
 */
enum BlStatus bl_group_class_count(const struct BlGroup *group, size_t *out);

enum BlStatus bl_group_exponent(const struct BlGroup *group, uint64_t *out);

/**
 * Dimension of the `index`-th irreducible in the canonical order (index 0
 * is the trivial one).
 */
enum BlStatus bl_group_irreducible_degree(const struct BlGroup *group, size_t index, uint64_t *out);

/**
 * Run the full check suite (series construction, both independent
 * multiplicity computations, the operator identity, dimension and
 * specialization consistency) up to the given total degree. Returns OK when
 * every check passes; VERIFY with a diagnostic in `bl_last_error` otherwise.
 */
enum BlStatus bl_group_verify(const struct BlGroup *group, uint32_t degree);

/**
 * Compute the exact multiplicity series of the group.
 */
enum BlStatus bl_series_new(const struct BlGroup *group, struct BlSeries **out);

void bl_series_free(struct BlSeries *series);

enum BlStatus bl_series_coordinate_count(const struct BlSeries *series, size_t *out);

/**
 * Multiplicity of the `coordinate`-th irreducible in the restriction of the
 * highest-weight module labeled (t, u, w).
 */
enum BlStatus bl_series_multiplicity(const struct BlSeries *series,
                                     size_t coordinate,
                                     uint32_t t,
                                     uint32_t u,
                                     uint32_t w,
                                     int64_t *out);

/**
 * Render one coordinate as `numerator / denominator` text. The returned
 * string must be released with `bl_string_free`.
 */
enum BlStatus bl_series_coordinate_text(const struct BlSeries *series,
                                        size_t coordinate,
                                        char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BRANCHLAW_H */
