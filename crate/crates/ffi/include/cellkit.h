#ifndef CELLKIT_H
#define CELLKIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Output format for reports.
typedef enum CellkitFormat {
  CELLKIT_FORMAT_MARKDOWN = 0,
  CELLKIT_FORMAT_JSON = 1,
  CELLKIT_FORMAT_CSV = 2,
} CellkitFormat;

// Outcome of a call.
typedef enum CellkitStatus {
  CELLKIT_STATUS_OK = 0,
  CELLKIT_STATUS_NULL_ARGUMENT = 1,
  CELLKIT_STATUS_INVALID_UTF8 = 2,
  CELLKIT_STATUS_INVALID_SPEC = 3,
  CELLKIT_STATUS_TOO_LARGE = 4,
  CELLKIT_STATUS_UNKNOWN_ELEMENT = 5,
  CELLKIT_STATUS_UNKNOWN_CELL = 6,
  CELLKIT_STATUS_INVALID_ARGUMENT = 7,
  CELLKIT_STATUS_NOT_CLOSED = 8,
  CELLKIT_STATUS_INVALID_RING = 9,
  CELLKIT_STATUS_INTERNAL = 10,
} CellkitStatus;

// A finite Coxeter group with its KL table and cells. Opaque.
typedef struct CellkitGroup CellkitGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Static description of a status code.
const char *cellkit_status_string(enum CellkitStatus status);

// Message for the last failure on this thread, or null. Valid until the
// next failing call on the same thread.
const char *cellkit_last_error(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void cellkit_string_free(char *s);

// Builds the group named by `spec` (for example `B3` or `I2(7)`), its KL
// table and its cells.
//
// # Safety
// `spec` must be a NUL-terminated string; `out` must be writable.
enum CellkitStatus cellkit_group_new(const char *spec, struct CellkitGroup **out);

// Releases a group. Null is ignored.
//
// # Safety
// `g` must come from [`cellkit_group_new`] and not have been freed.
void cellkit_group_free(struct CellkitGroup *g);

// Number of elements.
//
// # Safety
// `g` must be a live group; `out` must be writable.
enum CellkitStatus cellkit_group_order(const struct CellkitGroup *g, size_t *out);

// Number of two-sided cells.
//
// # Safety
// `g` must be a live group; `out` must be writable.
enum CellkitStatus cellkit_group_two_sided_cell_count(const struct CellkitGroup *g, size_t *out);

// Lusztig's a-function at the element with the given label.
//
// # Safety
// `g` must be a live group, `label` a NUL-terminated string and `out`
// writable.
enum CellkitStatus cellkit_group_a_value(const struct CellkitGroup *g,
                                         const char *label,
                                         uint32_t *out);

// Left, right and two-sided cell ids of an element.
//
// # Safety
// `g` must be a live group, `label` a NUL-terminated string and the
// three output pointers writable.
enum CellkitStatus cellkit_group_cell_of(const struct CellkitGroup *g,
                                         const char *label,
                                         size_t *left,
                                         size_t *right,
                                         size_t *two_sided);

// The KL polynomial `P_{x,y}` as text in `q`, for example `1+q`.
//
// # Safety
// `g` must be a live group, `x` and `y` NUL-terminated strings and `out`
// writable. Free the result with [`cellkit_string_free`].
enum CellkitStatus cellkit_group_kl(const struct CellkitGroup *g,
                                    const char *x,
                                    const char *y,
                                    char **out);

// The cell report in the chosen format.
//
// # Safety
// `g` must be a live group and `out` writable. Free the result with
// [`cellkit_string_free`].
enum CellkitStatus cellkit_group_cell_report(const struct CellkitGroup *g,
                                             enum CellkitFormat format,
                                             char **out);

// JSON of the based ring on the H-cell in the left cell of `label`.
//
// # Safety
// `g` must be a live group, `label` a NUL-terminated string and `out`
// writable. Free the result with [`cellkit_string_free`].
enum CellkitStatus cellkit_group_hcell_ring_json(const struct CellkitGroup *g,
                                                 const char *label,
                                                 char **out);

// JSON list of connected graphs on at most `max_vertices` vertices with
// spectral radius `2cos(pi/n)`, with certificates and bicolourings.
//
// # Safety
// `out` must be writable. Free the result with [`cellkit_string_free`].
enum CellkitStatus cellkit_spectral_graphs_json(uint32_t n, size_t max_vertices, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CELLKIT_H */
