#ifndef QUADPENCIL_H
#define QUADPENCIL_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every `qp_*` call.
typedef enum QpStatus {
  QP_STATUS_OK = 0,
  QP_STATUS_NULL_POINTER = 1,
  QP_STATUS_PARSE = 2,
  QP_STATUS_SINGULAR_INTERSECTION = 3,
  QP_STATUS_UNSUPPORTED_DIMENSION = 4,
  QP_STATUS_INVALID_ARGUMENT = 5,
  QP_STATUS_BUFFER_TOO_SMALL = 6,
  QP_STATUS_PANIC = 7,
} QpStatus;

// Rationality status of the real locus.
typedef enum QpVerdict {
  QP_VERDICT_RATIONAL = 0,
  QP_VERDICT_NOT_RATIONAL = 1,
  QP_VERDICT_OPEN = 2,
  QP_VERDICT_OUT_OF_SCOPE = 3,
} QpVerdict;

// A validated pencil `(n, F1, F2)`.
typedef struct QpPencil QpPencil;

// A classification report.
typedef struct QpReport QpReport;

typedef struct QpLatticeCounts {
  size_t weights;
  size_t disjoint;
  size_t meet_in_n_minus_1_plane;
  size_t reducible_quadrics;
} QpLatticeCounts;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses a pencil document `{"n": .., "label": .., "F1": [[..]], "F2": [[..]]}`.
// Matrix entries are integers or `"p/q"` strings.
//
// # Safety
// `json` must be a nul-terminated string; `out` must be writable.
enum QpStatus qp_pencil_from_json(const char *json, struct QpPencil **out);

// # Safety
// `pencil` must be null or a handle from `qp_pencil_from_json` not yet freed.
void qp_pencil_free(struct QpPencil *pencil);

// Classifies a pencil. Fails with `SingularIntersection` when the base locus is singular.
//
// # Safety
// `pencil` must be a live handle; `out` must be writable.
enum QpStatus qp_classify(const struct QpPencil *pencil, struct QpReport **out);

// # Safety
// `report` must be null or a handle from `qp_classify` not yet freed.
void qp_report_free(struct QpReport *report);

// Full report as JSON. Release with `qp_string_free`.
//
// # Safety
// `report` must be a live handle; `out` must be writable.
enum QpStatus qp_report_json(const struct QpReport *report, char **out);

// Human-readable report, identical to the CLI text output. Release with `qp_string_free`.
//
// # Safety
// `report` must be a live handle; `out` must be writable.
enum QpStatus qp_report_text(const struct QpReport *report, char **out);

// Writes the canonical Krasnov invariant, e.g. `(1,3,5)`, into `buf`.
// `needed` (optional) receives the required size including the nul byte;
// `BufferTooSmall` is returned when `len` is less than that.
//
// # Safety
// `buf` must point to `len` writable bytes; `needed` must be null or writable.
enum QpStatus qp_report_invariant(const struct QpReport *report,
                                  char *buf,
                                  size_t len,
                                  size_t *needed);

// # Safety
// `report` must be a live handle; `out` must be writable.
enum QpStatus qp_report_verdict(const struct QpReport *report, enum QpVerdict *out);

// Releases a string returned by this library.
//
// # Safety
// `s` must be null or a string from a `qp_*` out-parameter not yet freed.
void qp_string_free(char *s);

// Dihedral normal form of a cyclic sequence of positive integers.
// `out` receives `len` entries.
//
// # Safety
// `parts` and `out` must each point to `len` elements.
enum QpStatus qp_canonical_dihedral(const size_t *parts, size_t len, size_t *out);

// Plane and reducible-quadric counts in the weight class of the given parity (0 even, 1 odd)
// of `D_(2n+3)`, for `1 <= n <= 5`.
//
// # Safety
// `out` must be writable.
enum QpStatus qp_lattice_counts(size_t n, uint32_t parity, struct QpLatticeCounts *out);

// All isotopy classes for `1 <= n <= 4` as JSON. Release with `qp_string_free`.
//
// # Safety
// `out` must be writable.
enum QpStatus qp_atlas_json(size_t n, char **out);

// Message of the last failed call on this thread, or an empty string.
// The pointer stays valid until the next `qp_*` call on the same thread.
const char *qp_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QUADPENCIL_H */
