#include <stdio.h>
#include <string.h>

#include "quadpencil.h"

#define CHECK(cond)                                              \
  do {                                                           \
    if (!(cond)) {                                               \
      fprintf(stderr, "%s:%d: %s (%s)\n", __FILE__, __LINE__,    \
              #cond, qp_last_error_message());                   \
      return 1;                                                  \
    }                                                            \
  } while (0)

static const char *DEL_PEZZO =
    "{\"n\": 1, \"F1\": [[0,0,0,0,0],[0,-1,0,0,0],[0,0,2,0,0],[0,0,0,-3,0],"
    "[0,0,0,0,-4]], \"F2\": [[1,0,0,0,0],[0,1,0,0,0],[0,0,1,0,0],[0,0,0,1,0],"
    "[0,0,0,0,1]]}";

int main(void) {
  QpPencil *pencil = NULL;
  QpReport *report = NULL;
  CHECK(qp_pencil_from_json(DEL_PEZZO, &pencil) == QP_STATUS_OK);
  CHECK(qp_classify(pencil, &report) == QP_STATUS_OK);

  char small[2];
  size_t needed = 0;
  CHECK(qp_report_invariant(report, small, sizeof small, &needed) == QP_STATUS_BUFFER_TOO_SMALL);
  CHECK(needed == 4);
  char inv[16];
  CHECK(qp_report_invariant(report, inv, sizeof inv, NULL) == QP_STATUS_OK);
  CHECK(strcmp(inv, "(5)") == 0);

  QpVerdict verdict;
  CHECK(qp_report_verdict(report, &verdict) == QP_STATUS_OK);
  CHECK(verdict == QP_VERDICT_OUT_OF_SCOPE);

  char *text = NULL;
  CHECK(qp_report_text(report, &text) == QP_STATUS_OK);
  CHECK(strstr(text, "krasnov invariant: (5)") != NULL);
  qp_string_free(text);

  size_t parts[3] = {5, 1, 3};
  size_t canon[3];
  CHECK(qp_canonical_dihedral(parts, 3, canon) == QP_STATUS_OK);
  CHECK(canon[0] == 1 && canon[1] == 3 && canon[2] == 5);

  QpLatticeCounts counts;
  CHECK(qp_lattice_counts(2, 0, &counts) == QP_STATUS_OK);
  CHECK(counts.disjoint == 35 && counts.meet_in_n_minus_1_plane == 7 && counts.reducible_quadrics == 224);

  CHECK(qp_pencil_from_json("{\"n\": 1", &pencil) == QP_STATUS_PARSE);
  CHECK(strlen(qp_last_error_message()) > 0);

  qp_report_free(report);
  qp_pencil_free(NULL);
  puts("ok");
  return 0;
}
