/* Pure C consumer: proves the public header compiles as C and the shared
 * library is usable without any C++ runtime on the caller's side. */
#include <gch/gch.h>

#include <math.h>
#include <stdio.h>
#include <string.h>

static int failures = 0;

#define EXPECT(cond)                                                     \
  do {                                                                   \
    if (!(cond)) {                                                       \
      ++failures;                                                        \
      fprintf(stderr, "FAILED %s:%d: %s\n", __FILE__, __LINE__, #cond);  \
    }                                                                    \
  } while (0)

int main(void) {
  EXPECT(gch_version() != NULL);
  EXPECT(strlen(gch_version()) > 0);

  EXPECT(gch_preset_count() == 5);
  {
    int k = 0, p = 0;
    double b = 0.0;
    EXPECT(gch_preset_describe("novikov", &k, &p, &b) == GCH_OK);
    EXPECT(k == 1 && p == 2 && b == 3.0);
  }

  {
    const char* config =
        "model.preset = camassa_holm\n"
        "grid.n = 64\n"
        "control.t_end = 0.01\n"
        "control.dt = 1e-3\n"
        "initial.kind = cosine_packet\n";
    gch_result* result = NULL;
    double record[11];
    EXPECT(gch_run_config_text(config, &result) == GCH_OK);
    EXPECT(result != NULL);
    EXPECT(gch_result_outcome(result) == GCH_RUN_REACHED_T_END);
    EXPECT(gch_result_record_count(result) == 11);
    EXPECT(gch_record_width() == 11);
    EXPECT(gch_result_record(result, 10, record, 11) == GCH_OK);
    EXPECT(fabs(record[0] - 0.01) < 1e-15);
    gch_result_free(result);
  }

  {
    gch_result* result = NULL;
    EXPECT(gch_run_config_text("gibberish", &result) == GCH_ERR_CONFIG);
    EXPECT(result == NULL);
    EXPECT(strlen(gch_last_error()) > 0);
  }

  if (failures != 0) {
    fprintf(stderr, "%d C interface check(s) failed\n", failures);
    return 1;
  }
  printf("C interface checks passed\n");
  return 0;
}
