/* Exercises the shared library through the C header only. */
#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include <nonlocal/nonlocal.h>

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

static void kernel_and_rule(void) {
  nl_kernel* k = NULL;
  EXPECT(nl_kernel_create(2, 1.0, 0.5, &k) == NL_OK);
  double origin[2] = {0.0, 0.0};
  double v = 0.0;
  EXPECT(nl_kernel_eval(k, origin, &v) == NL_ERROR_SINGULAR);
  EXPECT(strlen(nl_last_error()) > 0);
  double x[2] = {0.1, 0.0};
  EXPECT(nl_kernel_eval(k, x, &v) == NL_OK);
  EXPECT(fabs(v - nl_kernel_omega0(k) / 0.1) < 1e-12);

  nl_kernel* bad = NULL;
  EXPECT(nl_kernel_create(2, 2.0, 0.5, &bad) == NL_ERROR_CONFIG);
  EXPECT(bad == NULL);

  nl_rule* r = NULL;
  EXPECT(nl_rule_create(k, 0, 0, &r) == NL_OK);
  EXPECT(nl_rule_size(r) > 0);
  int alpha[2] = {1, 0};
  double m = 0.0;
  EXPECT(nl_moment(r, k, alpha, 1, &m) == NL_OK);
  EXPECT(fabs(m - 1.0) < 1e-12);
  nl_rule_free(r);
  nl_kernel_free(k);
}

static void apply_linear_field(void) {
  nl_field* f = NULL;
  EXPECT(nl_field_create("{\"name\":\"linear\",\"n\":2,\"vector\":true,\"A\":[2,0,0,3]}", &f) == NL_OK);
  EXPECT(nl_field_components(f) == 2);
  nl_field* bad = NULL;
  EXPECT(nl_field_create("{\"name\":\"nope\",\"n\":2}", &bad) == NL_ERROR_CONFIG);
  EXPECT(nl_field_create("{not json", &bad) == NL_ERROR_CONFIG);

  nl_kernel* k = NULL;
  nl_rule* r = NULL;
  EXPECT(nl_kernel_create(2, 1.0, 0.1, &k) == NL_OK);
  EXPECT(nl_rule_create(k, 0, 0, &r) == NL_OK);
  double x[2] = {0.3, -0.2};
  double div = 0.0, local = 0.0;
  EXPECT(nl_apply(NL_DIVERGENCE, NL_DIRECT, k, r, f, x, &div) == NL_OK);
  EXPECT(nl_apply_local(NL_DIVERGENCE, f, x, &local) == NL_OK);
  EXPECT(fabs(div - 5.0) < 1e-12);
  EXPECT(fabs(local - 5.0) < 1e-12);
  double curl[3];
  EXPECT(nl_apply(NL_CURL, NL_DIRECT, k, r, f, x, curl) == NL_ERROR_CONFIG);
  nl_rule_free(r);
  nl_kernel_free(k);
  nl_field_free(f);
}

static void sweeps_and_experiments(void) {
  nl_report* rep = NULL;
  EXPECT(nl_converge("{\"n\":1,\"p\":0.5,\"op\":\"grad\",\"field\":\"gaussian\",\"q\":[2,\"inf\"],"
                     "\"deltas\":[0.4,0.2,0.1,0.05]}",
                     &rep) == NL_OK);
  EXPECT(nl_report_count(rep) == 2);
  EXPECT(nl_report_rows(rep, 0) == 4);
  double row[6];
  EXPECT(nl_report_row(rep, 1, 3, row) == NL_OK);
  EXPECT(row[0] == 0.05 && isinf(row[1]) && row[5] <= 1.0);
  double order = 0.0, logc = 0.0;
  EXPECT(nl_report_order(rep, 0, &order, &logc) == NL_OK);
  EXPECT(order > 1.9 && order < 2.1);
  char* csv = NULL;
  EXPECT(nl_report_csv(rep, &csv) == NL_OK);
  EXPECT(csv != NULL && strncmp(csv, "delta,q,", 8) == 0);
  nl_string_free(csv);
  EXPECT(nl_report_row(rep, 5, 0, row) == NL_ERROR_CONFIG);
  nl_report_free(rep);

  char* out = NULL;
  EXPECT(nl_run_experiment("{\"command\":\"eval\",\"n\":1,\"p\":0.5,\"op\":\"grad\",\"field\":\"quadratic\","
                           "\"c\":1,\"b\":[2],\"H\":[3],\"at\":[0.5],\"delta\":0.2}",
                           &out) == NL_OK);
  EXPECT(out != NULL && fabs(atof(out) - 5.0) < 1e-12);
  nl_string_free(out);
  EXPECT(nl_run_experiment("{\"command\":\"eval\",\"bogus\":1}", &out) == NL_ERROR_CONFIG);
  EXPECT(strstr(nl_last_error(), "bogus") != NULL);
}

int main(void) {
  EXPECT(strcmp(nl_version(), "0.1.0") == 0);
  kernel_and_rule();
  apply_linear_field();
  sweeps_and_experiments();
  if (failures) fprintf(stderr, "%d failures\n", failures);
  else printf("C API: all checks passed\n");
  return failures ? 1 : 0;
}
