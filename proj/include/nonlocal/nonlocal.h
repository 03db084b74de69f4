#ifndef NONLOCAL_NONLOCAL_H
#define NONLOCAL_NONLOCAL_H

#include <stddef.h>

#if defined(NL_BUILDING_LIBRARY)
#define NL_API __attribute__((visibility("default")))
#else
#define NL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nl_status {
  NL_OK = 0,
  NL_ERROR_INTERNAL = 1,   /* unexpected failure, I/O */
  NL_ERROR_CONFIG = 2,     /* violated precondition */
  NL_ERROR_NUMERICAL = 3,  /* non-finite value encountered */
  NL_ERROR_SINGULAR = 4    /* kernel evaluated at the origin */
} nl_status;

typedef enum nl_operator_kind { NL_DIVERGENCE = 0, NL_GRADIENT = 1, NL_CURL = 2 } nl_operator_kind;
typedef enum nl_path { NL_DIRECT = 0, NL_CONVOLUTIONAL = 1 } nl_path;

typedef struct nl_kernel nl_kernel;
typedef struct nl_rule nl_rule;
typedef struct nl_field nl_field;
typedef struct nl_report nl_report;

/* Message of the last failed call on this thread; never NULL. */
NL_API const char* nl_last_error(void);
NL_API const char* nl_version(void);

/* Kernel omega0/|x|^p on the delta-ball in R^n, normalized. */
NL_API nl_status nl_kernel_create(int n, double p, double delta, nl_kernel** out);
NL_API void nl_kernel_free(nl_kernel* kernel);
NL_API double nl_kernel_omega0(const nl_kernel* kernel);
/* Value at x (n coordinates). */
NL_API nl_status nl_kernel_eval(const nl_kernel* kernel, const double* x, double* out);
NL_API nl_status nl_kernel_la_norm(const nl_kernel* kernel, double a, int numeric, double* out);
NL_API double nl_c0(int n, double p);

/* Ball quadrature rule matching a kernel; orders <= 0 select defaults. */
NL_API nl_status nl_rule_create(const nl_kernel* kernel, int radial_order, int angular_order, nl_rule** out);
NL_API void nl_rule_free(nl_rule* rule);
NL_API size_t nl_rule_size(const nl_rule* rule);
/* int x^alpha omega e_j over the ball; alpha has n entries, j is 1-based. */
NL_API nl_status nl_moment(const nl_rule* rule, const nl_kernel* kernel, const int* alpha, int j, double* out);

/* Builtin field from a JSON object with keys name, n, vector, c, A, b, H,
   radius, wave. */
NL_API nl_status nl_field_create(const char* spec_json, nl_field** out);
NL_API void nl_field_free(nl_field* field);
NL_API int nl_field_components(const nl_field* field);
NL_API nl_status nl_field_eval(const nl_field* field, const double* x, double* out);

/* Nonlocal operator at x; out has n entries (gradient, curl) or 1 (divergence). */
NL_API nl_status nl_apply(nl_operator_kind kind, nl_path path, const nl_kernel* kernel, const nl_rule* rule,
                          const nl_field* field, const double* x, double* out);
/* Classical operator of the same kind. */
NL_API nl_status nl_apply_local(nl_operator_kind kind, const nl_field* field, const double* x, double* out);

/* Convergence sweep described by the same JSON as the command-line tool
   (command is ignored). */
NL_API nl_status nl_converge(const char* config_json, nl_report** out);
NL_API void nl_report_free(nl_report* report);
/* Number of q values in the sweep. */
NL_API size_t nl_report_count(const nl_report* report);
NL_API size_t nl_report_rows(const nl_report* report, size_t which);
/* delta, q, error, sobolev_norm, bound, ratio of one row. */
NL_API nl_status nl_report_row(const nl_report* report, size_t which, size_t row, double out[6]);
/* Fitted order; NL_ERROR_CONFIG when every error is below the exact threshold. */
NL_API nl_status nl_report_order(const nl_report* report, size_t which, double* order, double* log_constant);
/* Serialized report; free with nl_string_free. */
NL_API nl_status nl_report_csv(const nl_report* report, char** out);
NL_API nl_status nl_report_json(const nl_report* report, char** out);

/* Runs any command of the command-line tool from a JSON config and returns
   its standard output text; free with nl_string_free. */
NL_API nl_status nl_run_experiment(const char* config_json, char** out);
NL_API void nl_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
