#include "nonlocal/nonlocal.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "analysis.hpp"
#include "experiment.hpp"
#include "operators.hpp"
#include "quadrature.hpp"
#include "report.hpp"

using namespace nonlocal;

struct nl_kernel {
  Kernel value;
};
struct nl_rule {
  BallQuadratureRule value;
};
struct nl_field {
  FieldPtr value;
};
struct nl_report {
  std::vector<ConvergenceReport> value;
};

namespace {

thread_local std::string last_error;

template <class F>
nl_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return NL_OK;
  } catch (const SingularityError& e) {
    last_error = e.what();
    return NL_ERROR_SINGULAR;
  } catch (const PreconditionError& e) {
    last_error = e.what();
    return NL_ERROR_CONFIG;
  } catch (const NumericalError& e) {
    last_error = e.what();
    return NL_ERROR_NUMERICAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return NL_ERROR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return NL_ERROR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (p == nullptr) throw PreconditionError(std::string(what) + " must not be NULL");
}

Point to_point(const double* x, int n) {
  Point p{};
  for (int k = 0; k < n; ++k) p[k] = x[k];
  return p;
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

OperatorKind to_kind(nl_operator_kind k) {
  switch (k) {
    case NL_DIVERGENCE: return OperatorKind::divergence;
    case NL_GRADIENT: return OperatorKind::gradient;
    case NL_CURL: return OperatorKind::curl;
  }
  throw PreconditionError("unknown operator kind");
}

const ConvergenceReport& pick(const nl_report* r, size_t which) {
  need(r, "report");
  if (which >= r->value.size()) throw PreconditionError("report index out of range");
  return r->value[which];
}

}  // namespace

extern "C" {

const char* nl_last_error(void) { return last_error.c_str(); }
const char* nl_version(void) { return "0.1.0"; }

nl_status nl_kernel_create(int n, double p, double delta, nl_kernel** out) {
  return guarded([&] {
    need(out, "out");
    *out = new nl_kernel{Kernel(n, p, delta)};
  });
}

void nl_kernel_free(nl_kernel* kernel) { delete kernel; }

double nl_kernel_omega0(const nl_kernel* kernel) { return kernel ? kernel->value.omega0() : 0.0; }

nl_status nl_kernel_eval(const nl_kernel* kernel, const double* x, double* out) {
  return guarded([&] {
    need(kernel, "kernel");
    need(x, "x");
    need(out, "out");
    *out = kernel->value(to_point(x, kernel->value.dimension()));
  });
}

nl_status nl_kernel_la_norm(const nl_kernel* kernel, double a, int numeric, double* out) {
  return guarded([&] {
    need(kernel, "kernel");
    need(out, "out");
    *out = numeric ? kernel_la_norm_numeric(kernel->value, a) : kernel->value.la_norm_exact(a);
  });
}

double nl_c0(int n, double p) {
  double v = 0.0;
  if (guarded([&] { v = c0_constant(n, p); }) != NL_OK) return 0.0;
  return v;
}

nl_status nl_rule_create(const nl_kernel* kernel, int radial_order, int angular_order, nl_rule** out) {
  return guarded([&] {
    need(kernel, "kernel");
    need(out, "out");
    const Kernel& k = kernel->value;
    const int m = radial_order > 0 ? radial_order : kDefaultRadialOrder;
    const int s = angular_order > 0 ? angular_order : default_angular_order(k.dimension());
    *out = new nl_rule{build_rule(k.dimension(), k.exponent(), k.horizon(), m, s)};
  });
}

void nl_rule_free(nl_rule* rule) { delete rule; }

size_t nl_rule_size(const nl_rule* rule) { return rule ? rule->value.size() : 0; }

nl_status nl_moment(const nl_rule* rule, const nl_kernel* kernel, const int* alpha, int j, double* out) {
  return guarded([&] {
    need(rule, "rule");
    need(kernel, "kernel");
    need(alpha, "alpha");
    need(out, "out");
    MultiIndex a{0, 0, 0};
    for (int k = 0; k < rule->value.dimension; ++k) a[k] = alpha[k];
    *out = moment_check(rule->value, kernel->value, a, j);
  });
}

nl_status nl_field_create(const char* spec_json, nl_field** out) {
  return guarded([&] {
    need(spec_json, "spec_json");
    need(out, "out");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(spec_json);
    } catch (const nlohmann::json::exception& e) {
      throw PreconditionError(std::string("field spec is not valid JSON: ") + e.what());
    }
    require(j.is_object(), "field spec must be a JSON object");
    FieldSpec spec;
    try {
      for (const auto& [key, v] : j.items()) {
        if (key == "name") spec.name = v.get<std::string>();
        else if (key == "n") spec.dimension = v.get<int>();
        else if (key == "vector") spec.vector = v.get<bool>();
        else if (key == "c") spec.c = v.get<double>();
        else if (key == "A") spec.A = v.get<std::vector<double>>();
        else if (key == "b") spec.b = v.get<std::vector<double>>();
        else if (key == "H") spec.H = v.get<std::vector<double>>();
        else if (key == "radius") spec.radius = v.get<double>();
        else if (key == "wave") spec.wave = v.get<std::vector<double>>();
        else throw PreconditionError("unknown field spec key '" + key + "'");
      }
    } catch (const nlohmann::json::exception& e) {
      throw PreconditionError(std::string("field spec has a wrongly typed value: ") + e.what());
    }
    *out = new nl_field{make_field(spec)};
  });
}

void nl_field_free(nl_field* field) { delete field; }

int nl_field_components(const nl_field* field) { return field ? field->value->components() : 0; }

nl_status nl_field_eval(const nl_field* field, const double* x, double* out) {
  return guarded([&] {
    need(field, "field");
    need(x, "x");
    need(out, "out");
    const AnalyticField& f = *field->value;
    f.eval(to_point(x, f.dimension()), std::span<double>(out, f.components()));
  });
}

nl_status nl_apply(nl_operator_kind kind, nl_path path, const nl_kernel* kernel, const nl_rule* rule,
                   const nl_field* field, const double* x, double* out) {
  return guarded([&] {
    need(kernel, "kernel");
    need(rule, "rule");
    need(field, "field");
    need(x, "x");
    need(out, "out");
    const EvaluationPath p = path == NL_CONVOLUTIONAL ? EvaluationPath::convolutional : EvaluationPath::direct;
    NonlocalOperator op(to_kind(kind), kernel->value, rule->value, p);
    op.apply(*field->value, to_point(x, op.dimension()), std::span<double>(out, op.output_components()));
  });
}

nl_status nl_apply_local(nl_operator_kind kind, const nl_field* field, const double* x, double* out) {
  return guarded([&] {
    need(field, "field");
    need(x, "x");
    need(out, "out");
    const AnalyticField& f = *field->value;
    const OperatorKind k = to_kind(kind);
    local_operator(k, f, to_point(x, f.dimension()),
                   std::span<double>(out, operator_output_components(k, f.dimension())));
  });
}

nl_status nl_converge(const char* config_json, nl_report** out) {
  return guarded([&] {
    need(config_json, "config_json");
    need(out, "out");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(config_json);
    } catch (const nlohmann::json::exception& e) {
      throw PreconditionError(std::string("config is not valid JSON: ") + e.what());
    }
    ExperimentConfig c = config_from_json(j);
    c.command = "converge";
    validate_config(c);
    *out = new nl_report{convergence_sweep(sweep_config(c))};
  });
}

void nl_report_free(nl_report* report) { delete report; }

size_t nl_report_count(const nl_report* report) { return report ? report->value.size() : 0; }

size_t nl_report_rows(const nl_report* report, size_t which) {
  if (report == nullptr || which >= report->value.size()) return 0;
  return report->value[which].rows.size();
}

nl_status nl_report_row(const nl_report* report, size_t which, size_t row, double out[6]) {
  return guarded([&] {
    need(out, "out");
    const ConvergenceReport& r = pick(report, which);
    if (row >= r.rows.size()) throw PreconditionError("row index out of range");
    const ConvergenceRow& x = r.rows[row];
    const double values[6] = {x.delta, x.q, x.error, x.sobolev_norm, x.bound, x.ratio};
    std::memcpy(out, values, sizeof values);
  });
}

nl_status nl_report_order(const nl_report* report, size_t which, double* order, double* log_constant) {
  return guarded([&] {
    const ConvergenceReport& r = pick(report, which);
    if (!r.fit) throw PreconditionError("all errors are below the exactness threshold; no order fitted");
    if (order) *order = r.fit->order;
    if (log_constant) *log_constant = r.fit->log_constant;
  });
}

nl_status nl_report_csv(const nl_report* report, char** out) {
  return guarded([&] {
    need(report, "report");
    need(out, "out");
    *out = copy_string(convergence_csv(report->value));
  });
}

nl_status nl_report_json(const nl_report* report, char** out) {
  return guarded([&] {
    need(report, "report");
    need(out, "out");
    *out = copy_string(convergence_json(report->value).dump(2) + "\n");
  });
}

nl_status nl_run_experiment(const char* config_json, char** out) {
  return guarded([&] {
    need(config_json, "config_json");
    need(out, "out");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(config_json);
    } catch (const nlohmann::json::exception& e) {
      throw PreconditionError(std::string("config is not valid JSON: ") + e.what());
    }
    *out = copy_string(run_experiment(config_from_json(j)));
  });
}

void nl_string_free(char* s) { std::free(s); }

}  // extern "C"
