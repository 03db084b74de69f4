#include "experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "analysis.hpp"
#include "maximal.hpp"
#include "operators.hpp"
#include "quadrature.hpp"
#include "report.hpp"

namespace nonlocal {

namespace {

using Json = nlohmann::json;

struct Binding {
  std::function<void(ExperimentConfig&, const Json&)> read;
  std::function<void(const ExperimentConfig&, Json&)> write;
};

template <class T>
Binding member_binding(T ExperimentConfig::*member) {
  return {[member](ExperimentConfig& c, const Json& v) { c.*member = v.get<T>(); },
          [member](const ExperimentConfig& c, Json& v) { v = c.*member; }};
}

template <class T>
Binding optional_binding(std::optional<T> ExperimentConfig::*member) {
  return {[member](ExperimentConfig& c, const Json& v) {
            if (v.is_null())
              (c.*member).reset();
            else
              c.*member = v.get<T>();
          },
          [member](const ExperimentConfig& c, Json& v) { v = (c.*member) ? Json(*(c.*member)) : Json(nullptr); }};
}

// q accepts numbers or the string "inf".
double q_value(const Json& v) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf" || s == "infinity") return kInfinity;
    throw PreconditionError("q must be a number or \"inf\" (got \"" + s + "\")");
  }
  return v.get<double>();
}

const std::map<std::string, Binding>& bindings() {
  static const std::map<std::string, Binding> table = [] {
    std::map<std::string, Binding> t;
    t["command"] = member_binding(&ExperimentConfig::command);
    t["n"] = member_binding(&ExperimentConfig::n);
    t["p"] = member_binding(&ExperimentConfig::p);
    t["q"] = {[](ExperimentConfig& c, const Json& v) {
                c.q.clear();
                if (v.is_array())
                  for (const auto& e : v) c.q.push_back(q_value(e));
                else
                  c.q.push_back(q_value(v));
              },
              [](const ExperimentConfig& c, Json& v) {
                v = Json::array();
                for (double q : c.q) v.push_back(std::isinf(q) ? Json("inf") : Json(q));
              }};
    t["delta"] = member_binding(&ExperimentConfig::delta);
    t["deltas"] = member_binding(&ExperimentConfig::deltas);
    t["op"] = member_binding(&ExperimentConfig::op);
    t["path"] = member_binding(&ExperimentConfig::path);
    t["field"] = member_binding(&ExperimentConfig::field);
    t["vector"] = optional_binding(&ExperimentConfig::vector);
    t["c"] = optional_binding(&ExperimentConfig::c);
    t["A"] = member_binding(&ExperimentConfig::A);
    t["b"] = member_binding(&ExperimentConfig::b);
    t["H"] = member_binding(&ExperimentConfig::H);
    t["radius"] = member_binding(&ExperimentConfig::radius);
    t["wave"] = member_binding(&ExperimentConfig::wave);
    t["at"] = member_binding(&ExperimentConfig::at);
    t["box"] = member_binding(&ExperimentConfig::box);
    t["spacing"] = member_binding(&ExperimentConfig::spacing);
    t["resolution"] = member_binding(&ExperimentConfig::resolution);
    t["radial_order"] = member_binding(&ExperimentConfig::radial_order);
    t["angular_order"] = member_binding(&ExperimentConfig::angular_order);
    t["a"] = member_binding(&ExperimentConfig::a);
    t["maximal_b"] = member_binding(&ExperimentConfig::maximal_b);
    t["radii"] = member_binding(&ExperimentConfig::radii);
    t["radii_count"] = member_binding(&ExperimentConfig::radii_count);
    t["radii_ratio"] = member_binding(&ExperimentConfig::radii_ratio);
    t["sobolev_points"] = member_binding(&ExperimentConfig::sobolev_points);
    t["refine"] = member_binding(&ExperimentConfig::refine);
    t["csv"] = member_binding(&ExperimentConfig::csv);
    t["json"] = member_binding(&ExperimentConfig::json);
    t["format"] = member_binding(&ExperimentConfig::format);
    t["threads"] = member_binding(&ExperimentConfig::threads);
    return t;
  }();
  return table;
}

}  // namespace

void merge_config_json(ExperimentConfig& base, const nlohmann::json& j) {
  require(j.is_object(), "config must be a JSON object");
  const auto& table = bindings();
  for (const auto& [key, value] : j.items()) {
    const auto it = table.find(key);
    require(it != table.end(), "unknown config key '" + key + "'");
    try {
      it->second.read(base, value);
    } catch (const nlohmann::json::exception& e) {
      throw PreconditionError("config key '" + key + "' has the wrong type: " + e.what());
    }
  }
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  merge_config_json(c, j);
  return c;
}

nlohmann::json config_to_json(const ExperimentConfig& config) {
  Json j = Json::object();
  for (const auto& [key, binding] : bindings()) binding.write(config, j[key]);
  return j;
}

namespace {

const std::vector<std::string> kCommands{"check-kernel", "eval", "converge", "maximal"};

OperatorKind config_kind(const ExperimentConfig& c) { return parse_operator_kind(c.op); }

Box config_box(const ExperimentConfig& c) {
  require(c.box.size() == std::size_t(2 * c.n), "box needs 2n values lo1,hi1,...,lon,hin");
  Box box;
  box.dimension = c.n;
  for (int k = 0; k < c.n; ++k) {
    box.lower[k] = c.box[2 * k];
    box.upper[k] = c.box[2 * k + 1];
    require(box.upper[k] > box.lower[k], "box upper bound must exceed lower bound on every axis");
  }
  return box;
}

Point config_point(const ExperimentConfig& c) {
  require(c.at.size() == std::size_t(c.n), "evaluation point needs n coordinates");
  Point x{};
  for (int k = 0; k < c.n; ++k) x[k] = c.at[k];
  return x;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

std::string emit(const ExperimentConfig& c, const std::string& csv, const Json& json) {
  const std::string json_text = json.dump(2) + "\n";
  if (!c.csv.empty()) write_file(c.csv, csv);
  if (!c.json.empty()) write_file(c.json, json_text);
  return c.format == "json" ? json_text : csv;
}

std::string index_label(const MultiIndex& alpha, int n, int j) {
  std::ostringstream s;
  s << "alpha=(";
  for (int k = 0; k < n; ++k) s << (k ? "," : "") << alpha[k];
  s << ") j=" << j;
  return s.str();
}

std::string run_check_kernel(const ExperimentConfig& c) {
  Kernel kernel(c.n, c.p, c.delta);
  const int angular = c.angular_order > 0 ? c.angular_order : default_angular_order(c.n);
  const BallQuadratureRule rule = build_rule(c.n, c.p, c.delta, c.radial_order, angular);
  std::vector<KernelCheckRow> rows;
  for (const MultiIndex& alpha : multi_indices(c.n, 2)) {
    for (int j = 1; j <= c.n; ++j) {
      KernelCheckRow row;
      row.quantity = order(alpha) == 1 ? "second_moment" : "even_moment";
      row.index = index_label(alpha, c.n, j);
      row.value = moment_check(rule, kernel, alpha, j);
      row.exact = (order(alpha) == 1 && alpha[j - 1] == 1) ? 1.0 : 0.0;
      row.abs_error = std::abs(row.value - row.exact);
      rows.push_back(row);
    }
  }
  for (double a : c.a) {
    KernelCheckRow row;
    row.quantity = "la_norm";
    row.index = "a=" + format_number(a);
    row.value = kernel_la_norm_numeric(kernel, a, c.radial_order);
    row.exact = kernel.la_norm_exact(a);
    row.abs_error = std::abs(row.value - row.exact);
    rows.push_back(row);
  }
  return emit(c, kernel_check_csv(rows), kernel_check_json(rows));
}

std::string run_eval(const ExperimentConfig& c) {
  const FieldPtr field = config_field(c);
  Kernel kernel(c.n, c.p, c.delta);
  const int angular = c.angular_order > 0 ? c.angular_order : default_angular_order(c.n);
  NonlocalOperator op(config_kind(c), kernel, build_rule(c.n, c.p, c.delta, c.radial_order, angular),
                      parse_evaluation_path(c.path));
  std::vector<double> value(op.output_components());
  op.apply(*field, config_point(c), value);
  std::string csv;
  for (std::size_t i = 0; i < value.size(); ++i) csv += (i ? "," : "") + format_number(value[i]);
  csv += '\n';
  return emit(c, csv, Json{{"operator", to_string(op.kind())}, {"value", value}});
}

std::string run_converge(const ExperimentConfig& c) {
  const SweepConfig s = sweep_config(c);
  const auto reports = convergence_sweep(s);
  return emit(c, convergence_csv(reports), convergence_json(reports));
}

std::string run_maximal(const ExperimentConfig& c) {
  const FieldPtr field = config_field(c);
  const Box box = c.box.empty() ? field->support_box() : config_box(c);
  const int resolution = c.resolution > 0 ? c.resolution : (c.n == 1 ? 2001 : (c.n == 2 ? 201 : 41));
  std::vector<double> radii = c.radii;
  if (radii.empty()) {
    double shortest = kInfinity;
    for (int k = 0; k < c.n; ++k) shortest = std::min(shortest, box.upper[k] - box.lower[k]);
    radii = geometric_radii(0.5 * shortest, c.radii_count, c.radii_ratio);
  }
  const MaximalReport report = maximal_bound_check(*field, c.maximal_b, box, resolution, radii, c.threads);
  return emit(c, maximal_csv(report), to_json(report));
}

}  // namespace

SweepConfig sweep_config(const ExperimentConfig& c) {
  SweepConfig s;
  s.field = config_field(c);
  s.kind = config_kind(c);
  s.p = c.p;
  s.qs = c.q;
  s.deltas = c.deltas;
  if (!c.box.empty()) s.box = config_box(c);
  s.spacing = c.spacing;
  s.radial_order = c.radial_order;
  s.angular_order = c.angular_order;
  s.sobolev.points_per_axis = c.sobolev_points;
  s.sobolev.threads = c.threads;
  s.refinement_check = c.refine;
  s.threads = c.threads;
  return s;
}

FieldPtr config_field(const ExperimentConfig& c) {
  FieldSpec spec;
  spec.name = c.field;
  spec.dimension = c.n;
  spec.vector = c.vector.value_or(operator_input_components(config_kind(c), c.n) > 1 ||
                                  (c.n == 1 && config_kind(c) == OperatorKind::divergence));
  spec.c = c.c;
  spec.A = c.A;
  spec.b = c.b;
  spec.H = c.H;
  spec.radius = c.radius;
  spec.wave = c.wave;
  if (!c.box.empty() && (c.field == "constant" || c.field == "linear" || c.field == "quadratic"))
    spec.box = config_box(c);
  return make_field(spec);
}

void validate_config(const ExperimentConfig& c) {
  require(std::find(kCommands.begin(), kCommands.end(), c.command) != kCommands.end(),
          "unknown command '" + c.command + "' (expected check-kernel, eval, converge or maximal)");
  check_dimension(c.n);
  require(c.p > 0.0 && c.p < c.n, "kernel exponent p must satisfy 0 < p < n");
  require(c.format == "csv" || c.format == "json", "format must be csv or json");
  require(c.threads >= 0, "threads must be >= 0");
  require(c.radial_order >= 1, "radial order must be >= 1");
  require(c.angular_order >= 0, "angular order must be >= 0");
  const OperatorKind kind = config_kind(c);
  parse_evaluation_path(c.path);
  if (c.command == "eval" || c.command == "converge")
    require(kind != OperatorKind::curl || c.n == 3, "curl requires n = 3");
  if (c.command == "check-kernel" || c.command == "eval") require(c.delta > 0.0, "delta must be positive");
  if (c.command == "eval") require(c.at.size() == std::size_t(c.n), "eval needs --at with n coordinates");
  if (c.command == "converge") {
    require(c.deltas.size() >= 3, "converge needs at least three deltas");
    for (std::size_t i = 1; i < c.deltas.size(); ++i)
      require(c.deltas[i] < c.deltas[i - 1], "deltas must be strictly decreasing");
    require(!c.q.empty(), "converge needs at least one q");
    for (double q : c.q) require(q >= 1.0, "q must be >= 1");
    require(c.spacing >= 0.0, "spacing must be >= 0");
  }
  if (c.command == "maximal") {
    require(c.maximal_b > 1.0, "maximal exponent b must exceed 1");
    require(c.resolution == 0 || c.resolution >= 2, "resolution must be >= 2");
  }
  if (!c.box.empty()) config_box(c);
}

std::string run_experiment(const ExperimentConfig& config) {
  validate_config(config);
  if (config.command == "check-kernel") return run_check_kernel(config);
  if (config.command == "eval") return run_eval(config);
  if (config.command == "converge") return run_converge(config);
  return run_maximal(config);
}

}  // namespace nonlocal
