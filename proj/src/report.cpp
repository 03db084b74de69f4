#include "report.hpp"

#include <cmath>
#include <sstream>

namespace nonlocal {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

namespace {

// JSON has no infinity; q = inf and unbounded ratios are written as strings.
nlohmann::json number_json(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

}  // namespace

nlohmann::json box_json(const Box& box) {
  nlohmann::json lower = nlohmann::json::array(), upper = nlohmann::json::array();
  for (int k = 0; k < box.dimension; ++k) {
    lower.push_back(box.lower[k]);
    upper.push_back(box.upper[k]);
  }
  return {{"lower", lower}, {"upper", upper}};
}

std::string convergence_csv(const std::vector<ConvergenceReport>& reports) {
  std::string out = std::string(kConvergenceCsvHeader) + "\n";
  for (const auto& r : reports)
    for (const auto& row : r.rows) {
      out += format_number(row.delta) + ',' + format_number(row.q) + ',' + format_number(row.error) + ',' +
             format_number(row.sobolev_norm) + ',' + format_number(row.bound) + ',' + format_number(row.ratio) + '\n';
    }
  return out;
}

nlohmann::json to_json(const ConvergenceReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"delta", row.delta},
                    {"error", row.error},
                    {"exact", row.error < kExactThreshold},
                    {"sobolev_norm", row.sobolev_norm},
                    {"bound", row.bound},
                    {"ratio", number_json(row.ratio)}});
  }
  nlohmann::json j;
  j["field"] = r.field;
  j["operator"] = to_string(r.kind);
  j["n"] = r.n;
  j["p"] = r.p;
  j["q"] = number_json(r.q);
  j["c0"] = r.c0;
  j["rows"] = rows;
  if (r.fit) {
    j["fitted_order"] = r.fit->order;
    j["fitted_log_constant"] = r.fit->log_constant;
  } else {
    j["fitted_order"] = "exact";
    j["fitted_log_constant"] = nullptr;
  }
  j["bound_holds"] = r.bound_holds();
  j["max_ratio"] = number_json(r.max_ratio());
  j["convention"] = r.convention;
  j["quadrature"] = {{"radial_order", r.radial_order}, {"angular_order", r.angular_order}};
  nlohmann::json resolution = nlohmann::json::array();
  for (int k = 0; k < r.n; ++k) resolution.push_back(r.resolution[k]);
  j["grid"] = {{"box", box_json(r.box)}, {"resolution", resolution}, {"spacing", r.spacing}};
  if (r.refinement_change) j["refinement_change"] = *r.refinement_change;
  return j;
}

nlohmann::json convergence_json(const std::vector<ConvergenceReport>& reports) {
  if (reports.size() == 1) return to_json(reports.front());
  nlohmann::json all = nlohmann::json::array();
  for (const auto& r : reports) all.push_back(to_json(r));
  return {{"reports", all}};
}

std::string maximal_csv(const MaximalReport& r) {
  return "b,f_norm,mf_norm,ratio\n" + format_number(r.b) + ',' + format_number(r.f_norm) + ',' +
         format_number(r.mf_norm) + ',' + (r.ratio ? format_number(*r.ratio) : std::string("undefined")) + '\n';
}

nlohmann::json to_json(const MaximalReport& r) {
  nlohmann::json j;
  j["b"] = r.b;
  j["f_norm"] = r.f_norm;
  j["mf_norm"] = r.mf_norm;
  j["ratio"] = r.ratio ? nlohmann::json(*r.ratio) : nlohmann::json("undefined");
  j["grid"] = {{"box", box_json(r.box)}, {"resolution", r.resolution}, {"spacing", r.spacing}};
  j["radii"] = r.radii;
  return j;
}

std::string kernel_check_csv(const std::vector<KernelCheckRow>& rows) {
  std::string out = "quantity,index,value,exact,abs_error\n";
  for (const auto& row : rows)
    out += row.quantity + ",\"" + row.index + "\"," + format_number(row.value) + ',' + format_number(row.exact) + ',' +
           format_number(row.abs_error) + '\n';
  return out;
}

nlohmann::json kernel_check_json(const std::vector<KernelCheckRow>& rows) {
  nlohmann::json all = nlohmann::json::array();
  for (const auto& row : rows)
    all.push_back({{"quantity", row.quantity},
                   {"index", row.index},
                   {"value", row.value},
                   {"exact", row.exact},
                   {"abs_error", row.abs_error}});
  return {{"rows", all}};
}

}  // namespace nonlocal
