#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "analysis.hpp"
#include "maximal.hpp"

namespace nonlocal {

/// One line of the check-kernel table.
struct KernelCheckRow {
  std::string quantity;  ///< "moment" or "la_norm"
  std::string index;     ///< e.g. "alpha=(1,0,0) j=1" or "a=1.2"
  double value = 0.0;
  double exact = 0.0;
  double abs_error = 0.0;
};

/// CSV header of convergence output.
inline constexpr const char* kConvergenceCsvHeader = "delta,q,error,sobolev_norm,bound,ratio";

/// Formats with 17 significant digits; "inf"/"-inf"/"nan" for non-finite values.
std::string format_number(double v);

/// Rows of every report in order, one header line.
std::string convergence_csv(const std::vector<ConvergenceReport>& reports);
nlohmann::json to_json(const ConvergenceReport& report);
/// A single report as an object; several under "reports".
nlohmann::json convergence_json(const std::vector<ConvergenceReport>& reports);

std::string maximal_csv(const MaximalReport& report);
nlohmann::json to_json(const MaximalReport& report);

std::string kernel_check_csv(const std::vector<KernelCheckRow>& rows);
nlohmann::json kernel_check_json(const std::vector<KernelCheckRow>& rows);

nlohmann::json box_json(const Box& box);

}  // namespace nonlocal
