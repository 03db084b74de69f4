#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "analysis.hpp"
#include "fields.hpp"

namespace nonlocal {

/// Everything one run of the command-line tool needs. Each member is one
/// CLI flag and one JSON key (the key is the flag without leading dashes,
/// with '-' replaced by '_').
struct ExperimentConfig {
  std::string command = "converge";  ///< check-kernel, eval, converge, maximal
  int n = 1;
  double p = 0.5;
  std::vector<double> q{2.0};
  double delta = 0.1;  ///< check-kernel and eval
  std::vector<double> deltas{0.4, 0.2, 0.1, 0.05};
  std::string op = "grad";
  std::string path = "direct";

  std::string field = "gaussian";
  std::optional<bool> vector;  ///< default: what `op` consumes
  std::optional<double> c;
  std::vector<double> A;
  std::vector<double> b;
  std::vector<double> H;
  double radius = 10.0;
  std::vector<double> wave;

  std::vector<double> at;   ///< eval point
  std::vector<double> box;  ///< lo1,hi1,...,lon,hin
  double spacing = 0.0;     ///< converge grid spacing; 0 = default
  int resolution = 0;       ///< maximal grid points per axis; 0 = default
  int radial_order = 8;
  int angular_order = 0;    ///< 0 = default per dimension
  std::vector<double> a{1.0, 1.2};  ///< check-kernel L^a exponents
  double maximal_b = 2.0;
  std::vector<double> radii;  ///< explicit maximal radii; empty = geometric ladder
  int radii_count = 32;
  double radii_ratio = 1.3;
  int sobolev_points = 0;
  bool refine = false;

  std::string csv;     ///< output file for CSV
  std::string json;    ///< output file for JSON
  std::string format = "csv";  ///< stdout format
  int threads = 1;     ///< 0 = hardware concurrency
};

/// Strict parse: unknown keys and wrongly typed values throw PreconditionError.
ExperimentConfig config_from_json(const nlohmann::json& j);
/// Applies the keys present in `j` on top of `base`.
void merge_config_json(ExperimentConfig& base, const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& config);

/// Checks every parameter against the preconditions of the modules it feeds.
void validate_config(const ExperimentConfig& config);

/// The field described by config (name, coefficients, op-implied vector flag).
FieldPtr config_field(const ExperimentConfig& config);

/// Sweep parameters of a converge config.
SweepConfig sweep_config(const ExperimentConfig& config);

/// Runs the command, writes requested files, returns the text for stdout.
std::string run_experiment(const ExperimentConfig& config);

}  // namespace nonlocal
