// Command-line front end for the nonlocal operator library.
//
//   nonlocal-cli [command] [flags]
//
// Commands: check-kernel, eval, converge, maximal. With --config FILE the
// JSON file is read first and any flag given on the command line overrides
// the matching key.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nonlocal/nonlocal.h"

namespace {

using Json = nlohmann::json;

int exit_code(nl_status status) {
  switch (status) {
    case NL_OK: return 0;
    case NL_ERROR_CONFIG: return 2;
    case NL_ERROR_NUMERICAL:
    case NL_ERROR_SINGULAR: return 3;
    default: return 1;
  }
}

const char* kind_name(int code) {
  switch (code) {
    case 2: return "config";
    case 3: return "numerical";
    default: return "internal";
  }
}

int fail(int code, const std::string& message) {
  Json record{{"error", {{"kind", kind_name(code)}, {"message", message}}}, {"exit_code", code}};
  std::cerr << record.dump() << std::endl;
  return code;
}

Json q_json(const std::vector<std::string>& items) {
  Json out = Json::array();
  for (const auto& s : items) {
    if (s == "inf" || s == "infinity") {
      out.push_back("inf");
      continue;
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size()) throw CLI::ValidationError("--q", "not a number or 'inf': " + s);
    out.push_back(v);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonlocal divergence, gradient and curl with power-law kernels"};
  app.set_version_flag("--version", std::string(nl_version()));

  std::string command;
  app.add_option("command", command, "check-kernel | eval | converge | maximal (may come from --config)");
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file; flags override its keys");

  // Each flag fills one key of the JSON config passed to the library.
  Json overrides = Json::object();
  std::vector<std::function<void()>> collect;
  auto scalar = [&](const std::string& flag, const std::string& key, auto sample, const std::string& help) {
    using T = decltype(sample);
    auto value = std::make_shared<T>();
    CLI::Option* opt = app.add_option(flag, *value, help);
    collect.push_back([=, &overrides] {
      if (opt->count() > 0) overrides[key] = *value;
    });
  };
  auto list = [&](const std::string& flag, const std::string& key, const std::string& help) {
    auto value = std::make_shared<std::vector<double>>();
    CLI::Option* opt = app.add_option(flag, *value, help)->delimiter(',');
    collect.push_back([=, &overrides] {
      if (opt->count() > 0) overrides[key] = *value;
    });
  };

  scalar("--n", "n", int{}, "dimension 1..3");
  scalar("--p", "p", double{}, "kernel exponent, 0 < p < n");
  auto q_items = std::make_shared<std::vector<std::string>>();
  CLI::Option* q_opt = app.add_option("--q", *q_items, "L^q exponent(s), comma separated; 'inf' allowed")->delimiter(',');
  scalar("--delta", "delta", double{}, "horizon for check-kernel and eval");
  list("--deltas", "deltas", "strictly decreasing horizons for converge");
  scalar("--op", "op", std::string{}, "div | grad | curl");
  scalar("--path", "path", std::string{}, "direct | convolutional");
  scalar("--field", "field", std::string{}, "constant | linear | quadratic | gaussian | bump | trig-bump | swirl");
  auto vector_flag = std::make_shared<bool>(false);
  CLI::Option* vector_opt = app.add_option("--vector", *vector_flag, "vector-valued field (default: what --op needs)");
  scalar("--c", "c", double{}, "constant value or offset");
  list("--A", "A", "linear part, n*n row-major");
  list("--b", "b", "scalar gradient or vector offset");
  list("--H", "H", "quadratic form");
  scalar("--radius", "radius", double{}, "bump radius");
  list("--wave", "wave", "trig-bump wave vector");
  list("--at", "at", "evaluation point");
  list("--box", "box", "lo1,hi1,...,lon,hin");
  scalar("--spacing", "spacing", double{}, "converge grid spacing");
  scalar("--resolution", "resolution", int{}, "maximal grid points per axis");
  scalar("--radial-order", "radial_order", int{}, "radial quadrature order m");
  scalar("--angular-order", "angular_order", int{}, "angular quadrature order s");
  list("--a", "a", "check-kernel L^a exponents");
  scalar("--maximal-b", "maximal_b", double{}, "maximal-function norm exponent b > 1");
  list("--radii", "radii", "explicit maximal radii");
  scalar("--radii-count", "radii_count", int{}, "geometric ladder length");
  scalar("--radii-ratio", "radii_ratio", double{}, "geometric ladder ratio");
  scalar("--sobolev-points", "sobolev_points", int{}, "Sobolev grid points per axis");
  auto refine = std::make_shared<bool>(false);
  CLI::Option* refine_opt = app.add_flag("--refine", *refine, "also rerun the smallest delta at half spacing");
  scalar("--csv", "csv", std::string{}, "write CSV to this file");
  scalar("--json", "json", std::string{}, "write JSON to this file");
  scalar("--format", "format", std::string{}, "stdout format: csv | json");
  scalar("--threads", "threads", int{}, "worker threads, 0 = all cores");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(2, e.what());
  }

  Json config = Json::object();
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) return fail(2, "cannot open config file '" + config_path + "'");
    try {
      config = Json::parse(in);
    } catch (const Json::exception& e) {
      return fail(2, std::string("config file is not valid JSON: ") + e.what());
    }
    if (!config.is_object()) return fail(2, "config file must hold a JSON object");
  }
  try {
    for (auto& f : collect) f();
    if (q_opt->count() > 0) overrides["q"] = q_json(*q_items);
  } catch (const CLI::ParseError& e) {
    return fail(2, e.what());
  }
  if (vector_opt->count() > 0) overrides["vector"] = *vector_flag;
  if (refine_opt->count() > 0) overrides["refine"] = *refine;
  if (!command.empty()) overrides["command"] = command;
  else if (!config.contains("command")) return fail(2, "a command is required (positional or config key)");
  for (const auto& [key, value] : overrides.items()) config[key] = value;

  char* out = nullptr;
  const nl_status status = nl_run_experiment(config.dump().c_str(), &out);
  if (status != NL_OK) return fail(exit_code(status), nl_last_error());
  std::cout << out;
  nl_string_free(out);
  std::cout.flush();
  return std::cout ? 0 : 1;
}
