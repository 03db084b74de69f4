#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "experiment.hpp"

using namespace nonlocal;
using nlohmann::json;

TEST_CASE("config json round trip") {
  ExperimentConfig c;
  c.command = "eval";
  c.n = 3;
  c.p = 1.5;
  c.q = {1.0, kInfinity};
  c.op = "curl";
  c.field = "linear";
  c.A = {0, -1, 0, 1, 0, 0, 0, 0, 0};
  c.at = {0.1, 0.2, 0.3};
  c.c = 0.5;
  c.threads = 2;
  const json j = config_to_json(c);
  CHECK(j.at("q")[1] == "inf");
  const ExperimentConfig back = config_from_json(j);
  CHECK(config_to_json(back) == j);
  CHECK(back.q[1] == kInfinity);
  CHECK(back.c.value() == 0.5);
  CHECK_FALSE(back.vector.has_value());
}

TEST_CASE("config parsing is strict") {
  CHECK_THROWS_AS(config_from_json(json{{"bogus", 1}}), PreconditionError);
  CHECK_THROWS_AS(config_from_json(json{{"n", "three"}}), PreconditionError);
  CHECK_THROWS_AS(config_from_json(json{{"q", {"sometimes"}}}), PreconditionError);
  CHECK_THROWS_AS(config_from_json(json::array()), PreconditionError);
  CHECK(config_from_json(json{{"q", {"inf", 2}}}).q == std::vector<double>{kInfinity, 2.0});
}

TEST_CASE("merge keeps unspecified keys") {
  ExperimentConfig c;
  c.n = 2;
  c.p = 1.0;
  merge_config_json(c, json{{"p", 0.7}});
  CHECK(c.n == 2);
  CHECK(c.p == 0.7);
}

TEST_CASE("validation") {
  ExperimentConfig c;
  c.command = "eval";
  c.at = {0.0};
  CHECK_NOTHROW(validate_config(c));
  c.p = 1.0;
  CHECK_THROWS_AS(validate_config(c), PreconditionError);
  c.p = 0.5;
  c.command = "integrate";
  CHECK_THROWS_AS(validate_config(c), PreconditionError);

  ExperimentConfig curl;
  curl.n = 2;
  curl.p = 1.0;
  curl.op = "curl";
  CHECK_THROWS_WITH_AS(validate_config(curl), "curl requires n = 3", PreconditionError);

  ExperimentConfig conv;
  conv.deltas = {0.4, 0.2};
  CHECK_THROWS_AS(validate_config(conv), PreconditionError);
  conv.deltas = {0.4, 0.2, 0.3};
  CHECK_THROWS_AS(validate_config(conv), PreconditionError);

  ExperimentConfig max;
  max.command = "maximal";
  max.maximal_b = 1.0;
  CHECK_THROWS_AS(validate_config(max), PreconditionError);
}

TEST_CASE("eval of a linear divergence") {
  ExperimentConfig c;
  c.command = "eval";
  c.n = 2;
  c.p = 1.0;
  c.delta = 0.1;
  c.op = "div";
  c.field = "linear";
  c.A = {2, 0, 0, 3};
  c.at = {0.3, -0.2};
  std::istringstream out(run_experiment(c));
  double v = 0.0;
  out >> v;
  CHECK(v == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("check-kernel output") {
  ExperimentConfig c;
  c.command = "check-kernel";
  c.n = 2;
  c.p = 1.0;
  c.delta = 0.5;
  c.format = "json";
  const json rows = json::parse(run_experiment(c));
  int second = 0;
  for (const auto& r : rows.at("rows")) {
    CHECK(r.at("abs_error").get<double>() <= 1e-10);
    if (r.at("quantity") == "second_moment") ++second;
  }
  CHECK(second == 4);
}

TEST_CASE("converge writes files") {
  ExperimentConfig c;
  c.command = "converge";
  c.deltas = {0.4, 0.2, 0.1};
  c.csv = "test_experiment_out.csv";
  c.json = "test_experiment_out.json";
  const std::string stdout_text = run_experiment(c);
  std::ifstream csv(c.csv);
  std::stringstream s;
  s << csv.rdbuf();
  CHECK(s.str() == stdout_text);
  std::ifstream js(c.json);
  const json j = json::parse(js);
  CHECK(j.at("field") == "gaussian");
  CHECK(j.at("rows").size() == 3);
  std::remove(c.csv.c_str());
  std::remove(c.json.c_str());
}
