#include <doctest.h>

#include <sstream>

#include "theta_quartic/errors.hpp"
#include "theta_quartic/json_io.hpp"

using namespace tq;
using json_io::json;

TEST_CASE("characteristic round trip") {
  const Characteristic m({1, -2, 3}, {0, 1, 4});
  const json j = json_io::to_json(m);
  CHECK(j.dump() == R"({"mp":[1,-2,3],"mpp":[0,1,4]})");
  CHECK(json_io::characteristic_from_json(j) == m);
  CHECK_THROWS_AS(json_io::characteristic_from_json(json{{"mp", {1, 2}}, {"mpp", {0, 0, 0}}}), InputError);
  CHECK_THROWS_AS(json_io::characteristic_from_json(json{{"mp", {1, 2, 0.5}}, {"mpp", {0, 0, 0}}}), InputError);
}

TEST_CASE("tau round trip") {
  Matrix3c t = Complex(0, 1) * Matrix3c::Identity();
  t(0, 1) = t(1, 0) = Complex(0.25, -0.125);
  const PeriodMatrix pm(t);
  std::stringstream ss(json_io::to_json(pm).dump());
  CHECK(json_io::read_tau(ss) == t);
}

TEST_CASE("malformed tau input") {
  std::stringstream broken("{\"tau\": [[1, 2");
  CHECK_THROWS_AS(json_io::read_tau(broken), InputError);
  CHECK_THROWS_AS(json_io::tau_from_json(json{{"tau", {{1, 2, 3}}}}), InputError);
  CHECK_THROWS_AS(json_io::tau_from_json(json{{"tau", {{{{"re", 1}}, 0, 0}, {0, 0, 0}, {0, 0, 0}}}}), InputError);
  CHECK_THROWS_AS(json_io::tau_from_json(json::object()), InputError);
  CHECK_THROWS_AS(json_io::read_tau_file("/nonexistent/tau.json"), InputError);
}

TEST_CASE("pipeline output shape") {
  const PipelineResult r = run_pipeline(random_admissible_tau(4).tau);
  const json frame = json_io::frame_to_json(r);
  CHECK(frame["aronhold"].size() == 7);
  CHECK(frame["a"].size() == 3);
  CHECK(frame["a"][0].size() == 3);
  CHECK(frame["bitangents"].size() == 28);
  CHECK(frame["bitangents"][0]["line"].size() == 3);
  CHECK(frame["quartic"].size() == 15);
  CHECK(frame["xi"].size() == 3);
  CHECK(frame["xi"][0].size() == 3);
  CHECK(frame["k"].size() == 3);
  CHECK(frame["lambda"].size() == 3);
  CHECK(frame["aronhold"][0] == json{{"mp", {1, 1, 1}}, {"mpp", {1, 1, 1}}});

  const json report = json_io::report_to_json(r);
  CHECK(report["lines"].size() == 28);
  CHECK(report["lines"][0]["contacts"].size() == 2);
  CHECK(report["summary"]["pass"] == 28);
  CHECK(report["summary"]["fail"] == 0);
  CHECK(report["summary"]["max_residual"].get<double>() < 1e-6);
}
