#include <doctest.h>

#include "netsim/errors.hpp"
#include "netsim/scenario.hpp"

using namespace netsim;

TEST_CASE("empty scenario is the paper baseline") {
  const Scenario sc = parse_scenario("");

  // The constants cited across the configuration, in one place.
  CHECK(sc.sim.control_step == 0.02);
  CHECK(sc.sim.substeps == 20);
  CHECK(sc.sim.timeout == 600.0);
  CHECK(sc.sim.gains.thrust_limit == 20.0);
  CHECK(sc.sim.gains.isp == 250.0);
  CHECK(sc.sim.gains.g0 == 9.80665);
  CHECK(sc.sim.gains.kp == 1e-2);
  CHECK(sc.sim.gains.ki == 1e-4);
  CHECK(sc.sim.gains.kd == 1e-3);
  CHECK(sc.sim.gains.lambda == 1e-2);
  CHECK(sc.sim.gains.k_sw == 3e-2);
  CHECK(sc.sim.gains.sigma == 1e-2);
  CHECK(sc.sim.net.node_mass == 0.1);
  CHECK(sc.sim.net.corner_mass == 350.0);
  CHECK(sc.sim.net.rows == 10);
  CHECK(sc.sim.net.cols == 10);
  CHECK(sc.sim.debris.mass == 7821.0);
  CHECK(sc.sim.orbit.omega == 0.0011);
  CHECK(sc.sim.orbit.r0_km == 7171.0);
  CHECK(sc.sim.elastic.young_modulus == 10e3);
  CHECK(sc.sim.elastic.poisson_ratio == 0.3);
  CHECK(sc.sim.elastic.damping == 1e-2);
  CHECK(sc.sim.guidance.leftover_angle_threshold ==
        doctest::Approx(36.0 * M_PI / 180.0).epsilon(1e-15));
  CHECK(sc.sim.guidance.area_fraction_threshold == 0.8);
  CHECK(sc.sim.guidance.capture_corner_distance == 8.0);
  CHECK(sc.sim.guidance.capture_velocity_tol == 0.1);
  CHECK(sc.sim.guidance.capture_sustain_steps == 200);
  CHECK(sc.batch.samples == 200);
  CHECK(sc.batch.sphere_radius == 5.0);
  CHECK(sc.batch.combinations.size() == 6);

  SUBCASE("whitespace only is also the baseline") {
    const Scenario ws = parse_scenario("  \n\t ");
    CHECK(ws.sim.timeout == 600.0);
  }
}

TEST_CASE("overrides are honored") {
  const Scenario sc = parse_scenario(R"({
    "controller": "pid",
    "net_model": "shell",
    "gains": {"kp": 0.5},
    "net": {"side_length": 12.0, "offset": [0, 0, 5]},
    "sim": {"timeout": 60},
    "batch": {"samples": 10, "combinations": ["smc+shell"]}
  })");

  CHECK(sc.sim.gains.kind == ControllerKind::Pid);
  CHECK(sc.sim.model == NetModelKind::Shell);
  CHECK(sc.sim.gains.kp == 0.5);
  CHECK(sc.sim.gains.ki == 1e-4);  // untouched default
  CHECK(sc.sim.net.side_length == 12.0);
  CHECK(sc.sim.net.offset.z == 5.0);
  CHECK(sc.sim.timeout == 60.0);
  CHECK(sc.batch.samples == 10);
  REQUIRE(sc.batch.combinations.size() == 1);
  CHECK(sc.batch.combinations[0].controller == ControllerKind::Smc);
  CHECK(sc.batch.combinations[0].model == NetModelKind::Shell);
}

TEST_CASE("smc form switch is reachable from the scenario") {
  const Scenario sc =
      parse_scenario(R"({"gains": {"smc_form": "paper", "smc_mass_scaled": false}})");
  CHECK(sc.sim.gains.smc_form == SmcForm::PaperEq8);
  CHECK_FALSE(sc.sim.gains.smc_mass_scaled);
}

TEST_CASE("rejections name the offending key") {
  SUBCASE("negative mass") {
    CHECK_THROWS_WITH_AS(parse_scenario(R"({"net": {"node_mass": -0.1}})"),
                         doctest::Contains("net.node_mass"), ConfigError);
  }
  SUBCASE("unknown top-level key") {
    CHECK_THROWS_WITH_AS(parse_scenario(R"({"nett": {}})"), doctest::Contains("nett"),
                         ConfigError);
  }
  SUBCASE("unknown nested key") {
    CHECK_THROWS_WITH_AS(parse_scenario(R"({"net": {"spacing": 1.0}})"),
                         doctest::Contains("net.spacing"), ConfigError);
  }
  SUBCASE("wrong type") {
    CHECK_THROWS_WITH_AS(parse_scenario(R"({"net": {"rows": "ten"}})"),
                         doctest::Contains("net.rows"), ConfigError);
  }
  SUBCASE("bad enum value") {
    CHECK_THROWS_WITH_AS(parse_scenario(R"({"controller": "lqr"})"),
                         doctest::Contains("lqr"), ConfigError);
  }
  SUBCASE("parse error reports the line") {
    CHECK_THROWS_WITH_AS(parse_scenario("{\n  \"net\": {\n"), doctest::Contains("line"),
                         ConfigError);
  }
  SUBCASE("empty geometry") {
    CHECK_THROWS_WITH_AS(parse_scenario(R"({"debris": {"geometry": []}})"),
                         doctest::Contains("debris.geometry"), ConfigError);
  }
}

TEST_CASE("effective config echo round-trips") {
  const Scenario defaults = parse_scenario("");
  const std::string echoed = scenario_text(defaults);
  const Scenario reloaded = parse_scenario(echoed);

  CHECK(scenario_text(reloaded) == echoed);

  SUBCASE("round-trip preserves overrides") {
    const Scenario sc = parse_scenario(
        R"({"controller": "pid", "gains": {"kp": 0.123}, "net": {"offset": [1, 2, 3]}})");
    const Scenario again = parse_scenario(scenario_text(sc));
    CHECK(again.sim.gains.kind == ControllerKind::Pid);
    CHECK(again.sim.gains.kp == 0.123);
    CHECK(again.sim.net.offset.y == 2.0);
    CHECK(scenario_text(again) == scenario_text(sc));
  }
}

TEST_CASE("debris geometry is configurable as a box list") {
  const Scenario sc = parse_scenario(R"({
    "debris": {"geometry": [
      {"half_extents": [1, 2, 3], "offset": [0, 0, 0]},
      {"half_extents": [0.5, 0.5, 0.5], "offset": [0, 3, 0]}
    ]}
  })");
  REQUIRE(sc.sim.debris.geometry.primitives.size() == 2);
  CHECK(sc.sim.debris.geometry.primitives[0].half_extents.y == 2.0);
  CHECK(sc.sim.debris.geometry.primitives[1].offset.y == 3.0);
}
