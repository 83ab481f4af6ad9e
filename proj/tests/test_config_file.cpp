#include <doctest.h>

#include <stdexcept>

#include "sluiceops/config_file.hpp"

using namespace sluiceops;

namespace {

const char* kDemoText = R"(
# comment line
a_lake = 1.9e7
q_river = 100      # trailing comment
bays = 7
bay_width = 22.5
sill_level = 3.0
a_max = 3.0
tide.mean = 6.1
tide.amplitude = 0.6
tide.period_h = 12.5
losses.c_c_in = 0.632
losses.xi_out = 0.19
losses.m2.c_c_in = 0.45
h_lake0 = 6.1
scenario.mode = pid
scenario.m = 4
scenario.h_target = 6.0
pid.kp = 0.5
pid.ki = 0.1
pid.kd = 0.0
pid.ramp_s = 1800
dt_s = 60
cycles = 4
)";

}  // namespace

TEST_CASE("key-value parsing with comments and fallbacks") {
  const ConfigFile cfg = ConfigFile::from_string(kDemoText);
  CHECK(cfg.has("a_lake"));
  CHECK_FALSE(cfg.has("nonexistent"));
  CHECK(cfg.require_double("a_lake") == doctest::Approx(1.9e7));
  CHECK(cfg.get_double("q_river", 0.0) == doctest::Approx(100.0));
  CHECK(cfg.get_double("missing", 7.5) == 7.5);
  CHECK(cfg.get_int("bays", 0) == 7);
  CHECK(cfg.get_string("scenario.mode", "") == "pid");
  CHECK_THROWS_AS(cfg.require_double("missing"), std::runtime_error);
}

TEST_CASE("system construction from config keys") {
  const ConfigFile cfg = ConfigFile::from_string(kDemoText);
  const SluiceSystem sys = system_from_config(cfg);
  CHECK(sys.a_lake == doctest::Approx(1.9e7));
  CHECK(sys.q_river == doctest::Approx(100.0));
  CHECK(sys.n == 7);
  CHECK(sys.w == doctest::Approx(22.5));
  CHECK(sys.sill_level == doctest::Approx(3.0));
  CHECK(sys.tide.mean_level == doctest::Approx(6.1));
  CHECK(sys.tide.amplitude == doctest::Approx(0.6));
  CHECK(sys.tide.period == doctest::Approx(12.5 * 3600.0));
  CHECK(sys.h_lake0 == doctest::Approx(6.1));
  CHECK(sys.losses.c_c_in == doctest::Approx(0.632));
  CHECK(sys.losses.xi_out == doctest::Approx(0.19));
  // Only m = 2 carries an override; it inherits the shared xi_out.
  REQUIRE(sys.losses_per_m.count(2) == 1);
  CHECK(sys.losses_per_m.at(2).c_c_in == doctest::Approx(0.45));
  CHECK(sys.losses_per_m.at(2).xi_out == doctest::Approx(0.19));
  CHECK(sys.losses_per_m.count(3) == 0);
}

TEST_CASE("scenario construction from config keys") {
  const ConfigFile cfg = ConfigFile::from_string(kDemoText);
  const SluiceSystem sys = system_from_config(cfg);
  const ScenarioConfig sc = scenario_from_config(cfg, sys);
  CHECK(sc.mode == ScenarioMode::pid);
  CHECK(sc.m == 4);
  CHECK(sc.h_target == doctest::Approx(6.0));
  CHECK(sc.gains.kp == doctest::Approx(0.5));
  CHECK(sc.gains.ki == doctest::Approx(0.1));
  CHECK(sc.ramp_duration == doctest::Approx(1800.0));
  CHECK(sc.dt == doctest::Approx(60.0));
  CHECK(sc.duration == doctest::Approx(4.0 * 12.5 * 3600.0));
}

TEST_CASE("per-m loss lookup falls back to the shared coefficients") {
  const ConfigFile cfg = ConfigFile::from_string(kDemoText);
  const LossCoefficients l2 = losses_for_m(cfg, 2);
  CHECK(l2.c_c_in == doctest::Approx(0.45));
  CHECK(l2.xi_out == doctest::Approx(0.19));
  const LossCoefficients l5 = losses_for_m(cfg, 5);
  CHECK(l5.c_c_in == doctest::Approx(0.632));
  CHECK(l5.xi_out == doctest::Approx(0.19));
}

TEST_CASE("missing required keys are reported") {
  const ConfigFile cfg = ConfigFile::from_string("bays = 3\n");
  CHECK_THROWS_AS(system_from_config(cfg), std::runtime_error);
}
