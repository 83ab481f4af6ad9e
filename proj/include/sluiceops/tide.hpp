#pragma once

#include <cmath>
#include <map>
#include <vector>

#include "sluiceops/discharge.hpp"

namespace sluiceops {

struct TideSpec {
  double mean_level = 0.0;  // m above datum
  double amplitude = 0.0;   // m
  double period = 0.0;      // s
};

// h_sea(t) = mean + amplitude * sin(2 pi t / period)
double sea_level(double t, const TideSpec& tide);

struct SluiceSystem {
  double a_lake = 0.0;   // lake surface area (m^2)
  double q_river = 0.0;  // river inflow (m^3/s)
  int n = 0;             // bay count
  double w = 0.0;        // bay width (m)
  double sill_level = 0.0;  // m above datum
  TideSpec tide;
  double h_lake0 = 0.0;  // initial lake level (m above datum)
  LossCoefficients losses;
  // Overrides for specific gate counts; entrance/exit losses depend on how
  // many bays are active.
  std::map<int, LossCoefficients> losses_per_m;
  double a_max = 3.0;  // gate travel (m)
};

enum class ScenarioMode { constant_opening, pid };

struct PidGains {
  double kp = 0.5, ki = 0.1, kd = 0.0;
};

struct ScenarioConfig {
  ScenarioMode mode = ScenarioMode::constant_opening;
  int m = 1;               // gates opened
  double h_target = 0.0;   // m above datum
  PidGains gains;
  double ramp_duration = 1800.0;  // s
  double dt = 60.0;               // s
  double duration = 0.0;          // s
  double predicted_cd = 0.0;      // initial C_D estimate; <= 0 probes the model
};

struct PidState {
  double integral_sum = 0.0;  // accumulated error (m^3/s)
  double prev_error = 0.0;    // e(t_{i-1})
};

// Explicit Euler step of the lake mass balance.
double step_lake(double h_lake, double q_river, double q_barrier, double a_lake,
                 double dt);

// Mean discharge needed to move the lake from h_start to h_target over the
// window, by lake storage alone (river inflow excluded, as in the planning
// formula).
double required_mean_discharge(double a_lake, double h_start, double h_target,
                               double t_start, double t_end);

// a_const = Q_req / (m C_D w sqrt(2g(h_lake - h_sea))), clamped to [0, a_max].
double plan_constant_opening(double q_req_total, int m, double predicted_cd,
                             double w, double h_lake_pred, double h_sea_pred,
                             double a_max);

// Discrete position-form PID on discharge; the integral freezes while the
// output is clamped to [0, q_max].
double pid_step(PidState& state, double q_set, double q_prev,
                const PidGains& gains, double dt, double q_max);

// Linear ramp from 0 to q_set_final over ramp_duration.
double ramp_setpoint(double q_set_final, double t_since_open,
                     double ramp_duration);

// Opening that passes q_cmd through m gates at the predicted discharge
// coefficient; 0 for nonpositive head, clamped to a_max.
double opening_from_discharge(double q_cmd, int m, double predicted_cd,
                              double w, double h_lake, double h_sea,
                              double a_max);

struct StepRecord {
  double t = 0;
  double h_lake = 0, h_sea = 0;
  double a = 0;        // commanded opening (m)
  double q_total = 0;  // total barrier discharge (m^3/s)
  double q_gate = 0;   // discharge per gate (m^3/s)
  FlowRegime regime = FlowRegime::submerged;
  bool open = false;
  // Solver internals kept for downstream flow analysis.
  double h1 = 0, h2 = 0, h3 = 0, c_c = 0;
};

struct EventSummary {
  double t_start = 0, t_end = 0;
  double v_tot = 0;       // discharged volume (m^3)
  double v_tot_req = 0;   // planned volume (m^3)
  double achieved_cd = 0;
  int open_steps = 0;
  int modular_steps = 0;
  double h_end = 0;       // lake level when the gates closed
  double mean_h_lake = 0, mean_h_sea = 0;  // open-interval averages
  double a_const = 0;     // planned opening (constant scenario)
  bool opening_infeasible = false;  // required opening exceeded gate travel
};

struct ScenarioTimeSeries {
  std::vector<StepRecord> steps;
  std::vector<EventSummary> events;
  double modular_fraction = 0.0;  // over all open steps
  bool target_met = false;
  double h_end_last_event = std::nan("");
  double v_tot_total = 0.0;
  double final_predicted_cd = 0.0;
};

// Achieved mean discharge coefficient of one event: time-average over open
// steps of Q_gate / (a w sqrt(2g head)).
double update_predicted_cd(const std::vector<StepRecord>& event_steps, double w);

ScenarioTimeSeries run_scenario(const SluiceSystem& system,
                                const ScenarioConfig& scenario);

}  // namespace sluiceops
