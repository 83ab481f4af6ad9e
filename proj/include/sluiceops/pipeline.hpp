#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sluiceops/config_file.hpp"
#include "sluiceops/flow_analysis.hpp"
#include "sluiceops/tide.hpp"

namespace sluiceops {

struct Thresholds {
  double psi_max = 0.35;
  double relative_amplitude_max = 0.5;
  double fr_max = 1.0;
};

struct AnalysisSettings {
  double alpha_low = 3.0;
  double alpha_high = 6.0;
  double delta = 1.65;  // (rho_s - rho_w)/rho_w
  double f_min = 2.0;   // Hz, structural response band
  double f_max = 5.0;
  // Gate-bottom thickness has no defensible default; the vibration metrics
  // are skipped when it is absent.
  std::optional<double> gate_thickness;
  std::optional<std::string> curve_small_path;
  std::optional<std::string> curve_large_path;
  double small_opening_limit = 0.4;  // a/h3 below this uses the small curve
};

struct ScenarioOutcome {
  int m = 0;
  ScenarioMode mode = ScenarioMode::constant_opening;
  bool feasible = false;
  std::string infeasible_cause;  // target_unmet | modular_dominated | solver_failure
  bool target_met = false;
  double v_tot = 0.0;
  double achieved_cd = 0.0;
  double modular_fraction = 0.0;
  double h_end = 0.0;

  // Analysis at the max-head instant (feasible scenarios only).
  double t_sel = 0.0, head_sel = 0.0, a_sel = 0.0, q_gate_sel = 0.0;
  double h1_sel = 0.0, h2_sel = 0.0, h3_sel = 0.0;
  double c_c_field = 0.0, u_vc = 0.0, fr = 0.0;
  std::optional<double> vr_min, vr_max, amp_max;
  double psi_max_low = 0.0, psi_max_high = 0.0;

  bool pass_psi = false, pass_amp = false, pass_fr = false;
  int pass_count = 0;
  int rank = 0;
};

struct PipelineResult {
  std::vector<ScenarioOutcome> outcomes;  // sorted by rank after ranking
  int exit_code = 0;  // 0 ok, 2 no feasible configuration, 3 solver failure
};

// Simulates both scenarios for every m in 1..n, marks infeasible options,
// analyses a synthetic flow field at the max-head instant of each feasible
// one, applies the thresholds and ranks the outcomes. When out_dir is
// nonempty, writes report.json, report.md and per-scenario CSV artifacts.
PipelineResult run_pipeline(const SluiceSystem& system,
                            const ScenarioConfig& base_scenario,
                            const Thresholds& thresholds,
                            const AnalysisSettings& analysis,
                            const std::string& out_dir);

// Ranking: feasibility first, then threshold pass count, then smallest
// maximum Psi, tie-broken by (m, mode). Returns indices in rank order.
std::vector<std::size_t> compare_scenarios(
    const std::vector<ScenarioOutcome>& outcomes);

// Built-in fictitious response curves for the two opening regimes; used when
// no curve files are configured.
ResponseCurve default_response_curve_small_opening();
ResponseCurve default_response_curve_large_opening();

}  // namespace sluiceops
