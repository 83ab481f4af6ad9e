#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sluiceops/config_file.hpp"
#include "sluiceops/discharge.hpp"
#include "sluiceops/flow_analysis.hpp"
#include "sluiceops/flow_field.hpp"
#include "sluiceops/gate_config.hpp"
#include "sluiceops/pipeline.hpp"
#include "sluiceops/tide.hpp"

namespace {

using nlohmann::json;
using namespace sluiceops;

int cmd_configs(int n, std::optional<int> m, bool symmetric, bool as_json) {
  json out;
  out["bays"] = n;
  out["symmetric"] = symmetric;
  if (m) {
    out["open"] = *m;
    out["count"] = count_configs(n, *m, symmetric);
    out["masks"] = json::array();
    for (const auto& cfg : enumerate_configs(n, *m, symmetric)) {
      out["masks"].push_back(cfg.to_string());
    }
  } else {
    out["total"] = total_configs(n, symmetric);
    json per_m = json::array();
    for (int k = 0; k <= n; ++k) per_m.push_back(count_configs(n, k, symmetric));
    out["count_per_m"] = per_m;
  }
  if (as_json) {
    std::cout << out.dump(2) << "\n";
    return 0;
  }
  if (m) {
    std::cout << "count=" << out["count"].get<std::uint64_t>() << "\n";
    for (const auto& mask : out["masks"]) {
      std::cout << mask.get<std::string>() << "\n";
    }
  } else {
    std::cout << "total=" << out["total"].get<std::uint64_t>() << "\n";
    for (int k = 0; k <= n; ++k) {
      std::cout << "m=" << k << " count="
                << out["count_per_m"][static_cast<std::size_t>(k)]
                       .get<std::uint64_t>()
                << "\n";
    }
  }
  return 0;
}

int cmd_discharge(double h0, double h4, double a, double w, double w_in,
                  double w_out, const std::string& losses_file, double c_c_in,
                  double xi_out, double tol, bool as_json) {
  LossCoefficients losses{c_c_in, xi_out};
  if (!losses_file.empty()) {
    const ConfigFile cfg = ConfigFile::load(losses_file);
    losses.c_c_in = cfg.get_double("c_c_in", losses.c_c_in);
    losses.xi_out = cfg.get_double("xi_out", losses.xi_out);
  }
  GateGeometry geom{w, a, w_in > 0 ? w_in : w, w_out > 0 ? w_out : w, 0.0};
  const DischargeSolution sol = solve_discharge(h0, h4, geom, losses, tol);

  json out;
  out["h0"] = sol.levels.h0;
  out["h1"] = sol.levels.h1;
  out["h2"] = sol.levels.h2;
  out["h3"] = sol.levels.h3;
  out["h4"] = sol.levels.h4;
  out["Q"] = sol.q_total;
  out["c_c"] = sol.c_c;
  out["c_d"] = sol.c_d;
  out["regime"] = sol.regime == FlowRegime::submerged ? "submerged"
                                                      : "modular_limit_reached";
  out["residual"] = sol.residual;
  if (sol.q_mf) out["q_mf"] = *sol.q_mf;
  if (as_json) {
    std::cout << out.dump(2) << "\n";
  } else {
    for (const auto& [key, value] : out.items()) {
      std::cout << key << "=" << value << "\n";
    }
  }
  return 0;
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir,
                 bool as_json) {
  const ConfigFile cfg = ConfigFile::load(config_path);
  SluiceSystem system = system_from_config(cfg);
  const ScenarioConfig scenario = scenario_from_config(cfg, system);
  const ScenarioTimeSeries ts = run_scenario(system, scenario);

  json summary;
  summary["V_tot"] = ts.v_tot_total;
  summary["achieved_cd"] = ts.final_predicted_cd;
  summary["target_met"] = ts.target_met;
  summary["modular_fraction"] = ts.modular_fraction;
  summary["h_end_last_event"] = ts.h_end_last_event;
  summary["events"] = json::array();
  for (const auto& ev : ts.events) {
    summary["events"].push_back({{"t_start", ev.t_start},
                                 {"t_end", ev.t_end},
                                 {"V_tot", ev.v_tot},
                                 {"V_tot_req", ev.v_tot_req},
                                 {"achieved_cd", ev.achieved_cd},
                                 {"open_steps", ev.open_steps},
                                 {"modular_steps", ev.modular_steps},
                                 {"h_end", ev.h_end},
                                 {"a_const", ev.a_const},
                                 {"opening_infeasible", ev.opening_infeasible}});
  }

  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    std::ofstream csv(std::filesystem::path(out_dir) / "timeseries.csv");
    csv << "t,h_lake,h_sea,a,Q_total,regime\n";
    char buf[256];
    for (const auto& s : ts.steps) {
      std::snprintf(buf, sizeof buf, "%.1f,%.6f,%.6f,%.6f,%.6f,%s\n", s.t,
                    s.h_lake, s.h_sea, s.a, s.q_total,
                    !s.open ? "closed"
                            : (s.regime == FlowRegime::modular_limit_reached
                                   ? "modular"
                                   : "submerged"));
      csv << buf;
    }
    std::ofstream(std::filesystem::path(out_dir) / "summary.json")
        << summary.dump(2) << "\n";
  }
  if (as_json || out_dir.empty()) std::cout << summary.dump(2) << "\n";
  return 0;
}

struct AnalyzeArgs {
  std::string field_file, surface_file, curve_file, curve_regime = "small";
  std::string out_dir;
  double gate_x = 0.0, opening = 0.0;
  double h2 = 0.0;
  std::vector<double> alphas;
  double delta = 1.65;
  double stiffness = 0.0, added_rigidity = 0.0, mass = 0.0, added_mass = 0.0;
  double thickness = 0.0;
  double f_min = 2.0, f_max = 5.0;
  bool as_json = false;
};

int cmd_analyze(const AnalyzeArgs& args) {
  const FlowField field = load_flow_field(args.field_file, args.surface_file,
                                          args.gate_x, args.opening);
  json out;
  const double c_c = contraction_from_field(field);
  const double u_vc = vena_velocity(field, c_c);
  out["c_c"] = c_c;
  out["u_vc"] = u_vc;
  const double h2 = args.h2 > 0.0 ? args.h2 : c_c * field.a;
  out["fr"] = froude(u_vc, h2);
  out["h2"] = h2;

  std::vector<double> alphas = args.alphas;
  if (alphas.empty()) alphas = {3.0, 6.0};
  const double depth = field.surface.back() - field.z.front();
  json psi_json = json::array();
  std::vector<StabilityProfile> profiles;
  for (double alpha : alphas) {
    profiles.push_back(
        psi_profile(field, alpha, args.delta, field.gate_x, field.gate_x + 5.0 * depth));
    psi_json.push_back({{"alpha", alpha}, {"psi_max", profiles.back().psi_max}});
  }
  out["psi"] = psi_json;

  double f_gate = 0.0;
  if (args.mass > 0.0 || args.added_mass > 0.0) {
    GateDynamics dyn{args.stiffness, args.added_rigidity, args.mass,
                     args.added_mass, args.thickness, std::nullopt};
    f_gate = natural_frequency(dyn);
    out["f_gate"] = f_gate;
  }
  if (args.thickness > 0.0) {
    const double vr_min = reduced_velocity(u_vc, args.f_max, args.thickness);
    const double vr_max = reduced_velocity(u_vc, args.f_min, args.thickness);
    out["vr_min"] = vr_min;
    out["vr_max"] = vr_max;
    ResponseCurve curve =
        !args.curve_file.empty()
            ? load_response_curve(args.curve_file, args.curve_regime)
            : (args.curve_regime == "large"
                   ? default_response_curve_large_opening()
                   : default_response_curve_small_opening());
    double amp = 0.0;
    for (int i = 0; i <= 200; ++i) {
      amp = std::max(amp,
                     amplitude_lookup(curve, vr_min + (vr_max - vr_min) * i / 200.0));
    }
    out["relative_amplitude_max"] = amp;
    if (f_gate > 0.0) {
      out["vr_at_f_gate"] = reduced_velocity(u_vc, f_gate, args.thickness);
    }
  }

  if (!args.out_dir.empty()) {
    std::filesystem::create_directories(args.out_dir);
    const auto psi_path = std::filesystem::path(args.out_dir) / "psi_profile.csv";
    std::ofstream csv(psi_path);
    csv << "x";
    for (double alpha : alphas) csv << ",psi_alpha_" << alpha;
    csv << "\n";
    for (std::size_t i = 0; i < profiles.front().x.size(); ++i) {
      csv << profiles.front().x[i];
      for (const auto& p : profiles) csv << "," << p.psi[i];
      csv << "\n";
    }
    out["psi_profile_path"] = psi_path.string();
    std::ofstream(std::filesystem::path(args.out_dir) / "analysis.json")
        << out.dump(2) << "\n";
  }
  if (args.as_json || args.out_dir.empty()) std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_pipeline(const std::string& config_path, const std::string& out_dir) {
  const ConfigFile cfg = ConfigFile::load(config_path);
  SluiceSystem system = system_from_config(cfg);
  ScenarioConfig base = scenario_from_config(cfg, system);

  Thresholds thresholds;
  thresholds.psi_max = cfg.get_double("thresholds.psi_max", thresholds.psi_max);
  thresholds.relative_amplitude_max = cfg.get_double(
      "thresholds.relative_amplitude_max", thresholds.relative_amplitude_max);
  thresholds.fr_max = cfg.get_double("thresholds.fr_max", thresholds.fr_max);

  AnalysisSettings analysis;
  analysis.alpha_low = cfg.get_double("analysis.alpha_low", analysis.alpha_low);
  analysis.alpha_high = cfg.get_double("analysis.alpha_high", analysis.alpha_high);
  analysis.delta = cfg.get_double("analysis.delta", analysis.delta);
  analysis.f_min = cfg.get_double("analysis.f_min_hz", analysis.f_min);
  analysis.f_max = cfg.get_double("analysis.f_max_hz", analysis.f_max);
  if (cfg.has("analysis.gate_thickness")) {
    analysis.gate_thickness = cfg.require_double("analysis.gate_thickness");
  }
  if (cfg.has("analysis.curve_small")) {
    analysis.curve_small_path = cfg.get_string("analysis.curve_small", "");
  }
  if (cfg.has("analysis.curve_large")) {
    analysis.curve_large_path = cfg.get_string("analysis.curve_large", "");
  }

  const PipelineResult result =
      run_pipeline(system, base, thresholds, analysis, out_dir);
  for (const auto& o : result.outcomes) {
    std::printf("rank=%d m=%d mode=%s feasible=%s%s%s\n", o.rank, o.m,
                o.mode == ScenarioMode::constant_opening ? "constant" : "pid",
                o.feasible ? "yes" : "no",
                o.infeasible_cause.empty() ? "" : " cause=",
                o.infeasible_cause.c_str());
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Planning and assessment toolkit for multi-gated discharge sluices"};
  app.require_subcommand(1);

  // configs
  auto* configs = app.add_subcommand("configs", "Count and list gate configurations");
  int bays = 0;
  std::optional<int> open_m;
  bool symmetric = false, configs_json = false;
  configs->add_option("--bays", bays, "Number of bays")->required();
  configs->add_option("--open", open_m, "Number of gates to open");
  configs->add_flag("--symmetric", symmetric, "Only symmetric patterns");
  configs->add_flag("--json", configs_json, "JSON output");

  // discharge
  auto* discharge = app.add_subcommand("discharge", "Solve submerged gate discharge");
  double h0 = 0, h4 = 0, a = 0, w = 0, w_in = 0, w_out = 0;
  double c_c_in = 0.9, xi_out = 1.0, tol = 1e-6;
  std::string losses_file;
  bool discharge_json = false;
  discharge->add_option("--h0", h0, "Upstream depth above sill (m)")->required();
  discharge->add_option("--h4", h4, "Downstream depth above sill (m)")->required();
  discharge->add_option("--opening", a, "Gate opening (m)")->required();
  discharge->add_option("--width", w, "Bay width (m)")->required();
  discharge->add_option("--w-in", w_in, "Approach width (m), default = width");
  discharge->add_option("--w-out", w_out, "Exit width (m), default = width");
  discharge->add_option("--c-c-in", c_c_in, "Entrance contraction coefficient");
  discharge->add_option("--xi-out", xi_out, "Exit loss coefficient");
  discharge->add_option("--losses", losses_file, "Loss-coefficient config file");
  discharge->add_option("--tol", tol, "Residual tolerance on h2 (m)");
  discharge->add_flag("--json", discharge_json, "JSON output");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Run a drawdown scenario");
  std::string sim_config, sim_out;
  bool sim_json = false;
  simulate->add_option("--config", sim_config, "Scenario config file")->required();
  simulate->add_option("--out", sim_out, "Output directory");
  simulate->add_flag("--json", sim_json, "Print summary JSON");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Flow-impact diagnostics for a 2DV field");
  AnalyzeArgs aa;
  analyze->add_option("--field", aa.field_file, "Field CSV (x,z,u,w,k)")->required();
  analyze->add_option("--surface", aa.surface_file, "Surface CSV (x,eta)")->required();
  analyze->add_option("--gate-x", aa.gate_x, "Gate plane abscissa (m)");
  analyze->add_option("--opening", aa.opening, "Gate opening (m)")->required();
  analyze->add_option("--h2", aa.h2, "Control-section depth for Fr (m)");
  analyze->add_option("--alpha", aa.alphas, "Turbulence impact parameter(s)");
  analyze->add_option("--delta", aa.delta, "Relative submerged stone density");
  analyze->add_option("--curve", aa.curve_file, "Response curve CSV (vr,relative_amplitude)");
  analyze->add_option("--curve-regime", aa.curve_regime, "small|large opening curve");
  analyze->add_option("--stiffness", aa.stiffness, "Structural stiffness (N/m)");
  analyze->add_option("--added-rigidity", aa.added_rigidity, "Added rigidity (N/m)");
  analyze->add_option("--mass", aa.mass, "Gate mass (kg)");
  analyze->add_option("--added-mass", aa.added_mass, "Added water mass (kg)");
  analyze->add_option("--thickness", aa.thickness, "Gate-bottom thickness L (m)");
  analyze->add_option("--fmin", aa.f_min, "Lower response frequency (Hz)");
  analyze->add_option("--fmax", aa.f_max, "Upper response frequency (Hz)");
  analyze->add_option("--out", aa.out_dir, "Output directory");
  analyze->add_flag("--json", aa.as_json, "JSON output");

  // pipeline
  auto* pipeline = app.add_subcommand("pipeline", "Enumerate, simulate, analyze and rank");
  std::string pipe_config, pipe_out;
  pipeline->add_option("--config", pipe_config, "Pipeline config file")->required();
  pipeline->add_option("--out", pipe_out, "Output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*configs) return cmd_configs(bays, open_m, symmetric, configs_json);
    if (*discharge) {
      return cmd_discharge(h0, h4, a, w, w_in, w_out, losses_file, c_c_in,
                           xi_out, tol, discharge_json);
    }
    if (*simulate) return cmd_simulate(sim_config, sim_out, sim_json);
    if (*analyze) return cmd_analyze(aa);
    if (*pipeline) return cmd_pipeline(pipe_config, pipe_out);
  } catch (const sluiceops::ConvergenceError& e) {
    std::cerr << "solver failure: " << e.what()
              << " (residual " << e.residual() << ")\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
