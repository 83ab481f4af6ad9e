#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "sluiceops/config_file.hpp"
#include "sluiceops/discharge.hpp"
#include "sluiceops/flow_analysis.hpp"
#include "sluiceops/flow_field.hpp"
#include "sluiceops/gate_config.hpp"
#include "sluiceops/pipeline.hpp"
#include "sluiceops/tide.hpp"

namespace py = pybind11;
using namespace sluiceops;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Discharge sluice planning and flow-impact assessment";
  m.attr("GRAVITY") = kGravity;

  py::register_exception<NoSolutionError>(m, "NoSolutionError");
  py::register_exception<ConvergenceError>(m, "ConvergenceError");

  // gate_config
  py::class_<GateConfiguration>(m, "GateConfiguration")
      .def_readonly("n", &GateConfiguration::n)
      .def_readonly("open_mask", &GateConfiguration::open_mask)
      .def("open_count", &GateConfiguration::open_count)
      .def("is_symmetric", &GateConfiguration::is_symmetric)
      .def("__str__", &GateConfiguration::to_string)
      .def("__repr__", [](const GateConfiguration& c) {
        return "GateConfiguration('" + c.to_string() + "')";
      });
  m.def("count_configs", &count_configs, py::arg("n"), py::arg("m"),
        py::arg("symmetric") = false);
  m.def("total_configs", &total_configs, py::arg("n"),
        py::arg("symmetric") = false);
  m.def("enumerate_configs", &enumerate_configs, py::arg("n"), py::arg("m"),
        py::arg("symmetric") = false);

  // discharge
  py::class_<GateGeometry>(m, "GateGeometry")
      .def(py::init([](double w, double a, double w_in, double w_out,
                       double sill_level) {
             return GateGeometry{w, a, w_in > 0 ? w_in : w,
                                 w_out > 0 ? w_out : w, sill_level};
           }),
           py::arg("w"), py::arg("a"), py::arg("w_in") = 0.0,
           py::arg("w_out") = 0.0, py::arg("sill_level") = 0.0)
      .def_readwrite("w", &GateGeometry::w)
      .def_readwrite("a", &GateGeometry::a)
      .def_readwrite("w_in", &GateGeometry::w_in)
      .def_readwrite("w_out", &GateGeometry::w_out)
      .def_readwrite("sill_level", &GateGeometry::sill_level);
  py::class_<LossCoefficients>(m, "LossCoefficients")
      .def(py::init([](double c_c_in, double xi_out) {
             return LossCoefficients{c_c_in, xi_out};
           }),
           py::arg("c_c_in") = 0.9, py::arg("xi_out") = 1.0)
      .def_readwrite("c_c_in", &LossCoefficients::c_c_in)
      .def_readwrite("xi_out", &LossCoefficients::xi_out)
      .def("xi_in", &LossCoefficients::xi_in);
  py::class_<StationLevels>(m, "StationLevels")
      .def_readonly("h0", &StationLevels::h0)
      .def_readonly("h1", &StationLevels::h1)
      .def_readonly("h2", &StationLevels::h2)
      .def_readonly("h3", &StationLevels::h3)
      .def_readonly("h4", &StationLevels::h4);
  py::enum_<FlowRegime>(m, "FlowRegime")
      .value("submerged", FlowRegime::submerged)
      .value("modular_limit_reached", FlowRegime::modular_limit_reached);
  py::class_<DischargeSolution>(m, "DischargeSolution")
      .def_readonly("levels", &DischargeSolution::levels)
      .def_readonly("q_total", &DischargeSolution::q_total)
      .def_readonly("c_c", &DischargeSolution::c_c)
      .def_readonly("c_d", &DischargeSolution::c_d)
      .def_readonly("regime", &DischargeSolution::regime)
      .def_readonly("residual", &DischargeSolution::residual)
      .def_readonly("q_mf", &DischargeSolution::q_mf);
  m.def("contraction_coefficient", &contraction_coefficient, py::arg("ratio"));
  m.def("discharge_coefficient", &discharge_coefficient, py::arg("c_c"),
        py::arg("ratio"));
  m.def("simple_submerged_discharge", &simple_submerged_discharge,
        py::arg("c_d"), py::arg("a"), py::arg("w"), py::arg("h_up"),
        py::arg("h_down"));
  m.def("nago_ce", &nago_ce, py::arg("c_d"), py::arg("h1"), py::arg("h3"));
  m.def("solve_discharge", &solve_discharge, py::arg("h0"), py::arg("h4"),
        py::arg("geometry"), py::arg("losses") = LossCoefficients{},
        py::arg("tol") = 1e-6);

  // tide
  py::class_<TideSpec>(m, "TideSpec")
      .def(py::init([](double mean_level, double amplitude, double period) {
             return TideSpec{mean_level, amplitude, period};
           }),
           py::arg("mean_level"), py::arg("amplitude"), py::arg("period"))
      .def_readwrite("mean_level", &TideSpec::mean_level)
      .def_readwrite("amplitude", &TideSpec::amplitude)
      .def_readwrite("period", &TideSpec::period);
  py::class_<SluiceSystem>(m, "SluiceSystem")
      .def(py::init([](double a_lake, double q_river, int n, double w,
                       double sill_level, TideSpec tide, double h_lake0,
                       LossCoefficients losses, double a_max) {
             SluiceSystem sys;
             sys.a_lake = a_lake;
             sys.q_river = q_river;
             sys.n = n;
             sys.w = w;
             sys.sill_level = sill_level;
             sys.tide = tide;
             sys.h_lake0 = h_lake0;
             sys.losses = losses;
             sys.a_max = a_max;
             return sys;
           }),
           py::arg("a_lake"), py::arg("q_river"), py::arg("n"), py::arg("w"),
           py::arg("sill_level"), py::arg("tide"), py::arg("h_lake0"),
           py::arg("losses") = LossCoefficients{}, py::arg("a_max") = 3.0)
      .def_readwrite("a_lake", &SluiceSystem::a_lake)
      .def_readwrite("q_river", &SluiceSystem::q_river)
      .def_readwrite("n", &SluiceSystem::n)
      .def_readwrite("w", &SluiceSystem::w)
      .def_readwrite("sill_level", &SluiceSystem::sill_level)
      .def_readwrite("tide", &SluiceSystem::tide)
      .def_readwrite("h_lake0", &SluiceSystem::h_lake0)
      .def_readwrite("losses", &SluiceSystem::losses)
      .def_readwrite("losses_per_m", &SluiceSystem::losses_per_m)
      .def_readwrite("a_max", &SluiceSystem::a_max);
  py::enum_<ScenarioMode>(m, "ScenarioMode")
      .value("constant_opening", ScenarioMode::constant_opening)
      .value("pid", ScenarioMode::pid);
  py::class_<PidGains>(m, "PidGains")
      .def(py::init([](double kp, double ki, double kd) {
             return PidGains{kp, ki, kd};
           }),
           py::arg("kp") = 0.5, py::arg("ki") = 0.1, py::arg("kd") = 0.0)
      .def_readwrite("kp", &PidGains::kp)
      .def_readwrite("ki", &PidGains::ki)
      .def_readwrite("kd", &PidGains::kd);
  py::class_<ScenarioConfig>(m, "ScenarioConfig")
      .def(py::init([](ScenarioMode mode, int mm, double h_target,
                       PidGains gains, double ramp_duration, double dt,
                       double duration, double predicted_cd) {
             return ScenarioConfig{mode, mm,       h_target, gains,
                                   ramp_duration, dt, duration, predicted_cd};
           }),
           py::arg("mode"), py::arg("m"), py::arg("h_target"),
           py::arg("gains") = PidGains{}, py::arg("ramp_duration") = 1800.0,
           py::arg("dt") = 60.0, py::arg("duration") = 0.0,
           py::arg("predicted_cd") = 0.0)
      .def_readwrite("mode", &ScenarioConfig::mode)
      .def_readwrite("m", &ScenarioConfig::m)
      .def_readwrite("h_target", &ScenarioConfig::h_target)
      .def_readwrite("gains", &ScenarioConfig::gains)
      .def_readwrite("ramp_duration", &ScenarioConfig::ramp_duration)
      .def_readwrite("dt", &ScenarioConfig::dt)
      .def_readwrite("duration", &ScenarioConfig::duration)
      .def_readwrite("predicted_cd", &ScenarioConfig::predicted_cd);
  py::class_<StepRecord>(m, "StepRecord")
      .def_readonly("t", &StepRecord::t)
      .def_readonly("h_lake", &StepRecord::h_lake)
      .def_readonly("h_sea", &StepRecord::h_sea)
      .def_readonly("a", &StepRecord::a)
      .def_readonly("q_total", &StepRecord::q_total)
      .def_readonly("q_gate", &StepRecord::q_gate)
      .def_readonly("regime", &StepRecord::regime)
      .def_readonly("open", &StepRecord::open)
      .def_readonly("h1", &StepRecord::h1)
      .def_readonly("h2", &StepRecord::h2)
      .def_readonly("h3", &StepRecord::h3)
      .def_readonly("c_c", &StepRecord::c_c);
  py::class_<EventSummary>(m, "EventSummary")
      .def_readonly("t_start", &EventSummary::t_start)
      .def_readonly("t_end", &EventSummary::t_end)
      .def_readonly("v_tot", &EventSummary::v_tot)
      .def_readonly("v_tot_req", &EventSummary::v_tot_req)
      .def_readonly("achieved_cd", &EventSummary::achieved_cd)
      .def_readonly("open_steps", &EventSummary::open_steps)
      .def_readonly("modular_steps", &EventSummary::modular_steps)
      .def_readonly("h_end", &EventSummary::h_end)
      .def_readonly("a_const", &EventSummary::a_const)
      .def_readonly("opening_infeasible", &EventSummary::opening_infeasible);
  py::class_<ScenarioTimeSeries>(m, "ScenarioTimeSeries")
      .def_readonly("steps", &ScenarioTimeSeries::steps)
      .def_readonly("events", &ScenarioTimeSeries::events)
      .def_readonly("modular_fraction", &ScenarioTimeSeries::modular_fraction)
      .def_readonly("target_met", &ScenarioTimeSeries::target_met)
      .def_readonly("h_end_last_event", &ScenarioTimeSeries::h_end_last_event)
      .def_readonly("v_tot_total", &ScenarioTimeSeries::v_tot_total)
      .def_readonly("final_predicted_cd",
                    &ScenarioTimeSeries::final_predicted_cd);
  m.def("sea_level", &sea_level, py::arg("t"), py::arg("tide"));
  m.def("step_lake", &step_lake, py::arg("h_lake"), py::arg("q_river"),
        py::arg("q_barrier"), py::arg("a_lake"), py::arg("dt"));
  m.def("required_mean_discharge", &required_mean_discharge, py::arg("a_lake"),
        py::arg("h_start"), py::arg("h_target"), py::arg("t_start"),
        py::arg("t_end"));
  m.def("plan_constant_opening", &plan_constant_opening,
        py::arg("q_req_total"), py::arg("m"), py::arg("predicted_cd"),
        py::arg("w"), py::arg("h_lake_pred"), py::arg("h_sea_pred"),
        py::arg("a_max"));
  m.def("opening_from_discharge", &opening_from_discharge, py::arg("q_cmd"),
        py::arg("m"), py::arg("predicted_cd"), py::arg("w"), py::arg("h_lake"),
        py::arg("h_sea"), py::arg("a_max"));
  m.def("ramp_setpoint", &ramp_setpoint, py::arg("q_set_final"),
        py::arg("t_since_open"), py::arg("ramp_duration"));
  m.def("update_predicted_cd", &update_predicted_cd, py::arg("event_steps"),
        py::arg("w"));
  m.def("run_scenario", &run_scenario, py::arg("system"), py::arg("scenario"));

  // flow fields and analysis
  py::class_<FlowField>(m, "FlowField")
      .def_readonly("x", &FlowField::x)
      .def_readonly("z", &FlowField::z)
      .def_readonly("u", &FlowField::u)
      .def_readonly("w", &FlowField::w)
      .def_readonly("k", &FlowField::k)
      .def_readonly("surface", &FlowField::surface)
      .def_readonly("gate_x", &FlowField::gate_x)
      .def_readonly("a", &FlowField::a);
  m.def("load_flow_field", &load_flow_field, py::arg("field_csv"),
        py::arg("surface_csv"), py::arg("gate_x"), py::arg("a"));
  m.def("save_flow_field", &save_flow_field, py::arg("field"),
        py::arg("field_csv"), py::arg("surface_csv"));
  py::class_<SynthJetSpec>(m, "SynthJetSpec")
      .def(py::init<>())
      .def_readwrite("w", &SynthJetSpec::w)
      .def_readwrite("nx", &SynthJetSpec::nx)
      .def_readwrite("nz", &SynthJetSpec::nz)
      .def_readwrite("upstream_len", &SynthJetSpec::upstream_len)
      .def_readwrite("downstream_len", &SynthJetSpec::downstream_len);
  m.def("synth_jet_field", &synth_jet_field, py::arg("h1"), py::arg("h3"),
        py::arg("a"), py::arg("c_c"), py::arg("q"),
        py::arg("spec") = SynthJetSpec{});
  py::class_<SeparationEdge>(m, "SeparationEdge")
      .def_readonly("x", &SeparationEdge::x)
      .def_readonly("z_edge", &SeparationEdge::z_edge)
      .def_readonly("no_contraction", &SeparationEdge::no_contraction)
      .def_readonly("vc_column", &SeparationEdge::vc_column)
      .def_readonly("x_vc", &SeparationEdge::x_vc)
      .def_readonly("thickness", &SeparationEdge::thickness);
  m.def("separation_edge", &separation_edge, py::arg("field"),
        py::arg("window") = 0.0);
  m.def("contraction_from_field", &contraction_from_field, py::arg("field"));
  m.def("vena_velocity", &vena_velocity, py::arg("field"), py::arg("c_c"));
  m.def("froude", &froude, py::arg("u_vc"), py::arg("h2"));
  m.def("reduced_velocity", &reduced_velocity, py::arg("u_vc"), py::arg("f"),
        py::arg("thickness"));
  py::class_<ResponseCurve>(m, "ResponseCurve")
      .def_readonly("label", &ResponseCurve::label)
      .def_readonly("samples", &ResponseCurve::samples);
  m.def("load_response_curve", &load_response_curve, py::arg("path"),
        py::arg("label") = "");
  m.def("amplitude_lookup", &amplitude_lookup, py::arg("curve"), py::arg("vr"));
  py::class_<GateDynamics>(m, "GateDynamics")
      .def(py::init([](double k_struct, double k_w, double m_struct,
                       double m_w, double L, std::optional<double> f_gate) {
             return GateDynamics{k_struct, k_w, m_struct, m_w, L, f_gate};
           }),
           py::arg("k_struct") = 0.0, py::arg("k_w") = 0.0,
           py::arg("m_struct") = 0.0, py::arg("m_w") = 0.0,
           py::arg("L") = 0.0, py::arg("f_gate") = std::nullopt)
      .def_readwrite("k_struct", &GateDynamics::k_struct)
      .def_readwrite("k_w", &GateDynamics::k_w)
      .def_readwrite("m_struct", &GateDynamics::m_struct)
      .def_readwrite("m_w", &GateDynamics::m_w)
      .def_readwrite("L", &GateDynamics::L)
      .def_readwrite("f_gate", &GateDynamics::f_gate);
  m.def("natural_frequency", &natural_frequency, py::arg("dynamics"));
  py::class_<StabilityProfile>(m, "StabilityProfile")
      .def_readonly("x", &StabilityProfile::x)
      .def_readonly("psi", &StabilityProfile::psi)
      .def_readonly("alpha", &StabilityProfile::alpha)
      .def_readonly("delta", &StabilityProfile::delta)
      .def_readonly("psi_max", &StabilityProfile::psi_max);
  m.def("psi_profile", &psi_profile, py::arg("field"), py::arg("alpha"),
        py::arg("delta"), py::arg("x_from"), py::arg("x_to"));

  // pipeline
  py::class_<Thresholds>(m, "Thresholds")
      .def(py::init<>())
      .def_readwrite("psi_max", &Thresholds::psi_max)
      .def_readwrite("relative_amplitude_max",
                     &Thresholds::relative_amplitude_max)
      .def_readwrite("fr_max", &Thresholds::fr_max);
  py::class_<AnalysisSettings>(m, "AnalysisSettings")
      .def(py::init<>())
      .def_readwrite("alpha_low", &AnalysisSettings::alpha_low)
      .def_readwrite("alpha_high", &AnalysisSettings::alpha_high)
      .def_readwrite("delta", &AnalysisSettings::delta)
      .def_readwrite("f_min", &AnalysisSettings::f_min)
      .def_readwrite("f_max", &AnalysisSettings::f_max)
      .def_readwrite("gate_thickness", &AnalysisSettings::gate_thickness)
      .def_readwrite("small_opening_limit",
                     &AnalysisSettings::small_opening_limit);
  py::class_<ScenarioOutcome>(m, "ScenarioOutcome")
      .def_readonly("m", &ScenarioOutcome::m)
      .def_readonly("mode", &ScenarioOutcome::mode)
      .def_readonly("feasible", &ScenarioOutcome::feasible)
      .def_readonly("infeasible_cause", &ScenarioOutcome::infeasible_cause)
      .def_readonly("rank", &ScenarioOutcome::rank)
      .def_readonly("psi_max_low", &ScenarioOutcome::psi_max_low)
      .def_readonly("psi_max_high", &ScenarioOutcome::psi_max_high)
      .def_readonly("fr", &ScenarioOutcome::fr)
      .def_readonly("modular_fraction", &ScenarioOutcome::modular_fraction)
      .def_readonly("v_tot", &ScenarioOutcome::v_tot)
      .def_readonly("achieved_cd", &ScenarioOutcome::achieved_cd);
  py::class_<PipelineResult>(m, "PipelineResult")
      .def_readonly("outcomes", &PipelineResult::outcomes)
      .def_readonly("exit_code", &PipelineResult::exit_code);
  m.def("run_pipeline", &run_pipeline, py::arg("system"),
        py::arg("base_scenario"), py::arg("thresholds"), py::arg("analysis"),
        py::arg("out_dir"));
  m.def("compare_scenarios", &compare_scenarios, py::arg("outcomes"));
}
