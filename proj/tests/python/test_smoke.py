"""End-to-end smoke tests for the python bindings."""

import math

import pytest

import sluiceops as so


def test_configuration_counts():
    assert so.total_configs(7) == 128
    assert so.total_configs(7, symmetric=True) == 16
    assert so.count_configs(7, 3, symmetric=True) == 3
    configs = so.enumerate_configs(7, 3, symmetric=True)
    assert len(configs) == 3
    assert all(c.is_symmetric() and c.open_count() == 3 for c in configs)
    assert all(len(str(c)) == 7 for c in configs)


def test_contraction_and_discharge_coefficients():
    assert so.contraction_coefficient(1.0) == 1.0
    jump = abs(
        so.contraction_coefficient(0.5 + 1e-9)
        - so.contraction_coefficient(0.5 - 1e-9)
    )
    assert jump <= 3e-4
    c_d = so.discharge_coefficient(0.6, 0.5)
    assert c_d == pytest.approx(0.6 / math.sqrt(1.3))


def test_solve_discharge_submerged():
    geom = so.GateGeometry(w=22.5, a=1.30, w_in=52.5, w_out=52.5,
                           sill_level=3.0)
    losses = so.LossCoefficients(c_c_in=0.632, xi_out=0.19)
    # h0 and h4 are water depths above the sill.
    sol = so.solve_discharge(3.06, 2.50, geom, losses)
    assert sol.regime == so.FlowRegime.submerged
    assert sol.residual <= 1e-6
    assert sol.q_total == pytest.approx(90.2, rel=0.01)
    assert sol.levels.h1 == pytest.approx(2.95, abs=0.01)
    assert sol.levels.h3 == pytest.approx(2.41, abs=0.02)


def test_solve_discharge_raises_on_adverse_head():
    geom = so.GateGeometry(w=10.0, a=1.0)
    with pytest.raises(ValueError):
        so.solve_discharge(2.0, 2.5, geom)


def test_run_scenario_reaches_target():
    system = so.SluiceSystem(
        a_lake=1.9e7,
        q_river=100.0,
        n=7,
        w=22.5,
        sill_level=3.0,
        tide=so.TideSpec(mean_level=6.1, amplitude=0.6, period=12.5 * 3600.0),
        h_lake0=6.1,
        losses=so.LossCoefficients(c_c_in=0.632, xi_out=0.19),
        a_max=3.0,
    )
    scenario = so.ScenarioConfig(
        mode=so.ScenarioMode.pid,
        m=4,
        h_target=6.0,
        duration=4 * 12.5 * 3600.0,
    )
    ts = so.run_scenario(system, scenario)
    assert ts.target_met
    assert ts.h_end_last_event == pytest.approx(6.0, abs=0.02)
    assert len(ts.events) == 4
    assert ts.v_tot_total > 0.0


def test_losses_per_m_override_changes_result():
    tide = so.TideSpec(mean_level=6.1, amplitude=0.6, period=12.5 * 3600.0)
    base = so.SluiceSystem(1.9e7, 100.0, 7, 22.5, 3.0, tide, 6.1,
                           so.LossCoefficients(0.632, 0.19), 3.0)
    scenario = so.ScenarioConfig(so.ScenarioMode.constant_opening, 2, 6.0,
                                 duration=4 * 12.5 * 3600.0)
    plain = so.run_scenario(base, scenario)
    base.losses_per_m = {2: so.LossCoefficients(0.45, 0.19)}
    tight = so.run_scenario(base, scenario)
    assert tight.modular_fraction > plain.modular_fraction


def test_flow_field_roundtrip_and_analysis(tmp_path):
    field = so.synth_jet_field(h1=3.0, h3=2.5, a=1.0, c_c=0.75, q=90.0)
    c_c = so.contraction_from_field(field)
    assert c_c == pytest.approx(0.75, abs=3.0 / 80)

    field_csv = str(tmp_path / "field.csv")
    surface_csv = str(tmp_path / "surface.csv")
    so.save_flow_field(field, field_csv, surface_csv)
    loaded = so.load_flow_field(field_csv, surface_csv, field.gate_x, field.a)
    assert list(loaded.u) == pytest.approx(list(field.u))

    u_vc = so.vena_velocity(field, c_c)
    assert u_vc > 0.0
    vr = so.reduced_velocity(3.37, 5.0, 0.2)
    assert vr == pytest.approx(3.37, rel=1e-12)

    profile = so.psi_profile(field, alpha=6.0, delta=1.65,
                             x_from=field.gate_x, x_to=field.x[-1])
    assert profile.psi_max > 0.0


def test_pipeline_runs(tmp_path):
    tide = so.TideSpec(mean_level=6.1, amplitude=0.6, period=12.5 * 3600.0)
    system = so.SluiceSystem(2e6, 10.0, 3, 10.0, 3.0, tide, 6.1,
                             so.LossCoefficients(0.632, 0.19), 3.0)
    scenario = so.ScenarioConfig(so.ScenarioMode.constant_opening, 1, 6.0,
                                 duration=2 * 12.5 * 3600.0)
    result = so.run_pipeline(system, scenario, so.Thresholds(),
                             so.AnalysisSettings(), str(tmp_path))
    assert len(result.outcomes) == 6
    assert (tmp_path / "report.json").exists()
    assert (tmp_path / "report.md").exists()
    ranks = sorted(o.rank for o in result.outcomes)
    assert ranks == [1, 2, 3, 4, 5, 6]
