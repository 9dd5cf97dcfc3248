"""Smoke tests for the python bindings: a thin pass over each exposed surface,
with values cross-checked against the C++ unit suites."""

import math

import pytest

import braggsim as bs


def test_dispersion_reference_point():
    mode = bs.dispersion(1.0)
    assert mode.omega_b_over_mu == pytest.approx(math.sqrt(3.0), rel=1e-12)
    assert mode.u_q**2 - mode.v_q**2 == pytest.approx(1.0, abs=1e-12)
    assert mode.f_q == pytest.approx(0.759836, abs=1e-6)
    assert bs.eta_from_physical(100, 0.5, mode) == pytest.approx(5.0 * mode.f_q)


def test_dispersion_rejects_bad_input():
    with pytest.raises(ValueError):
        bs.dispersion(-1.0)


def test_propagate_symplectic_and_oracle():
    drive = bs.CondensateDrive(7.7, 1.0)
    coeffs = bs.propagate(drive, 0.5)
    assert coeffs.symplectic_defect() < 1e-8
    oracle = bs.propagate_ode_oracle(drive, 0.5, 1e-4)
    scale = max(1.0, abs(coeffs.a_q))
    assert abs(coeffs.a_q - oracle.a_q) / scale < 1e-6


def test_conditional_state_hand_example():
    ones = bs.ScatterCoeffs(1.0, 0.0, 1.0, 0.0)
    splitter = bs.make_beam_splitter(1.0 / math.sqrt(2.0), 0.0, 0.0)
    state = bs.conditional_state(ones, ones, bs.ProbeField(1.0), bs.ProbeField(1.0), splitter)
    assert state.raw_weight == pytest.approx(4.0, rel=1e-12)
    assert state.at(0, 0) == pytest.approx(0.5j, abs=1e-12)
    assert state.at(1, 1) == 0.0
    assert state.at(2, 0) == pytest.approx(1j / (2.0 * math.sqrt(2.0)), abs=1e-12)


def test_zero_coincidence_raises():
    quiet = bs.ScatterCoeffs(0.0, 0.0, 1.0, 0.0)
    splitter = bs.make_beam_splitter(1.0 / math.sqrt(2.0), 0.0, 0.0)
    with pytest.raises(bs.ZeroCoincidenceError):
        bs.conditional_state(quiet, quiet, bs.ProbeField(0.0), bs.ProbeField(0.0), splitter)


def test_witness_on_bell_like_state():
    state = bs.joint_state(2, [[0, 1, 0], [1, 0, 0], [0, 0, 0]])
    report = bs.evaluate_witness(state)
    assert report.violated
    assert report.lhs == pytest.approx(2.0, abs=1e-12)
    assert report.rhs == pytest.approx(4.0, abs=1e-12)
    assert report.min_pt_eig == pytest.approx(-0.5, abs=1e-10)
    assert bs.negativity(state) == pytest.approx(-0.5, abs=1e-10)
    schmidt = bs.schmidt_coefficients(state)
    assert schmidt[0] == pytest.approx(1.0 / math.sqrt(2.0), abs=1e-10)
    var1, var2 = bs.pt_variance_oracle(state)
    assert (var1, var2) == (pytest.approx(1.0, abs=1e-12), pytest.approx(2.0, abs=1e-12))


def test_sweep_rows_and_csv_determinism():
    config = bs.RunConfig()
    config.tau_stop = 1.0
    config.tau_step = 0.5
    rows = bs.run_figure_sweep(config, "fig2")
    assert len(rows) == 6  # two n_p curves, three tau points each
    assert {row.n_p for row in rows} == {10.0, 20.0}
    tau_positive = [row for row in rows if row.tau > 0]
    assert all(row.min_pt_eig < 0 for row in tau_positive)

    csv_a = bs.emit_csv(rows)
    csv_b = bs.emit_csv(bs.run_figure_sweep(config, "fig2"))
    assert csv_a == csv_b
    assert csv_a.splitlines()[0].startswith("tau,eta_a,eta_b,n_p,theta_ab,min_pt_eig")


def test_generic_sweep_single_point():
    config = bs.RunConfig()
    rows = bs.run_figure_sweep(config, "sweep", [], [("tau", [0.8])])
    assert len(rows) == 1
    assert rows[0].tau == 0.8


def test_config_round_trip():
    config = bs.config_from_json_text('{"eta_a": 7.7, "n_p": 10}')
    assert config.eta_a == 7.7
    with pytest.raises(ValueError):
        bs.config_from_json_text('{"tau_step": 0}')
