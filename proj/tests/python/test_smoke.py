import math

import pytest

import tworelay as tr


def test_e1_and_delta():
    assert tr.exp_integral_e1(1.0) == pytest.approx(0.21938393439552, rel=1e-12)
    assert tr.delta_of_rate(1.0 / 3.0) == 1.0
    with pytest.raises(ValueError):
        tr.exp_integral_e1(-1.0)


def test_cutoff_round_trip():
    pbar = tr.endnode_average_power(2.0, 1.5, 0.3)
    assert tr.solve_cutoff(2.0, 1.5, pbar) == pytest.approx(0.3, rel=1e-12)


def test_unbounded_relay_hits_outage_floor():
    policy = tr.RelayPolicy(1.0, 1.0, 0.2, 0.2, 1.0, 1.0)
    assert policy.rho is None
    assert policy.outage() == pytest.approx(1.0 - math.exp(-0.4), rel=1e-14)
    assert policy.avg_power() == pytest.approx(2.0 * tr.exp_integral_e1(0.4), rel=1e-14)
    assert policy.power(2.0, 4.0) == 0.5


def test_solve_rho_round_trip():
    base = tr.RelayPolicy(1.0, 2.0, 0.3, 0.25, 1.0, 1.5)
    target = base.with_rho(3.0).avg_power()
    assert tr.solve_rho(1.0, 2.0, 0.3, 0.25, 1.0, 1.5, target) == pytest.approx(3.0, rel=1e-9)
    p_max = tr.max_avg_relay_power(1.0, 2.0, 0.3, 0.25, 1.0, 1.5)
    assert tr.solve_rho(1.0, 2.0, 0.3, 0.25, 1.0, 1.5, p_max) is None


def test_monte_carlo_matches_closed_form():
    config = tr.SystemConfig(pbar_s1=1.0, pbar_s2=1.0, p_avg_relay=0.5)
    relay = tr.solve_policies(config)
    report = tr.run_opa(config, trials=400_000, seed=3, workers=2)
    p = relay.outage()
    assert abs(report.outage_rate - p) <= 4.0 * math.sqrt(p * (1.0 - p) / report.trials)
    assert report == tr.run_opa(config, trials=400_000, seed=3, workers=1)


def test_fixed_power_baseline():
    config = tr.SystemConfig()
    fpa = tr.FpaConfig(10.0, 10.0, 10.0)
    assert tr.outage_fpa(config, fpa) == pytest.approx(-math.expm1(-0.2), rel=1e-14)
    report = tr.run_fpa(config, fpa, trials=100_000, seed=5)
    assert report.avg_power_relay == 10.0


def test_scenarios():
    csv = tr.sweep_total_power_csv(grid=[0.0, 10.0], trials=20_000, seed=1)
    lines = csv.splitlines()
    assert lines[0] == "P_T_dB,op_opa_analytic,op_opa_mc,op_fpa_analytic,op_fpa_mc"
    assert len(lines) == 3
    gains = tr.power_gain(1.0 / 3.0, 1.0 / 3.0, 1.0, 1.0, 0.01)
    assert gains["gain_s"] > 1.0 and gains["gain_r"] > 1.0
    with pytest.raises(tr.UsageError):
        tr.power_gains_csv(grid=[0.5, 1.5])
    passed, table = tr.validate_csv(trials=50_000, seed=2)
    assert passed
    assert table.startswith("check,case,measured,reference,deviation,tolerance,status\n")
