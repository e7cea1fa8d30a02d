"""End-to-end smoke checks of the python bindings."""

import math

import riscov


def test_defaults_and_units():
    p = riscov.ScenarioParams.defaults()
    p.validate()
    assert p.beta() > 0.0
    assert abs(riscov.db_to_linear(10.0) - 10.0) < 1e-12
    assert abs(riscov.dbm_to_watts(30.0) - 1.0) < 1e-12


def test_association_probabilities():
    p = riscov.ScenarioParams.defaults()
    ap = riscov.association_probabilities(p)
    assert 0.0 < ap.zeta_d < 1.0
    assert 0.0 < ap.zeta_v < 1.0
    assert ap.zeta_d + ap.zeta_v <= 1.0 + 1e-9
    assert abs(ap.zeta_d - 0.735474776) < 1e-4


def test_distance_distribution_mass():
    p = riscov.ScenarioParams.defaults()
    d = riscov.nearest_los_bs_dist(p)
    assert 1.0 - 1e-6 < d.total_mass <= 1.0 + 1e-12
    assert math.isclose(d.cdf(d.support_hi), d.total_mass, rel_tol=1e-9)
    mid = 0.5 * d.support_hi
    assert 0.0 < d.cdf(mid) < d.total_mass
    assert d.pdf(mid) >= 0.0


def test_monte_carlo_runs():
    p = riscov.ScenarioParams.defaults()
    r = riscov.estimate_coverage(p, eps1=1.0, eps2=1e-4, n_trials=200, master_seed=3)
    assert 0.0 <= r.p_cs <= 1.0
    assert r.n_direct + r.n_cascaded + r.n_none == 200
    again = riscov.estimate_coverage(p, eps1=1.0, eps2=1e-4, n_trials=200, master_seed=3)
    assert again.p_cs == r.p_cs


def test_analytic_evaluator_zero_threshold():
    p = riscov.ScenarioParams.defaults()
    ev = riscov.CoverageEvaluator(p, fast=True)
    m = ev.marginal_coverage(0.0, 0.0)
    ap = ev.association()
    assert m.converged
    assert abs(m.p_cs - (ap.zeta_d + ap.zeta_v)) < 2e-3


def test_config_round_trip():
    cfg = riscov.ExperimentConfig()
    cfg.trials = 42
    cfg.mode = "simulate"
    text = riscov.serialize_config(cfg)
    back = riscov.parse_config(text)
    assert back == cfg
    s = back.scenario()
    assert math.isclose(s.lambda_b, 100e-6, rel_tol=1e-12)
