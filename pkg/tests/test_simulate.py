import json
import math

import numpy as np
import pytest

from compat2x2 import Scenario, coverage_sim, significance_filter_sim, sparse_bias_sim
from compat2x2.errors import InvalidAlpha, InvalidSpec
from compat2x2.reports import SimReport, reports_to_csv, scenarios_from_json

SURVEY_SCENARIO = Scenario(
    n_exposed=480, n_unexposed=120, baseline_risk=0.033, or_pop=2.636, label="survey-shaped"
)
SPARSE = Scenario(n_exposed=50, n_unexposed=50, baseline_risk=0.02, or_pop=4.0, label="sparse")


def test_scenario_validation():
    with pytest.raises(InvalidSpec):
        Scenario(n_exposed=0, n_unexposed=10, baseline_risk=0.1, or_pop=2.0)
    with pytest.raises(InvalidSpec):
        Scenario(n_exposed=10, n_unexposed=10, baseline_risk=1.0, or_pop=2.0)
    with pytest.raises(InvalidSpec):
        Scenario(n_exposed=10, n_unexposed=10, baseline_risk=0.1, or_pop=0.0)


def test_reports_are_deterministic():
    a = coverage_sim(SPARSE, "exact", 0.05, 400, seed=77)
    b = coverage_sim(SPARSE, "exact", 0.05, 400, seed=77)
    assert a.to_json_line() == b.to_json_line()
    c = sparse_bias_sim(SPARSE, 400, seed=77)
    d = sparse_bias_sim(SPARSE, 400, seed=77)
    assert c.to_json_line() == d.to_json_line()


def test_exact_coverage_is_conservative():
    r = coverage_sim(SURVEY_SCENARIO, "exact", 0.05, 2500, seed=42)
    assert r.estimate >= 0.95 - 3 * r.mc_error
    assert r.extras["undefined_fraction"] == 0.0


def test_wald_coverage_below_exact_on_sparse_paired_draws():
    seed = 31
    exact = coverage_sim(SPARSE, "exact", 0.05, 3000, seed=seed)
    wald = coverage_sim(SPARSE, "wald", 0.05, 3000, seed=seed)
    assert wald.extras["undefined_fraction"] > 0.1  # zero cells are common here
    assert wald.estimate < exact.estimate  # same draws: paired comparison
    assert wald.extras["coverage_undefined_as_noncovering"] <= wald.estimate
    assert "n_defined" in wald.extras


def test_coverage_validation():
    with pytest.raises(InvalidSpec):
        coverage_sim(SPARSE, "bootstrap", 0.05, 10, seed=1)
    with pytest.raises(InvalidAlpha):
        coverage_sim(SPARSE, "exact", 0.0, 10, seed=1)
    with pytest.raises(InvalidSpec):
        coverage_sim(SPARSE, "exact", 0.05, 0, seed=1)


def test_sparse_bias_spec_scenario_directions():
    # At (40, 40, 0.05, 3.0) the away-from-null tables often have a zero
    # unexposed-case cell (log OR = +inf), so conditioning on finiteness
    # pulls the log-scale mean below ln(3) while the ratio-scale mean stays
    # inflated. Exact enumeration gives mean error -0.091, ratio 1.20.
    sc = Scenario(n_exposed=40, n_unexposed=40, baseline_risk=0.05, or_pop=3.0)
    r = sparse_bias_sim(sc, 4000, seed=19)
    assert r.extras["undefined_fraction"] > 0.08
    assert r.estimate == pytest.approx(-0.091, abs=4 * r.mc_error)
    assert r.extras["mean_or_ratio"] > 1.1
    assert abs(r.extras["mean_error_corrected"]) < abs(r.estimate)


def test_sparse_bias_away_from_null_when_estimable():
    # moderately sparse: zero cells are rare and the classic away-from-null
    # inflation of the log OR shows directly (exact enumeration: +0.067)
    sc = Scenario(n_exposed=40, n_unexposed=40, baseline_risk=0.12, or_pop=3.0)
    r = sparse_bias_sim(sc, 4000, seed=23)
    assert r.extras["undefined_fraction"] < 0.02
    assert r.estimate > 3 * r.mc_error
    assert r.extras["mean_or_ratio"] > 1.0


def test_sparse_bias_vanishes_at_scale():
    sc = Scenario(n_exposed=5000, n_unexposed=5000, baseline_risk=0.2, or_pop=3.0)
    r = sparse_bias_sim(sc, 1500, seed=5)
    assert abs(r.estimate) < 0.02
    assert r.extras["undefined_fraction"] == 0.0


def test_sparse_bias_null_symmetry():
    sc = Scenario(n_exposed=60, n_unexposed=60, baseline_risk=0.15, or_pop=1.0)
    r = sparse_bias_sim(sc, 4000, seed=11)
    assert abs(r.extras["median_error"]) <= 3 * r.mc_error + 0.05


def test_filter_inflation_low_power():
    sc = Scenario(n_exposed=100, n_unexposed=100, baseline_risk=0.05, or_pop=1.5)
    r = significance_filter_sim(sc, 0.05, 4000, seed=3)
    assert r.estimate > abs(math.log(1.5))  # conditional mean |log OR| inflated
    assert r.extras["inflation_ratio"] > 1.5
    assert r.extras["selected_fraction"] < 0.25  # low power, few survive


def test_filter_off_at_alpha_one():
    sc = Scenario(n_exposed=100, n_unexposed=100, baseline_risk=0.05, or_pop=1.5)
    r = significance_filter_sim(sc, 1.0, 1500, seed=8)
    assert r.estimate == r.extras["mean_abs_log_or_all"]  # exactly: nothing filtered
    assert r.extras["inflation_ratio"] == pytest.approx(
        r.extras["mean_abs_log_or_all"] / abs(math.log(1.5)), rel=1e-12
    )


def test_filter_nearly_vacuous_at_high_power():
    sc = Scenario(n_exposed=5000, n_unexposed=5000, baseline_risk=0.2, or_pop=2.0)
    r = significance_filter_sim(sc, 0.05, 800, seed=13, test="pearson")
    assert r.extras["selected_fraction"] > 0.99
    assert r.extras["inflation_ratio"] == pytest.approx(1.0, abs=0.05)


def test_mc_error_is_honest_across_seeds():
    # spread of independent coverage estimates matches the reported mc error
    sc = Scenario(n_exposed=120, n_unexposed=120, baseline_risk=0.1, or_pop=2.0)
    reports = [coverage_sim(sc, "exact", 0.05, 800, seed=s) for s in range(30)]
    estimates = np.array([r.estimate for r in reports])
    typical_mc = float(np.mean([r.mc_error for r in reports]))
    ratio = estimates.std(ddof=1) / typical_mc
    assert 0.5 <= ratio <= 2.0


def test_scenarios_json_round_trip(tmp_path):
    scenarios = [SURVEY_SCENARIO, SPARSE]
    text = json.dumps([s.to_dict() for s in scenarios])
    parsed = scenarios_from_json(text)
    assert parsed == scenarios
    with pytest.raises(InvalidSpec):
        scenarios_from_json(json.dumps({"not": "a list"}))


def test_report_serialization_round_trip():
    r = coverage_sim(SPARSE, "exact", 0.05, 200, seed=1)
    assert SimReport.from_dict(json.loads(r.to_json_line())) == r


def test_reports_to_csv_shape():
    rs = [
        coverage_sim(SPARSE, "exact", 0.05, 200, seed=1),
        sparse_bias_sim(SPARSE, 200, seed=1),
    ]
    text = reports_to_csv(rs)
    lines = text.strip().split("\n")
    assert len(lines) == 3
    assert lines[0].startswith("label,n_exposed,")
    assert "extra.undefined_fraction" in lines[0]
