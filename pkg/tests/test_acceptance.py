"""Acceptance suite: the worked-example benchmark values and the property gates,
one test per criterion, each printing its own pass/fail line.

Run with `pytest -v tests/test_acceptance.py` (add -s to see the lines on
success).
"""

import math
from math import comb, log

import numpy as np
import pytest

from compat2x2 import (
    IntervalPrior,
    PowerSpec,
    Scenario,
    Table2x2,
    augment_and_fit,
    bonferroni,
    coin_toss_bracket,
    coverage_sim,
    exact_limits,
    exact_p,
    exact_tail,
    familywise_rate,
    flip_exposure,
    nchg_distribution,
    pearson_chi2,
    point_estimate,
    power_mc,
    prior_to_data,
    s_value,
    significance_filter_sim,
    summarize,
)
from compat2x2.display import fmt, fmt_sig

from conftest import random_interior_tables
from test_bayes import grid_posterior_mode

SURVEY = Table2x2(10, 110, 16, 464)


def report(criterion: str, passed: bool, detail: str):
    print(f"ACCEPTANCE {criterion}: {'PASS' if passed else 'FAIL'} -- {detail}")
    assert passed, f"{criterion}: {detail}"


def test_criterion_01_table_description():
    s = summarize(SURVEY)
    checks = {
        "RD": fmt(s.rd, 3) == "0.050",
        "RR": fmt(s.rr, 1) == "2.5",
        "OR 2dp": fmt(s.or_, 2) == "2.64",
        "OR 1dp": fmt(s.or_, 1) == "2.6",
        "expected": [fmt(e, 1) for e in s.expected] == ["5.2", "114.8", "20.8", "459.2"],
    }
    report(
        "01 table description",
        all(checks.values()),
        f"RD={fmt(s.rd, 3)} RR={fmt(s.rr, 1)} OR={fmt(s.or_, 2)}/{fmt(s.or_, 1)} "
        f"expected={[fmt(e, 1) for e in s.expected]}",
    )


def test_criterion_02_pearson_chi2():
    res = pearson_chi2(SURVEY)
    ok = abs(res.t - 5.79) <= 0.01 and res.df == 1 and fmt_sig(res.p, 2) == "0.016"
    report("02 pearson chi-square", ok, f"t={res.t:.4f} df={res.df} p={fmt_sig(res.p, 2)}")


def test_criterion_03_exact_p_values():
    got = {psi: fmt(exact_p(SURVEY, psi).p, 3) for psi in (1.0, 2.0, 6.0)}
    ok = got == {1.0: "0.041", 2.0: "0.644", 6.0: "0.070"}
    report("03 exact P-values", ok, f"p(1)={got[1.0]} p(2)={got[2.0]} p(6)={got[6.0]}")


def test_criterion_04_exact_inversion():
    est = point_estimate(SURVEY)
    iv = exact_limits(SURVEY, 0.05)
    p_lo = exact_p(SURVEY, iv.lower).p
    p_hi = exact_p(SURVEY, iv.upper).p
    ok = (
        fmt(est.psi, 2) == "2.64"
        and fmt(iv.lower, 2) == "1.04"
        and fmt(iv.upper, 2) == "6.36"
        and abs(p_lo - 0.05) <= 1e-6
        and abs(p_hi - 0.05) <= 1e-6
    )
    report(
        "04 exact inversion",
        ok,
        f"max-p est={fmt(est.psi, 2)} (cmle={est.cmle:.4f}) "
        f"limits=({fmt(iv.lower, 2)}, {fmt(iv.upper, 2)}) "
        f"p at limits=({p_lo:.8f}, {p_hi:.8f})",
    )


def test_criterion_05_surprisals():
    n, below, above = coin_toss_bracket(0.041)
    ok = (
        fmt(s_value(0.041), 1) == "4.6"
        and fmt(s_value(0.05), 1) == "4.3"
        and fmt(s_value(0.644), 1) == "0.6"
        and n == 5
        and fmt(below, 3) == "0.031"
        and fmt(above, 3) == "0.063"
    )
    report(
        "05 surprisals",
        ok,
        f"s(0.041)={fmt(s_value(0.041), 1)} s(0.05)={fmt(s_value(0.05), 1)} "
        f"s(0.644)={fmt(s_value(0.644), 1)} n={n} halves=({fmt(below, 3)}, {fmt(above, 3)})",
    )


def test_criterion_06_multiplicity():
    adj = bonferroni(0.05, 20)
    ind_05 = familywise_rate(0.05, 20, "independent").estimate
    ind_adj = familywise_rate(0.0025, 20, "independent").estimate
    perf = familywise_rate(0.0025, 20, "perfectly-correlated").estimate
    ok = (
        adj == pytest.approx(0.0025, abs=1e-15)
        and fmt(ind_05, 2) == "0.64"
        and fmt(ind_adj, 3) == "0.049"
        and perf == 0.0025
    )
    report(
        "06 multiplicity",
        ok,
        f"alpha/20={adj} fw(0.05)={fmt(ind_05, 2)} fw(0.0025)={fmt(ind_adj, 3)} "
        f"perfectly-correlated={perf}",
    )


def test_criterion_07_prior_data():
    pd = prior_to_data(IntervalPrior(lower=1 / 1.20, upper=1.20, level=0.95))
    ok = pd.trial_cases_per_arm == 232 and pd.trial_total_cases == 464
    report(
        "07 prior data",
        ok,
        f"pseudo-count={pd.cases_per_arm:.2f} trial size={pd.trial_cases_per_arm}/arm, "
        f"{pd.trial_total_cases} total",
    )


def test_criterion_08_augmented_fit_oracle():
    prior = prior_to_data(IntervalPrior(lower=1 / 1.20, upper=1.20, level=0.95))
    fit = augment_and_fit(SURVEY, prior)
    oracle = grid_posterior_mode(SURVEY, prior, lo=-1.0, hi=2.0, step=1e-4)
    post, freq = fit.log_or_posterior, fit.frequentist_log_or
    ok = abs(post - oracle) <= 1e-3 and abs(post) < abs(post - freq)
    report(
        "08 augmented fit oracle",
        ok,
        f"posterior={post:.5f} oracle={oracle:.5f} |diff|={abs(post - oracle):.2e} "
        f"frequentist={freq:.5f}",
    )


def test_criterion_09_property_suites():
    failures = []

    # PMF normalization <= 1e-12
    rng = np.random.default_rng(2024)
    for _ in range(25):
        n = int(rng.integers(2, 2001))
        m1, n1 = int(rng.integers(1, n)), int(rng.integers(1, n))
        for psi in (0.01, 0.1, 1.0, 2.6364, 10.0, 100.0):
            if abs(nchg_distribution(m1, n1, n, psi).weights.sum() - 1.0) > 1e-12:
                failures.append(f"pmf normalization at ({m1},{n1},{n},{psi})")

    # exhaustive small-N enumeration oracle <= 1e-12
    for n in range(1, 13):
        for a in range(n + 1):
            for b in range(n + 1 - a):
                for c in range(n + 1 - a - b):
                    t = Table2x2(a, b, c, n - a - b - c)
                    for psi in (0.5, 1.0, 2.7):
                        n0 = t.n - t.exposed
                        ws = {
                            k: comb(t.exposed, k) * comb(n0, t.cases - k) * psi**k
                            for k in range(
                                max(0, t.exposed + t.cases - t.n),
                                min(t.exposed, t.cases) + 1,
                            )
                        }
                        tot = sum(ws.values())
                        lo = sum(w for k, w in ws.items() if k <= t.a) / tot
                        up = sum(w for k, w in ws.items() if k >= t.a) / tot
                        if abs(exact_tail(t, psi, "lower") - lo) > 1e-12 or abs(
                            exact_tail(t, psi, "upper") - up
                        ) > 1e-12:
                            failures.append(f"enumeration oracle at {t.counts()} psi={psi}")

    # test-inversion duality on 200 random tables
    alpha = 0.05
    for t in random_interior_tables(seed=77, count=200):
        iv = exact_limits(t, alpha)
        step = log(10) / 50
        grid = np.exp(np.arange(log(iv.lower) - 0.4, log(iv.upper) + 0.4, step))
        inside = np.flatnonzero(np.array([exact_p(t, g).p > alpha for g in grid]))
        if len(inside) == 0 or not np.all(np.diff(inside) == 1):
            failures.append(f"duality region not contiguous for {t.counts()}")
            continue
        if abs(log(grid[inside[0]] / iv.lower)) > step + 1e-9 or abs(
            log(grid[inside[-1]] / iv.upper)
        ) > step + 1e-9:
            failures.append(f"duality mismatch for {t.counts()}")

    # flip symmetry <= 1e-10
    for t in random_interior_tables(seed=78, count=30):
        for psi in (0.4, 1.0, 3.1):
            if abs(exact_p(flip_exposure(t), 1 / psi).p - exact_p(t, psi).p) > 1e-10:
                failures.append(f"flip symmetry at {t.counts()} psi={psi}")

    # S-additivity <= 1e-10
    rng = np.random.default_rng(5)
    for _ in range(200):
        p1, p2 = rng.uniform(1e-9, 1.0, size=2)
        if abs(s_value(p1 * p2) - (s_value(p1) + s_value(p2))) > 1e-10:
            failures.append(f"s additivity at ({p1}, {p2})")

    # power at the degenerate levels is exact
    spec0 = PowerSpec(
        n_exposed=50, n_unexposed=50, baseline_risk=0.1, or_pop=2.0,
        alpha=0.0, test="exact", n_sims=1000, seed=3,
    )
    if power_mc(spec0).estimate != 0.0:
        failures.append("power(alpha=0) != 0")
    spec1 = PowerSpec(
        n_exposed=50, n_unexposed=50, baseline_risk=0.1, or_pop=2.0,
        alpha=1.0, test="exact", n_sims=1000, seed=3,
    )
    if power_mc(spec1).estimate != 1.0:
        failures.append("power(alpha=1) != 1")

    # exact-test rejection rate at the true null <= alpha + 3 mc over 5 scenarios
    null_grid = [
        (50, 50, 0.10), (100, 100, 0.05), (120, 480, 0.033),
        (30, 30, 0.20), (200, 100, 0.02),
    ]
    for n1, n0, risk in null_grid:
        spec = PowerSpec(
            n_exposed=n1, n_unexposed=n0, baseline_risk=risk, or_pop=1.0,
            alpha=0.05, test="exact", n_sims=10_000, seed=17,
        )
        r = power_mc(spec)
        bound = 0.05 + 3 * math.sqrt(0.05 * 0.95 / 10_000)
        if r.estimate > bound:
            failures.append(f"null rejection {r.estimate:.4f} > {bound:.4f} at {(n1, n0, risk)}")

    report("09 property suites", not failures, "; ".join(failures) or "all property gates hold")


def test_criterion_10_coverage_claims():
    failures = []

    table1_scenario = Scenario(
        n_exposed=480, n_unexposed=120, baseline_risk=0.033, or_pop=2.636,
        label="survey-shaped",
    )
    cov = coverage_sim(table1_scenario, "exact", 0.05, 10_000, seed=404)
    if not cov.estimate >= 0.95 - 3 * cov.mc_error:
        failures.append(f"exact coverage {cov.estimate:.4f} < 0.95 - 3 mc")

    sparse = Scenario(n_exposed=50, n_unexposed=50, baseline_risk=0.02, or_pop=4.0)
    cov_exact = coverage_sim(sparse, "exact", 0.05, 10_000, seed=405)
    cov_wald = coverage_sim(sparse, "wald", 0.05, 10_000, seed=405)
    if not cov_wald.estimate < cov_exact.estimate:
        failures.append(
            f"wald coverage {cov_wald.estimate:.4f} not below exact {cov_exact.estimate:.4f}"
        )

    low_power = Scenario(n_exposed=100, n_unexposed=100, baseline_risk=0.05, or_pop=1.5)
    filt = significance_filter_sim(low_power, 0.05, 10_000, seed=406)
    if not filt.estimate > abs(math.log(1.5)):
        failures.append(
            f"filter conditional mean {filt.estimate:.4f} not above |ln 1.5|"
        )

    detail = (
        f"exact coverage={cov.estimate:.4f} (mc {cov.mc_error:.4f}); "
        f"sparse: wald={cov_wald.estimate:.4f} < exact={cov_exact.estimate:.4f}; "
        f"filter mean |log OR|={filt.estimate:.4f} vs |ln 1.5|={abs(math.log(1.5)):.4f}"
    )
    report("10 coverage claims", not failures, "; ".join(failures) or detail)
