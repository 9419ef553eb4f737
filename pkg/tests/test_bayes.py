import math

import numpy as np
import pytest

from compat2x2 import (
    IntervalPrior,
    PriorData,
    Table2x2,
    augment_and_fit,
    log_or_se,
    prior_to_data,
    sample_log_or,
)
from compat2x2.errors import DegeneratePrior, InvalidSpec

from conftest import random_interior_tables


def grid_posterior_mode(t: Table2x2, prior: PriorData, lo=-1.0, hi=2.0, step=1e-4):
    """Independent oracle: argmax over a log-OR grid of
    {actual-data binomial log likelihood, intercept profiled out}
    + {normal log prior density at the prior's center and SE}."""
    beta = np.arange(lo, hi + step / 2, step)
    gamma = np.full_like(beta, -2.0)
    n1, n0 = t.exposed, t.unexposed
    for _ in range(200):
        e1 = 1.0 / (1.0 + np.exp(-np.clip(gamma + beta, -700, 700)))
        e0 = 1.0 / (1.0 + np.exp(-np.clip(gamma, -700, 700)))
        g = (t.a - n1 * e1) + (t.c - n0 * e0)
        h = np.maximum(n1 * e1 * (1 - e1) + n0 * e0 * (1 - e0), 1e-300)
        delta = np.clip(g / h, -1.5, 1.5)  # damped Newton: plain steps diverge at extreme beta
        gamma = gamma + delta
        if np.max(np.abs(delta)) < 1e-12:
            break
    eta1, eta0 = gamma + beta, gamma
    loglik = (
        t.a * eta1 - n1 * np.logaddexp(0.0, eta1)
        + t.c * eta0 - n0 * np.logaddexp(0.0, eta0)
    )
    penalty = -((beta - prior.center_log_ratio) ** 2) / (2.0 * prior.implied_se**2)
    return float(beta[np.argmax(loglik + penalty)])


THE_PRIOR = IntervalPrior(lower=1 / 1.20, upper=1.20, level=0.95)


# --- prior_to_data -------------------------------------------------------------


def test_prior_data_golden_232_per_arm():
    pd = prior_to_data(THE_PRIOR)
    assert pd.trial_cases_per_arm == 232
    assert pd.trial_total_cases == 464
    assert pd.cases_per_arm == pytest.approx(231.13, abs=0.01)
    assert pd.implied_se == pytest.approx(math.sqrt(2 / pd.cases_per_arm), rel=1e-12)


def test_prior_data_halving_doubling():
    pd = prior_to_data(IntervalPrior(lower=0.5, upper=2.0, level=0.95))
    assert pd.implied_se == pytest.approx(0.3536, abs=1e-3)
    assert pd.cases_per_arm == pytest.approx(16.0, abs=0.02)
    assert pd.center_log_ratio == pytest.approx(0.0, abs=1e-12)


def test_prior_data_degenerate():
    with pytest.raises(DegeneratePrior):
        prior_to_data(IntervalPrior(lower=1.2, upper=1.2))


def test_prior_validation():
    with pytest.raises(InvalidSpec):
        IntervalPrior(lower=-1.0, upper=2.0)
    with pytest.raises(InvalidSpec):
        IntervalPrior(lower=2.0, upper=1.0)
    with pytest.raises(InvalidSpec):
        IntervalPrior(lower=0.5, upper=2.0, level=1.0)


@pytest.mark.parametrize("bounds", [(1 / 1.2, 1.2), (0.5, 2.0), (0.8, 3.5), (1.5, 4.0)])
def test_prior_data_round_trip(bounds):
    # reconstructing the interval from the pseudo-data recovers the bounds
    prior = IntervalPrior(lower=bounds[0], upper=bounds[1], level=0.95)
    lo, hi = prior_to_data(prior).implied_interval()
    assert lo == pytest.approx(bounds[0], rel=0.005)
    assert hi == pytest.approx(bounds[1], rel=0.005)


def test_prior_data_dict_round_trip():
    pd = prior_to_data(THE_PRIOR)
    assert PriorData.from_dict(pd.to_dict()) == pd


# --- augmented fit --------------------------------------------------------------


def test_no_prior_fit_equals_closed_form(survey_table):
    fit = augment_and_fit(survey_table, None)
    assert fit.log_or_posterior == pytest.approx(fit.frequentist_log_or, abs=1e-10)
    assert fit.frequentist_log_or == pytest.approx(math.log(2.6363636363636362), abs=1e-8)
    assert fit.frequentist_se == pytest.approx(log_or_se(survey_table), abs=1e-6)
    assert fit.converged


def test_augmented_fit_table1_matches_oracle(survey_table):
    pd = prior_to_data(THE_PRIOR)
    fit = augment_and_fit(survey_table, pd)
    oracle = grid_posterior_mode(survey_table, pd)
    assert fit.log_or_posterior == pytest.approx(oracle, abs=1e-3)
    assert fit.converged


def test_prior_dominates_table1(survey_table):
    # the 0.83-1.20 prior carries far more information than the 600-person
    # table, so the posterior sits much closer to the prior center than to
    # the frequentist estimate
    fit = augment_and_fit(survey_table, prior_to_data(THE_PRIOR))
    post, freq = fit.log_or_posterior, fit.frequentist_log_or
    assert 0.0 < post < freq
    assert abs(post) < abs(post - freq)


def test_shrinkage_direction_and_monotone_strength():
    for t in random_interior_tables(seed=3, count=10, lo=5, hi=80):
        freq = sample_log_or(t)
        if abs(freq) < 1e-6:
            continue
        modes = []
        for half_width in (1.5, 0.8, 0.3):  # increasingly strong null-centered priors
            prior = prior_to_data(
                IntervalPrior(lower=math.exp(-half_width), upper=math.exp(half_width))
            )
            fit = augment_and_fit(t, prior)
            assert 0.0 < abs(fit.log_or_posterior) < abs(freq)
            assert fit.log_or_posterior * freq > 0  # same side of the null
            modes.append(abs(fit.log_or_posterior))
        assert modes[0] > modes[1] > modes[2]


def test_information_additivity_non_sparse():
    # Gaussian information heuristic: posterior precision ~ data precision +
    # prior precision. It holds where prior and data roughly agree (the
    # curvature of the data likelihood is evaluated at the shrunken mode, so
    # gross disagreement moves it); priors are centered on the estimate here.
    for t in random_interior_tables(seed=13, count=10, lo=10, hi=200):
        center = sample_log_or(t)
        prior = prior_to_data(
            IntervalPrior(lower=math.exp(center - 0.5), upper=math.exp(center + 0.5))
        )
        fit = augment_and_fit(t, prior)
        lhs = 1.0 / fit.se_posterior**2
        rhs = 1.0 / fit.frequentist_se**2 + 1.0 / prior.implied_se**2
        assert lhs == pytest.approx(rhs, rel=0.10)


def test_oracle_agreement_random_pairs():
    # priors centered near the data (see notes in the simulate/bayes design):
    # binomial pseudo-data encode a log-F penalty whose far-tail deviates
    # from the oracle's exact normal penalty, so the 1e-3 contract is for
    # the compatible regime
    rng = np.random.default_rng(99)
    tables = random_interior_tables(seed=21, count=50, lo=8, hi=250)
    for t in tables:
        freq = sample_log_or(t)
        center = freq + rng.uniform(-0.2, 0.2)
        strength = rng.uniform(0.17, 0.63)  # implied prior cases/arm ~ 20..270
        prior = prior_to_data(
            IntervalPrior(
                lower=math.exp(center - strength), upper=math.exp(center + strength)
            )
        )
        fit = augment_and_fit(t, prior)
        lo = min(center, freq) - 0.6
        hi = max(center, freq) + 0.6
        oracle = grid_posterior_mode(t, prior, lo=lo, hi=hi)
        assert fit.log_or_posterior == pytest.approx(oracle, abs=1e-3), t


def test_separated_table_tagged_and_regularized():
    t = Table2x2(2, 0, 0, 2)
    fit = augment_and_fit(t, None)
    assert fit.separated
    assert math.isinf(fit.frequentist_log_or)
    assert not fit.converged

    prior = prior_to_data(IntervalPrior(lower=0.5, upper=2.0))
    fit = augment_and_fit(t, prior)
    assert fit.separated
    assert math.isinf(fit.frequentist_log_or)
    assert math.isfinite(fit.log_or_posterior)
    assert fit.converged


def test_no_cases_at_all_posterior_equals_prior():
    # a table with no cases carries no odds-ratio information: the augmented
    # fit returns the prior itself, with the frequentist side tagged
    prior = prior_to_data(IntervalPrior(0.5, 2.0))
    fit = augment_and_fit(Table2x2(0, 10, 0, 10), prior)
    assert fit.separated
    assert math.isnan(fit.frequentist_log_or)
    assert fit.log_or_posterior == pytest.approx(prior.center_log_ratio, abs=1e-8)
    assert fit.se_posterior == pytest.approx(prior.implied_se, rel=1e-3)


def test_fractional_pseudo_counts_enter_as_weights(survey_table):
    # a prior with non-integer cases_per_arm must fit without complaint
    prior = prior_to_data(IntervalPrior(lower=0.77, upper=1.93, level=0.9))
    assert prior.cases_per_arm != round(prior.cases_per_arm)
    fit = augment_and_fit(survey_table, prior)
    assert fit.converged
