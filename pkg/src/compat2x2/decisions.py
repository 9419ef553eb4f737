"""Level-alpha decision rules, their interval-based equivalent, Monte Carlo
power, and multiplicity arithmetic.

Decisions are reported as "reject" / "fail-to-reject at level alpha"; the
word "significant" appears nowhere in this package's output, since the rule
says nothing about practical importance.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import norm

from .asymptotic import WaldInput, log_or_se, pearson_p, sample_log_or, wald_p
from .errors import InvalidAlpha, InvalidK, InvalidP, InvalidSpec
from .estimates import IntervalEstimate
from .exact import exact_p, nchg_distribution
from .reports import Scenario, SimReport, rate_mc_error
from .rng import substream
from .sampling import draw_case_counts, per_unique_table
from .table import Table2x2

TESTS = ("exact", "pearson", "wald")


@dataclass(frozen=True)
class TestDecision:
    """Outcome of comparing an observed P-value to a cutoff."""

    p: float
    alpha: float
    decision: str  # "reject" or "accept"

    @property
    def rendered(self) -> str:
        word = "reject" if self.decision == "reject" else "fail-to-reject"
        return f"{word} at level {self.alpha:g}"

    def to_dict(self) -> dict:
        return {"p": self.p, "alpha": self.alpha, "decision": self.decision}

    @classmethod
    def from_dict(cls, d: dict) -> "TestDecision":
        return cls(p=d["p"], alpha=d["alpha"], decision=d["decision"])


def alpha_test(p: float, alpha: float) -> TestDecision:
    """reject if p <= alpha; don't reject if p > alpha."""
    if math.isnan(p) or not 0.0 <= p <= 1.0:
        raise InvalidP(f"p must be in [0, 1], got {p}")
    if not 0.0 < alpha < 1.0:
        raise InvalidAlpha(f"alpha must be in (0, 1), got {alpha}")
    return TestDecision(p=p, alpha=alpha, decision="reject" if p <= alpha else "accept")


def interval_test(iv: IntervalEstimate, psi: float) -> TestDecision:
    """Reject when the interval excludes psi; dual to the alpha-level rule on
    the P-value the interval inverts (p is not recomputed here)."""
    decision = "accept" if iv.contains(psi) else "reject"
    return TestDecision(p=math.nan, alpha=iv.alpha, decision=decision)


def decision_p_value(t: Table2x2, method: str, psi: float = 1.0, rule: str = "central") -> float:
    """P-value used inside simulated decision rules.

    Tables with no usable test statistic (a degenerate case margin, or a
    zero cell for the Wald method) score p = 1: no evidence, never rejected
    below alpha = 1, always rejected at alpha = 1.
    """
    dist = nchg_distribution(t.cases, t.exposed, t.n, 1.0)
    if dist.a_min == dist.a_max:
        return 1.0
    if method == "exact":
        return exact_p(t, psi, rule=rule).p
    if method == "pearson":
        return pearson_p(t, psi).p
    if method == "wald":
        if min(t.counts()) == 0:
            return 1.0
        return wald_p(WaldInput(b=sample_log_or(t), se=log_or_se(t), c=math.log(psi)))
    raise InvalidSpec(f"unknown test {method!r}")


@dataclass(frozen=True)
class PowerSpec:
    """A two-arm design, a true odds ratio, and the test to run on it."""

    n_exposed: int
    n_unexposed: int
    baseline_risk: float
    or_pop: float
    alpha: float
    test: str = "exact"
    n_sims: int = 10_000
    seed: int = 0

    def __post_init__(self):
        if self.n_exposed < 1 or self.n_unexposed < 1:
            raise InvalidSpec("group sizes must be >= 1")
        if not 0.0 < self.baseline_risk < 1.0:
            raise InvalidSpec(f"baseline_risk must be in (0, 1), got {self.baseline_risk}")
        if not self.or_pop > 0.0 or math.isinf(self.or_pop):
            raise InvalidSpec(f"or_pop must be positive and finite, got {self.or_pop}")
        if math.isnan(self.alpha) or not 0.0 <= self.alpha <= 1.0:
            raise InvalidSpec(f"alpha must be in [0, 1], got {self.alpha}")
        if self.test not in TESTS:
            raise InvalidSpec(f"test must be one of {TESTS}, got {self.test!r}")
        if self.n_sims < 1:
            raise InvalidSpec("n_sims must be >= 1")
        if self.seed < 0:
            raise InvalidSpec("seed must be a nonnegative integer")

    def scenario(self) -> Scenario:
        return Scenario(
            n_exposed=self.n_exposed,
            n_unexposed=self.n_unexposed,
            baseline_risk=self.baseline_risk,
            or_pop=self.or_pop,
            label=f"power({self.test})",
        )


def power_mc(spec: PowerSpec, context: int = 0) -> SimReport:
    """Rejection rate of the null-OR test under the specified alternative.

    Replicate draws depend only on (seed, context, index) -- not on alpha or
    the test -- so power is exactly monotone in alpha at a fixed seed and
    method comparisons are paired.
    """
    sc = spec.scenario()
    a, c = draw_case_counts(sc, spec.n_sims, spec.seed, context)
    ps = per_unique_table(sc, a, c, lambda t: decision_p_value(t, spec.test))
    rejected = ps <= spec.alpha
    rate = float(rejected.mean())
    cases = a + c
    undefined = (cases == 0) | (cases == sc.n_exposed + sc.n_unexposed)
    if spec.test == "wald":
        undefined |= (a == 0) | (c == 0) | (a == sc.n_exposed) | (c == sc.n_unexposed)
    return SimReport(
        scenario=sc,
        method=f"power-{spec.test}",
        n_sims=spec.n_sims,
        seed=spec.seed,
        estimate=rate,
        mc_error=rate_mc_error(rate, spec.n_sims),
        extras={
            "beta": 1.0 - rate,
            "alpha": spec.alpha,
            "undefined_fraction": float(undefined.mean()),
        },
    )


def power_curve(spec: PowerSpec, or_grid: list[float]) -> list[SimReport]:
    """power_mc at each grid odds ratio, one substream context per point."""
    if not or_grid:
        raise InvalidSpec("or_grid must be non-empty")
    out = []
    for i, or_pop in enumerate(or_grid):
        point_spec = PowerSpec(
            n_exposed=spec.n_exposed,
            n_unexposed=spec.n_unexposed,
            baseline_risk=spec.baseline_risk,
            or_pop=or_pop,
            alpha=spec.alpha,
            test=spec.test,
            n_sims=spec.n_sims,
            seed=spec.seed,
        )
        out.append(power_mc(point_spec, context=i))
    return out


def bonferroni(alpha: float, k: int) -> float:
    """The divided cutoff alpha / k."""
    if math.isnan(alpha) or not 0.0 < alpha < 1.0:
        raise InvalidAlpha(f"alpha must be in (0, 1), got {alpha}")
    if not isinstance(k, int) or k < 1:
        raise InvalidK(f"test count must be an integer >= 1, got {k!r}")
    return alpha / k


def familywise_rate(
    alpha: float,
    k: int,
    dependence: str = "independent",
    rho: float | None = None,
    n_sims: int = 10_000,
    seed: int | None = None,
) -> SimReport:
    """Chance of at least one p <= alpha among k tests of correct hypotheses.

    ``independent`` and ``perfectly-correlated`` are the analytic extremes
    1 - (1-alpha)**k and alpha. ``simulated`` draws equicorrelated normal
    test statistics (z_i = sqrt(rho) z0 + sqrt(1-rho) e_i) and interpolates
    between them.
    """
    if math.isnan(alpha) or not 0.0 < alpha < 1.0:
        raise InvalidAlpha(f"alpha must be in (0, 1), got {alpha}")
    if not isinstance(k, int) or k < 1:
        raise InvalidK(f"test count must be an integer >= 1, got {k!r}")

    if dependence == "independent":
        rate = 1.0 - (1.0 - alpha) ** k
        return SimReport(
            scenario=None, method="familywise-independent", n_sims=0, seed=None,
            estimate=rate, mc_error=0.0, extras={"alpha": alpha, "k": k},
        )
    if dependence == "perfectly-correlated":
        return SimReport(
            scenario=None, method="familywise-perfectly-correlated", n_sims=0, seed=None,
            estimate=alpha, mc_error=0.0, extras={"alpha": alpha, "k": k},
        )
    if dependence == "simulated":
        if rho is None or math.isnan(rho) or not 0.0 <= rho <= 1.0:
            raise InvalidSpec(f"simulated mode needs rho in [0, 1], got {rho}")
        if n_sims < 1:
            raise InvalidSpec("n_sims must be >= 1")
        if seed is None or seed < 0:
            raise InvalidSpec("simulated mode needs a nonnegative seed")
        z_crit = float(norm.isf(alpha / 2.0))  # two-sided test at alpha
        hits = 0
        sq_rho = math.sqrt(rho)
        sq_com = math.sqrt(1.0 - rho)
        for i in range(n_sims):
            gen = substream(seed, i, context=0)
            z0 = gen.standard_normal()
            e = gen.standard_normal(k)
            z = sq_rho * z0 + sq_com * e
            if np.any(np.abs(z) >= z_crit):
                hits += 1
        rate = hits / n_sims
        return SimReport(
            scenario=None,
            method=f"familywise-simulated(rho={rho:g})",
            n_sims=n_sims,
            seed=seed,
            estimate=rate,
            mc_error=rate_mc_error(rate, n_sims),
            extras={"alpha": alpha, "k": k, "rho": rho},
        )
    raise InvalidSpec(f"unknown dependence mode {dependence!r}")
