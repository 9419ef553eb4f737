"""Large-sample approximations: Pearson chi-square, Wald log-OR method, and
a generalized Pearson statistic invertible over hypothesized odds ratios.

These are the methods statistical software usually reports; the exact
module is the benchmark they are compared against.
"""

import math
from dataclasses import dataclass

from scipy.stats import chi2, norm

from .errors import InvalidAlpha, InvalidPsi, NonpositiveSE, ZeroCell, ZeroExpectedCount
from .estimates import IntervalEstimate
from .exact import exact_limits, exact_p
from .rootfind import bisect_monotone
from .table import Table2x2


@dataclass(frozen=True)
class Chi2Result:
    """Pearson statistic with its chi-square reference upper tail."""

    t: float
    df: int
    p: float

    def to_dict(self) -> dict:
        return {"t": self.t, "df": self.df, "p": self.p}

    @classmethod
    def from_dict(cls, d: dict) -> "Chi2Result":
        return cls(t=d["t"], df=d["df"], p=d["p"])


@dataclass(frozen=True)
class WaldInput:
    """Point estimate b, its standard error, and hypothesized value c,
    all on the analysis (log-OR) scale."""

    b: float
    se: float
    c: float = 0.0

    def to_dict(self) -> dict:
        return {"b": self.b, "se": self.se, "c": self.c}

    @classmethod
    def from_dict(cls, d: dict) -> "WaldInput":
        return cls(b=d["b"], se=d["se"], c=d.get("c", 0.0))


def expected_counts_at(t: Table2x2, psi: float) -> tuple[float, float, float, float]:
    """Margin-preserving expected counts under OR = psi (canonical order).

    For psi = 1 these are the usual row*column/N products. Otherwise the
    exposed-case expectation x solves the margin-constrained quadratic

        x * (N - n1 - m1 + x) = psi * (n1 - x) * (m1 - x)

    and has exactly one root inside the support interval.
    """
    if math.isnan(psi) or psi <= 0 or math.isinf(psi):
        raise InvalidPsi(f"psi must be positive and finite, got {psi}")
    n = t.n
    n1, m1 = t.exposed, t.cases
    lo, hi = max(0, n1 + m1 - n), min(n1, m1)
    if lo == hi:
        x = float(lo)
    elif psi == 1.0:
        x = n1 * m1 / n
    else:
        # (1 - psi) x^2 + [(N - n1 - m1) + psi (n1 + m1)] x - psi n1 m1 = 0
        qa = 1.0 - psi
        qb = (n - n1 - m1) + psi * (n1 + m1)
        qc = -psi * n1 * m1
        disc = math.sqrt(qb * qb - 4.0 * qa * qc)
        # qb > 0 always; take the numerically stable root and pick the one in range
        x = 2.0 * qc / (-qb - disc)
        if not lo < x < hi:
            x = (-qb + disc) / (2.0 * qa)
    return (x, n1 - x, m1 - x, n - n1 - m1 + x)


def pearson_p(t: Table2x2, psi: float = 1.0) -> Chi2Result:
    """Pearson statistic sum((O - E)^2 / E) against OR = psi, df = 1."""
    expected = expected_counts_at(t, psi)
    if min(expected) <= 0.0:
        raise ZeroExpectedCount("a zero margin leaves an expected count of zero")
    stat = sum((o - e) ** 2 / e for o, e in zip(t.counts(), expected))
    return Chi2Result(t=stat, df=1, p=float(chi2.sf(stat, 1)))


def pearson_chi2(t: Table2x2) -> Chi2Result:
    """The classic independence chi-square (psi = 1), uncorrected."""
    return pearson_p(t, 1.0)


def sample_log_or(t: Table2x2, corrected: bool = False) -> float:
    """ln(ad/bc); with ``corrected`` adds 0.5 to every cell (defined for all
    tables, used by the sparse-bias simulation)."""
    if corrected:
        return math.log(
            (t.a + 0.5) * (t.d + 0.5) / ((t.b + 0.5) * (t.c + 0.5))
        )
    if min(t.counts()) == 0:
        if t.a * t.d == 0 and t.b * t.c == 0:
            return math.nan
        return math.inf if t.b * t.c == 0 else -math.inf
    return math.log(t.a * t.d / (t.b * t.c))


def log_or_se(t: Table2x2, corrected: bool = False) -> float:
    """Woolf standard error sqrt(1/a + 1/b + 1/c + 1/d) of the log OR."""
    if corrected:
        return math.sqrt(sum(1.0 / (x + 0.5) for x in t.counts()))
    if min(t.counts()) == 0:
        raise ZeroCell("log-OR standard error requires all four cells > 0")
    return math.sqrt(sum(1.0 / x for x in t.counts()))


def wald_p(inp: WaldInput) -> float:
    """Two-sided normal-approximation P-value from the score |b - c| / se."""
    if not inp.se > 0:
        raise NonpositiveSE(f"standard error must be positive, got {inp.se}")
    z = abs(inp.b - inp.c) / inp.se
    return float(2.0 * norm.sf(z))


def wald_limits(b: float, se: float, alpha: float) -> IntervalEstimate:
    """Normal-approximation limits exp(b +/- z * se), reported on the OR scale.

    Uses the exact normal quantile (1.959964... at alpha = 0.05); the
    familiar 1.96 is display shorthand. alpha = 1 degenerates to the point
    exp(b).
    """
    if not se > 0:
        raise NonpositiveSE(f"standard error must be positive, got {se}")
    if not 0.0 < alpha <= 1.0:
        raise InvalidAlpha(f"alpha must be in (0, 1], got {alpha}")
    z = float(norm.ppf(1.0 - alpha / 2.0))
    return IntervalEstimate(
        lower=math.exp(b - z * se),
        upper=math.exp(b + z * se),
        alpha=alpha,
        method="wald",
    )


def wald_limits_for(t: Table2x2, alpha: float) -> IntervalEstimate:
    return wald_limits(sample_log_or(t), log_or_se(t), alpha)


def pearson_limits(t: Table2x2, alpha: float) -> IntervalEstimate:
    """Limits from inverting the generalized Pearson statistic at alpha."""
    if not 0.0 < alpha < 1.0:
        raise InvalidAlpha(f"alpha must be in (0, 1), got {alpha}")
    if min(t.counts()) == 0:
        raise ZeroCell("pearson inversion requires all four cells > 0")
    center = math.log(t.a * t.d / (t.b * t.c))

    def f(log_psi: float) -> float:
        return pearson_p(t, math.exp(log_psi)).p - alpha

    def solve(direction: float) -> float:
        outer = center + direction
        steps = 0
        while f(outer) > 0.0:
            outer += direction
            steps += 1
            if steps > 600:
                return math.inf if direction > 0 else 0.0
        lo, hi = sorted((center, outer))
        return math.exp(bisect_monotone(f, lo, hi, tol=1e-10))

    return IntervalEstimate(
        lower=solve(-1.0),
        upper=solve(+1.0),
        alpha=alpha,
        method="pearson-inversion",
    )


@dataclass(frozen=True)
class MethodComparison:
    """Side-by-side exact vs approximate results for one table."""

    psi: float
    alpha: float
    p_exact: float
    p_pearson: float
    p_wald: float
    exact_interval: IntervalEstimate
    wald_interval: IntervalEstimate | None

    def to_dict(self) -> dict:
        return {
            "psi": self.psi,
            "alpha": self.alpha,
            "p_exact": self.p_exact,
            "p_pearson": self.p_pearson,
            "p_wald": self.p_wald,
            "exact_interval": self.exact_interval.to_dict(),
            "wald_interval": None if self.wald_interval is None else self.wald_interval.to_dict(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "MethodComparison":
        return cls(
            psi=d["psi"],
            alpha=d["alpha"],
            p_exact=d["p_exact"],
            p_pearson=d["p_pearson"],
            p_wald=d["p_wald"],
            exact_interval=IntervalEstimate.from_dict(d["exact_interval"]),
            wald_interval=None
            if d["wald_interval"] is None
            else IntervalEstimate.from_dict(d["wald_interval"]),
        )


def method_comparison(t: Table2x2, psi: float = 1.0, alpha: float = 0.05) -> MethodComparison:
    """The exact and approximate answers to the same question, together.

    The Wald entries are None when a zero cell makes them undefined, which
    is itself the point being illustrated for sparse tables.
    """
    p_exact = exact_p(t, psi).p
    p_pearson = pearson_p(t, psi).p
    if min(t.counts()) > 0:
        b = sample_log_or(t)
        p_w = wald_p(WaldInput(b=b, se=log_or_se(t), c=math.log(psi)))
        wald_iv = wald_limits_for(t, alpha)
    else:
        p_w = math.nan
        wald_iv = None
    exact_iv = exact_limits(t, alpha)
    return MethodComparison(
        psi=psi,
        alpha=alpha,
        p_exact=p_exact,
        p_pearson=p_pearson,
        p_wald=p_w,
        exact_interval=exact_iv,
        wald_interval=wald_iv,
    )


