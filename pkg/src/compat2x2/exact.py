"""Exact conditional inference for the odds ratio of a 2x2 table.

Conditioning on both margins leaves one free cell, A = exposed-case count,
whose distribution under hypothesized odds ratio psi is noncentral
hypergeometric:

    Pr(A = k) proportional to C(n1, k) * C(n0, m1 - k) * psi**k

over the support k in [max(0, n1 + m1 - N), min(n1, m1)], where n1/n0 are
the exposed/unexposed margins and m1 the case margin. psi = 1 is the central
(Fisher) case. All combinatorics run in log space via lgamma; normalization
subtracts the max log weight, so margins in the hundreds of thousands are
fine.

Two two-sided rules are provided:

* ``central`` (default): twice the smaller tail, capped at 1. Continuous and
  unimodal in psi, with the maximum p = 1 attained on a plateau; inverting
  it at level alpha is identical to pairing the two one-sided alpha/2 tails.
* ``minlik``: total probability of outcomes no more probable than the one
  observed. Discontinuous in psi where outcome probabilities tie.

The default is pinned by golden tests to the rule that reproduces the
benchmark values of the canonical 600-person worked example.

A ``midp`` variant of either rule subtracts half the observed point
probability from each tail first; it is never the default.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InvalidAlpha, InvalidPsi
from .estimates import IntervalEstimate, PointEstimate
from .rootfind import bisect_monotone
from .table import Table2x2

_TIE_REL_EPS = 1e-7  # relative slack when comparing outcome probabilities (minlik rule)
_LOG_PSI_TOL = 1e-10  # bisection width on the log-psi axis
_MAX_BRACKET_STEPS = 600

TWO_SIDED_RULES = ("central", "minlik")


@dataclass(frozen=True)
class NchgDistribution:
    """Noncentral hypergeometric distribution of the exposed-case count."""

    m1: int
    n1: int
    n: int
    psi: float
    support: np.ndarray
    weights: np.ndarray

    @property
    def a_min(self) -> int:
        return int(self.support[0])

    @property
    def a_max(self) -> int:
        return int(self.support[-1])

    def mean(self) -> float:
        return float(np.dot(self.support, self.weights))


@lru_cache(maxsize=8192)
def _log_base_weights(m1: int, n1: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Support and psi-independent log binomial products for given margins."""
    n0 = n - n1
    a_min = max(0, n1 + m1 - n)
    a_max = min(n1, m1)
    ks = np.arange(a_min, a_max + 1)
    lg = math.lgamma
    base = np.array(
        [
            lg(n1 + 1) - lg(k + 1) - lg(n1 - k + 1)
            + lg(n0 + 1) - lg(m1 - k + 1) - lg(n0 - m1 + k + 1)
            for k in ks
        ]
    )
    ks.setflags(write=False)
    base.setflags(write=False)
    return ks, base


def nchg_distribution(m1: int, n1: int, n: int, psi: float) -> NchgDistribution:
    """Build the conditional distribution for margins (m1, n1, N) at psi.

    psi = 0 and psi = inf are accepted as the limiting point masses at the
    ends of the support (needed when expanding root-search brackets).
    """
    if not 0 <= m1 <= n or not 0 <= n1 <= n or n < 1:
        raise InvalidPsi(f"inconsistent margins m1={m1}, n1={n1}, N={n}")
    if math.isnan(psi) or psi < 0:
        raise InvalidPsi(f"psi must be in [0, inf], got {psi}")
    ks, base = _log_base_weights(m1, n1, n)
    if psi == 0.0 or math.isinf(psi):
        w = np.zeros(len(ks))
        w[0 if psi == 0.0 else -1] = 1.0
    else:
        lw = base + ks * math.log(psi)
        lw = lw - lw.max()
        w = np.exp(lw)
        w /= w.sum()
    w.setflags(write=False)
    return NchgDistribution(m1=m1, n1=n1, n=n, psi=psi, support=ks, weights=w)


def _dist_for(t: Table2x2, psi: float) -> NchgDistribution:
    return nchg_distribution(t.cases, t.exposed, t.n, psi)


def nchg_pmf(dist: NchgDistribution, a: int) -> float:
    """Exact probability of observing ``a`` exposed cases; 0 off support."""
    if not 0 < dist.psi < math.inf:
        raise InvalidPsi(f"pmf requires positive finite psi, got {dist.psi}")
    if a < dist.a_min or a > dist.a_max:
        return 0.0
    return float(dist.weights[a - dist.a_min])


def _tails(dist: NchgDistribution, a_obs: int) -> tuple[float, float, float]:
    """(lower, upper, point) probabilities at the observed count."""
    ks = dist.support
    w = dist.weights
    lower = float(w[ks <= a_obs].sum())
    upper = float(w[ks >= a_obs].sum())
    point = float(w[ks == a_obs].sum())
    return min(lower, 1.0), min(upper, 1.0), point


def exact_tail(t: Table2x2, psi: float, side: str) -> float:
    """One-sided exact tail probability conditional on both margins.

    ``upper`` is Pr(A >= a_obs; psi), ``lower`` is Pr(A <= a_obs; psi).
    The two overlap in the observed point: lower + upper = 1 + pmf(a_obs).
    """
    if side not in ("lower", "upper"):
        raise ValueError(f"side must be 'lower' or 'upper', got {side!r}")
    if math.isnan(psi) or psi < 0:
        raise InvalidPsi(f"psi must be in [0, inf], got {psi}")
    lower, upper, _ = _tails(_dist_for(t, psi), t.a)
    return lower if side == "lower" else upper


@dataclass(frozen=True)
class ExactPValue:
    """Exact P-value for one hypothesized odds ratio."""

    p: float
    psi: float
    side: str
    method: str

    def to_dict(self) -> dict:
        return {"p": self.p, "psi": self.psi, "side": self.side, "method": self.method}

    @classmethod
    def from_dict(cls, d: dict) -> "ExactPValue":
        return cls(p=d["p"], psi=d["psi"], side=d["side"], method=d["method"])


def _two_sided_p(dist: NchgDistribution, a_obs: int, rule: str, midp: bool) -> float:
    lower, upper, point = _tails(dist, a_obs)
    if rule == "central":
        half = 0.5 * point if midp else 0.0
        p = 2.0 * (min(lower, upper) - half)
    elif rule == "minlik":
        w = dist.weights
        p_obs = float(w[dist.support == a_obs].sum())
        p = float(w[w <= p_obs * (1.0 + _TIE_REL_EPS)].sum())
        if midp:
            p -= 0.5 * p_obs
    else:
        raise ValueError(f"unknown two-sided rule {rule!r}")
    return min(max(p, 0.0), 1.0)


def exact_p(t: Table2x2, psi: float, rule: str = "central", midp: bool = False) -> ExactPValue:
    """Two-sided exact P-value for the hypothesis OR = psi."""
    if math.isnan(psi) or psi <= 0 or math.isinf(psi):
        raise InvalidPsi(f"psi must be positive and finite, got {psi}")
    dist = _dist_for(t, psi)
    p = _two_sided_p(dist, t.a, rule, midp)
    method = rule + ("-midp" if midp else "")
    return ExactPValue(p=p, psi=psi, side="two-sided", method=method)


def _log_or_guess(t: Table2x2) -> float:
    # +0.5 smoothing only to seed bracket expansion; never reported
    return math.log((t.a + 0.5) * (t.d + 0.5) / ((t.b + 0.5) * (t.c + 0.5)))


def _solve_tail(t: Table2x2, side: str, target: float, start: float) -> float:
    """log-psi where the given tail equals ``target``.

    The upper tail is nondecreasing in psi and the lower tail nonincreasing,
    so a geometrically expanded bracket plus bisection is guaranteed.
    """
    sign = 1.0 if side == "upper" else -1.0

    def f(log_psi: float) -> float:
        return sign * (exact_tail(t, math.exp(log_psi), side) - target)

    lo = hi = start
    flo = fhi = f(start)
    steps = 0
    while flo > 0.0:  # move down until tail below target
        lo -= 1.0
        flo = f(lo)
        steps += 1
        if steps > _MAX_BRACKET_STEPS:
            raise ArithmeticError("tail bracket expansion failed (low side)")
    steps = 0
    while fhi < 0.0:
        hi += 1.0
        fhi = f(hi)
        steps += 1
        if steps > _MAX_BRACKET_STEPS:
            raise ArithmeticError("tail bracket expansion failed (high side)")
    if lo == hi:
        return lo
    return bisect_monotone(f, lo, hi, tol=_LOG_PSI_TOL)


def conditional_mle(t: Table2x2) -> float:
    """Conditional MLE of the odds ratio: the psi with E_psi[A] = a_obs.

    Returns 0.0 / inf for boundary tables (observed count at an end of the
    support); nan when the support is a single point.
    """
    dist = _dist_for(t, 1.0)
    if dist.a_min == dist.a_max:
        return math.nan
    if t.a == dist.a_min:
        return 0.0
    if t.a == dist.a_max:
        return math.inf

    def f(log_psi: float) -> float:
        return _dist_for(t, math.exp(log_psi)).mean() - t.a

    lo = hi = _log_or_guess(t)
    steps = 0
    while f(lo) > 0.0:
        lo -= 1.0
        steps += 1
        if steps > _MAX_BRACKET_STEPS:
            raise ArithmeticError("conditional mean bracket failed")
    steps = 0
    while f(hi) < 0.0:
        hi += 1.0
        steps += 1
        if steps > _MAX_BRACKET_STEPS:
            raise ArithmeticError("conditional mean bracket failed")
    if lo == hi:
        return math.exp(lo)
    return math.exp(bisect_monotone(f, lo, hi, tol=_LOG_PSI_TOL))


def _minlik_argmax(t: Table2x2, cmle: float) -> tuple[float, float]:
    # The minlik p function jumps where outcome probabilities tie, so the
    # maximizer is located on a fixed fine grid (400 points per decade).
    lo, hi = math.log(cmle) - 3 * math.log(2), math.log(cmle) + 3 * math.log(2)
    npts = int(400 * (hi - lo) / math.log(10)) + 1
    grid = np.linspace(lo, hi, npts)
    ps = np.array([exact_p(t, math.exp(g), rule="minlik").p for g in grid])
    top = ps.max()
    run = grid[ps >= top - 1e-12]
    return math.exp(0.5 * (run[0] + run[-1])), float(top)


def point_estimate(t: Table2x2, rule: str = "central") -> PointEstimate:
    """Maximizer of the exact P-value function, plus the conditional MLE.

    For the central rule the P-value function equals 1 on a plateau
    [psi_a, psi_b] (where both one-sided tails are >= 1/2); the headline
    estimate is the plateau's log-scale midpoint and the plateau itself is
    reported. Boundary tables get a tagged 0/inf estimate instead of an
    error; the finite one-sided limit is still available from
    :func:`exact_limits`.
    """
    cmle = conditional_mle(t)
    if math.isnan(cmle):
        return PointEstimate(psi=math.nan, cmle=math.nan, p_max=1.0, boundary=True)
    if cmle == 0.0 or math.isinf(cmle):
        return PointEstimate(psi=cmle, cmle=cmle, p_max=1.0, boundary=True)

    if rule == "central":
        start = math.log(cmle)
        psi_a = math.exp(_solve_tail(t, "upper", 0.5, start))
        psi_b = math.exp(_solve_tail(t, "lower", 0.5, start))
        psi_hat = math.exp(0.5 * (math.log(psi_a) + math.log(psi_b)))
        p_max = exact_p(t, psi_hat, rule="central").p
        return PointEstimate(psi=psi_hat, cmle=cmle, p_max=p_max, plateau=(psi_a, psi_b))
    if rule == "minlik":
        psi_hat, p_max = _minlik_argmax(t, cmle)
        return PointEstimate(psi=psi_hat, cmle=cmle, p_max=p_max)
    raise ValueError(f"unknown two-sided rule {rule!r}")


def exact_limits(
    t: Table2x2,
    alpha: float,
    rule: str = "central",
    construction: str = "invert-two-sided",
) -> IntervalEstimate:
    """Compatibility limits: the two roots of the exact P-value at alpha.

    ``construction='one-sided-pair'`` instead pairs the two one-sided
    alpha/2 tail equations. For the default central rule the two
    constructions coincide exactly; they differ only under ``minlik``.
    Boundary tables yield one-sided limits (0 or inf on the open side).
    """
    if not 0.0 < alpha < 1.0:
        raise InvalidAlpha(f"alpha must be in (0, 1), got {alpha}")
    if construction not in ("invert-two-sided", "one-sided-pair"):
        raise ValueError(f"unknown construction {construction!r}")

    dist = _dist_for(t, 1.0)
    if dist.a_min == dist.a_max:
        return IntervalEstimate(lower=0.0, upper=math.inf, alpha=alpha, method="exact")

    start = _log_or_guess(t)
    if rule == "central" or construction == "one-sided-pair":
        # p(psi) = alpha on the low side <=> Pr(A >= a_obs; psi) = alpha/2
        if t.a == dist.a_min:
            lower = 0.0
        else:
            lower = math.exp(_solve_tail(t, "upper", alpha / 2.0, start))
        if t.a == dist.a_max:
            upper = math.inf
        else:
            upper = math.exp(_solve_tail(t, "lower", alpha / 2.0, start))
        return IntervalEstimate(lower=lower, upper=upper, alpha=alpha, method="exact")

    # minlik inversion: bisect on the p > alpha predicate out from the
    # estimate. p is discontinuous at probability ties, so the returned
    # limit is where the predicate flips, located to _LOG_PSI_TOL.
    if t.a in (dist.a_min, dist.a_max):
        # no interior estimate to search out from; the one-sided tail
        # equation is the only well-defined construction here
        return exact_limits(t, alpha, construction="one-sided-pair")
    est = point_estimate(t, rule="minlik")

    def p_at(log_psi: float) -> float:
        return exact_p(t, math.exp(log_psi), rule="minlik").p

    def solve(direction: float) -> float:
        inner = math.log(est.psi)  # p > alpha here
        outer = inner + direction
        steps = 0
        while p_at(outer) > alpha:
            outer += direction
            steps += 1
            if steps > _MAX_BRACKET_STEPS:
                return math.inf if direction > 0 else 0.0
        lo, hi = sorted((inner, outer))
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            inside = p_at(mid) > alpha
            # keep the bracket straddling the inside/outside flip
            if inside == (direction > 0):
                lo = mid
            else:
                hi = mid
            if hi - lo < _LOG_PSI_TOL:
                break
        return math.exp(0.5 * (lo + hi))

    if t.a == dist.a_min:
        lower = 0.0
    else:
        lower = solve(-1.0)
    if t.a == dist.a_max:
        upper = math.inf
    else:
        upper = solve(+1.0)
    return IntervalEstimate(lower=lower, upper=upper, alpha=alpha, method="exact")
