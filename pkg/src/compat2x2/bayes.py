"""Bayesian analysis via data priors.

An interval prior on a ratio parameter (e.g. "95% certain the ratio is
between 0.83 and 1.20") is translated into prior data: the pseudo-counts a
perfect balanced two-arm trial would need to carry the same information. A
normal prior on the log ratio with standard deviation v**0.5 matches a
balanced trial with A = 2/v cases per arm, since such a trial estimates the
log ratio with variance ~ 2/A.

The augmented fit concatenates that pseudo-trial onto the observed table as
a second stratum of a logistic model (one intercept per stratum, shared
exposure coefficient, an offset recentering the prior stratum on the
prior's midpoint) and maximizes the penalized likelihood by Newton/IRLS.
The mode and curvature approximate the posterior mode and SD. Frequentist
results are always computed and reported alongside so the prior's influence
is visible.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import expit
from scipy.stats import norm

from .errors import DegeneratePrior, InvalidSpec, NonConvergence
from .table import Table2x2

PSEUDO_NONCASES_PER_ARM = 1_000_000.0  # large enough that 2/Z is negligible next to 2/A
GRADIENT_TOL = 1e-10
MAX_ITER = 100


@dataclass(frozen=True)
class IntervalPrior:
    """Prior probability ``level`` that the true ratio lies in (lower, upper),
    read as a normal distribution on the log scale."""

    lower: float
    upper: float
    level: float = 0.95
    scale: str = "odds-ratio"

    def __post_init__(self):
        if not (self.lower > 0 and math.isfinite(self.lower) and math.isfinite(self.upper)):
            raise InvalidSpec(f"prior bounds must be positive and finite, got ({self.lower}, {self.upper})")
        if self.lower > self.upper:
            raise InvalidSpec("prior lower bound exceeds upper bound")
        if not 0.0 < self.level < 1.0:
            raise InvalidSpec(f"prior level must be in (0, 1), got {self.level}")
        if self.scale not in ("odds-ratio", "rate-ratio"):
            raise InvalidSpec(f"scale must be 'odds-ratio' or 'rate-ratio', got {self.scale!r}")

    def to_dict(self) -> dict:
        return {"lower": self.lower, "upper": self.upper, "level": self.level, "scale": self.scale}

    @classmethod
    def from_dict(cls, d: dict) -> "IntervalPrior":
        return cls(lower=d["lower"], upper=d["upper"], level=d.get("level", 0.95), scale=d.get("scale", "odds-ratio"))


@dataclass(frozen=True)
class PriorData:
    """Pseudo-data equivalent of an interval prior.

    ``cases_per_arm`` is real-valued and is what enters the fit as
    fractional weights. ``trial_cases_per_arm`` is the smallest integer arm
    count whose implied interval lies inside the prior interval -- the
    "cases you would need to observe" reading of the prior's strength.
    ``center_log_ratio`` is the midpoint of the log bounds; asymmetric
    priors are re-centered there and the report says so.
    """

    cases_per_arm: float
    implied_se: float
    center_log_ratio: float
    level: float
    scale: str

    @property
    def total_cases(self) -> float:
        return 2.0 * self.cases_per_arm

    @property
    def trial_cases_per_arm(self) -> int:
        return math.ceil(self.cases_per_arm - 1e-9)

    @property
    def trial_total_cases(self) -> int:
        return 2 * self.trial_cases_per_arm

    def implied_interval(self) -> tuple[float, float]:
        """The (lower, upper) the pseudo-data encode; inverts prior_to_data."""
        z = float(norm.ppf(0.5 + self.level / 2.0))
        return (
            math.exp(self.center_log_ratio - z * self.implied_se),
            math.exp(self.center_log_ratio + z * self.implied_se),
        )

    def to_dict(self) -> dict:
        return {
            "cases_per_arm": self.cases_per_arm,
            "implied_se": self.implied_se,
            "center_log_ratio": self.center_log_ratio,
            "level": self.level,
            "scale": self.scale,
            "total_cases": self.total_cases,
            "trial_cases_per_arm": self.trial_cases_per_arm,
            "trial_total_cases": self.trial_total_cases,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PriorData":
        return cls(
            cases_per_arm=d["cases_per_arm"],
            implied_se=d["implied_se"],
            center_log_ratio=d["center_log_ratio"],
            level=d["level"],
            scale=d["scale"],
        )


def prior_to_data(prior: IntervalPrior) -> PriorData:
    """Convert an interval prior into equivalent balanced-trial pseudo-data.

    implied_se = (ln upper - ln lower) / (2 z), cases_per_arm = 2/implied_se^2,
    with z the two-sided normal quantile for the prior level.
    """
    if prior.lower == prior.upper:
        raise DegeneratePrior("prior interval has zero width")
    z = float(norm.ppf(0.5 + prior.level / 2.0))
    implied_se = (math.log(prior.upper) - math.log(prior.lower)) / (2.0 * z)
    return PriorData(
        cases_per_arm=2.0 / implied_se**2,
        implied_se=implied_se,
        center_log_ratio=0.5 * (math.log(prior.lower) + math.log(prior.upper)),
        level=prior.level,
        scale=prior.scale,
    )


@dataclass(frozen=True)
class AugmentedFit:
    """Posterior-mode summary next to the plain frequentist fit.

    ``separated`` flags a boundary frequentist MLE (a zero cell); the
    frequentist log OR is then +/-inf with no SE, while the augmented fit
    can still exist because the prior regularizes it.
    """

    log_or_posterior: float
    se_posterior: float
    frequentist_log_or: float
    frequentist_se: float
    converged: bool
    iterations: int
    separated: bool = False

    def to_dict(self) -> dict:
        return {
            "log_or_posterior": self.log_or_posterior,
            "se_posterior": self.se_posterior,
            "or_posterior": math.exp(self.log_or_posterior),
            "frequentist_log_or": self.frequentist_log_or,
            "frequentist_se": self.frequentist_se,
            "converged": self.converged,
            "iterations": self.iterations,
            "separated": self.separated,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "AugmentedFit":
        return cls(
            log_or_posterior=d["log_or_posterior"],
            se_posterior=d["se_posterior"],
            frequentist_log_or=d["frequentist_log_or"],
            frequentist_se=d["frequentist_se"],
            converged=d["converged"],
            iterations=d["iterations"],
            separated=d.get("separated", False),
        )


def _weighted_loglik(beta, X, y, w, offset) -> float:
    eta = X @ beta + offset
    return float(np.sum(w * (y * eta - np.logaddexp(0.0, eta))))


def _irls(X, y, w, offset, tol=GRADIENT_TOL, max_iter=MAX_ITER):
    """Newton maximization of the weighted Bernoulli log likelihood, with
    step halving whenever a full step would decrease it."""
    beta = np.zeros(X.shape[1])
    ll = _weighted_loglik(beta, X, y, w, offset)
    # slack for the monotonicity check must sit above the evaluation noise
    # of the log likelihood itself, which scales with its magnitude
    slack = 1e-12 * (1.0 + abs(ll))
    for iteration in range(1, max_iter + 1):
        eta = X @ beta + offset
        mu = expit(eta)
        grad = X.T @ (w * (y - mu))
        # variance floor keeps the Hessian invertible if a step saturates a
        # fitted probability mid-path; the gradient stays exact, so the
        # convergence criterion is unaffected
        wvar = w * np.maximum(mu * (1.0 - mu), 1e-10)
        hessian = X.T @ (wvar[:, None] * X)
        if np.max(np.abs(grad)) < tol:
            return beta, hessian, iteration - 1, True
        step = np.linalg.solve(hessian, grad)
        biggest = np.max(np.abs(step))
        if biggest > 30.0:
            step *= 30.0 / biggest
        scale = 1.0
        for _ in range(40):
            candidate = beta + scale * step
            ll_new = _weighted_loglik(candidate, X, y, w, offset)
            if ll_new >= ll - slack:
                break
            scale *= 0.5
        beta = beta + scale * step
        ll = ll_new
        slack = 1e-12 * (1.0 + abs(ll))
    raise NonConvergence(f"IRLS did not reach gradient norm < {tol} in {max_iter} iterations")


def _table_records(t: Table2x2):
    # (y, weight, exposure) rows; zero-weight cells dropped
    rows = [
        (1.0, float(t.a), 1.0),
        (0.0, float(t.b), 1.0),
        (1.0, float(t.c), 0.0),
        (0.0, float(t.d), 0.0),
    ]
    return [r for r in rows if r[1] > 0.0]


def augment_and_fit(t: Table2x2, prior: PriorData | None = None) -> AugmentedFit:
    """Fit the table's log OR with and without the prior pseudo-stratum.

    Without a prior the two sets of results coincide. With one, the model is
    outcome ~ stratum intercepts + shared exposure coefficient over the
    actual stratum and a balanced pseudo-stratum carrying cases_per_arm
    cases and 10**6 noncases per arm, offset so its information centers on
    the prior midpoint with variance implied_se**2.
    """
    separated = min(t.counts()) == 0
    if separated:
        if t.a * t.d == 0 and t.b * t.c == 0:
            freq_log_or = math.nan
        else:
            freq_log_or = math.inf if t.b * t.c == 0 else -math.inf
        freq_se = math.nan
        freq_iters = 0
    else:
        rows = _table_records(t)
        X = np.array([[1.0, r[2]] for r in rows])
        y = np.array([r[0] for r in rows])
        w = np.array([r[1] for r in rows])
        beta, hessian, freq_iters, _ = _irls(X, y, w, np.zeros(len(rows)))
        cov = np.linalg.inv(hessian)
        freq_log_or = float(beta[1])
        freq_se = float(math.sqrt(cov[1, 1]))

    if prior is None:
        return AugmentedFit(
            log_or_posterior=freq_log_or,
            se_posterior=freq_se,
            frequentist_log_or=freq_log_or,
            frequentist_se=freq_se,
            converged=not separated,
            iterations=freq_iters,
            separated=separated,
        )

    if not prior.cases_per_arm > 0:
        raise InvalidSpec("prior pseudo-count must be positive")

    mu = prior.center_log_ratio
    amount = prior.cases_per_arm
    z_nc = PSEUDO_NONCASES_PER_ARM
    # columns: actual intercept, prior intercept, exposure; offset -mu on
    # exposed prior rows puts the prior stratum's mode at beta = mu
    rows = [(y_, w_, x_, 1.0, 0.0, 0.0) for (y_, w_, x_) in _table_records(t)]
    rows += [
        (1.0, amount, 1.0, 0.0, 1.0, -mu),
        (0.0, z_nc, 1.0, 0.0, 1.0, -mu),
        (1.0, amount, 0.0, 0.0, 1.0, 0.0),
        (0.0, z_nc, 0.0, 0.0, 1.0, 0.0),
    ]
    X = np.array([[r[3], r[4], r[2]] for r in rows])
    y = np.array([r[0] for r in rows])
    w = np.array([r[1] for r in rows])
    offset = np.array([r[5] for r in rows])

    beta, hessian, iterations, converged = _irls(X, y, w, offset)
    cov = np.linalg.inv(hessian)
    return AugmentedFit(
        log_or_posterior=float(beta[2]),
        se_posterior=float(math.sqrt(cov[2, 2])),
        frequentist_log_or=freq_log_or,
        frequentist_se=freq_se,
        converged=converged,
        iterations=iterations,
        separated=separated,
    )
