"""Shared result types for interval and point estimation on the OR scale."""

import math
from dataclasses import dataclass, field


@dataclass(frozen=True)
class IntervalEstimate:
    """Compatibility limits on the odds-ratio scale.

    ``lower`` may be 0.0 and ``upper`` ``inf`` for boundary tables (one-sided
    limits). ``method`` tags how the limits were obtained: ``exact``,
    ``wald``, or ``pearson-inversion``.
    """

    lower: float
    upper: float
    alpha: float
    method: str
    scale: str = "OR"

    def contains(self, psi: float) -> bool:
        return self.lower <= psi <= self.upper

    @property
    def log_width(self) -> float:
        if self.lower <= 0 or math.isinf(self.upper):
            return math.inf
        return math.log(self.upper / self.lower)

    def to_dict(self) -> dict:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "alpha": self.alpha,
            "method": self.method,
            "scale": self.scale,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "IntervalEstimate":
        return cls(
            lower=d["lower"],
            upper=d["upper"],
            alpha=d["alpha"],
            method=d["method"],
            scale=d.get("scale", "OR"),
        )


@dataclass(frozen=True)
class PointEstimate:
    """Odds-ratio point estimate from the exact P-value function.

    ``psi`` is the headline value: the log-scale midpoint of the set where
    the two-sided P-value attains its maximum (a plateau at p = 1 for the
    default rule on interior tables). ``cmle`` is the conditional MLE, the
    root of E_psi[A] = a_obs; the two usually differ in later decimals and
    ``discrepancy`` is |log(psi / cmle)|. Boundary tables (observed count at
    an end of the support) carry ``boundary=True`` with ``psi`` and ``cmle``
    at 0.0 or ``inf``.
    """

    psi: float
    cmle: float
    p_max: float
    plateau: tuple[float, float] = field(default=(math.nan, math.nan))
    boundary: bool = False

    @property
    def discrepancy(self) -> float:
        if self.boundary:
            return 0.0
        return abs(math.log(self.psi / self.cmle))

    def to_dict(self) -> dict:
        return {
            "psi": self.psi,
            "cmle": self.cmle,
            "p_max": self.p_max,
            "plateau": list(self.plateau),
            "boundary": self.boundary,
            "discrepancy": self.discrepancy,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PointEstimate":
        return cls(
            psi=d["psi"],
            cmle=d["cmle"],
            p_max=d["p_max"],
            plateau=tuple(d["plateau"]),
            boundary=d["boundary"],
        )
