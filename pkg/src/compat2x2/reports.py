"""Scenario and simulation-report types shared by the power and Monte Carlo
modules, plus their JSON/CSV wire formats.

Scenario files are a JSON array of Scenario objects; reports are emitted as
JSON lines or CSV rows.
"""

import json
import math
from dataclasses import dataclass, field

from .errors import InvalidSpec


@dataclass(frozen=True)
class Scenario:
    """Two independent binomial arms: the generative model behind all
    frequency claims checked by simulation."""

    n_exposed: int
    n_unexposed: int
    baseline_risk: float
    or_pop: float
    label: str = ""

    def __post_init__(self):
        if self.n_exposed < 1 or self.n_unexposed < 1:
            raise InvalidSpec("group sizes must be >= 1")
        if not 0.0 < self.baseline_risk < 1.0:
            raise InvalidSpec(f"baseline_risk must be in (0, 1), got {self.baseline_risk}")
        if not self.or_pop > 0.0 or math.isinf(self.or_pop) or math.isnan(self.or_pop):
            raise InvalidSpec(f"or_pop must be positive and finite, got {self.or_pop}")

    def to_dict(self) -> dict:
        return {
            "n_exposed": self.n_exposed,
            "n_unexposed": self.n_unexposed,
            "baseline_risk": self.baseline_risk,
            "or_pop": self.or_pop,
            "label": self.label,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Scenario":
        return cls(
            n_exposed=d["n_exposed"],
            n_unexposed=d["n_unexposed"],
            baseline_risk=d["baseline_risk"],
            or_pop=d["or_pop"],
            label=d.get("label", ""),
        )


@dataclass(frozen=True)
class SimReport:
    """One estimated rate or mean with its Monte Carlo standard error.

    For rate estimates mc_error = sqrt(est*(1-est)/n); for means it is the
    standard error of the mean. ``extras`` carries named auxiliary
    statistics (undefined fractions, medians, alternative conventions).
    """

    scenario: Scenario | None
    method: str
    n_sims: int
    seed: int | None
    estimate: float
    mc_error: float
    extras: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "scenario": None if self.scenario is None else self.scenario.to_dict(),
            "method": self.method,
            "n_sims": self.n_sims,
            "seed": self.seed,
            "estimate": self.estimate,
            "mc_error": self.mc_error,
            "extras": dict(self.extras),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SimReport":
        return cls(
            scenario=None if d["scenario"] is None else Scenario.from_dict(d["scenario"]),
            method=d["method"],
            n_sims=d["n_sims"],
            seed=d["seed"],
            estimate=d["estimate"],
            mc_error=d["mc_error"],
            extras=dict(d["extras"]),
        )

    def to_json_line(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False)


def rate_mc_error(rate: float, n: int) -> float:
    return math.sqrt(max(rate * (1.0 - rate), 0.0) / n) if n > 0 else math.nan


def scenarios_from_json(text: str) -> list[Scenario]:
    """Parse a scenario batch file (JSON array of Scenario objects)."""
    raw = json.loads(text)
    if not isinstance(raw, list):
        raise InvalidSpec("scenario file must contain a JSON array")
    return [Scenario.from_dict(d) for d in raw]


def reports_to_csv(reports: list[SimReport]) -> str:
    """Flat CSV: one row per report, extras flattened into extra.<name>."""
    extra_keys = sorted({k for r in reports for k in r.extras})
    header = [
        "label", "n_exposed", "n_unexposed", "baseline_risk", "or_pop",
        "method", "n_sims", "seed", "estimate", "mc_error",
    ] + [f"extra.{k}" for k in extra_keys]
    lines = [",".join(header)]
    for r in reports:
        sc = r.scenario
        row = [
            sc.label if sc else "",
            str(sc.n_exposed) if sc else "",
            str(sc.n_unexposed) if sc else "",
            "%.15g" % sc.baseline_risk if sc else "",
            "%.15g" % sc.or_pop if sc else "",
            r.method,
            str(r.n_sims),
            "" if r.seed is None else str(r.seed),
            "%.15g" % r.estimate,
            "%.15g" % r.mc_error,
        ] + ["%.15g" % r.extras[k] if k in r.extras else "" for k in extra_keys]
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"
