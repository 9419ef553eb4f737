"""Canonical 2x2 table, validation, and descriptive association measures.

Cell order convention, used everywhere in this package:

    a: exposed cases        b: exposed noncases
    c: unexposed cases      d: unexposed noncases

Counts are observed; margins (total cases, total exposed, ...) are always
derived, never stored. Degenerate ratios (zero denominators) are encoded in
the summary as ``inf``/``nan`` rather than raised, so description never
aborts: description comes first, whatever the data look like.
"""

import math
from dataclasses import dataclass

from .errors import EmptyTable, NegativeCount


def _as_count(value, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, (int,)) and not (
        hasattr(value, "__index__")
    ):
        raise NegativeCount(f"{name} must be a nonnegative integer, got {value!r}")
    n = int(value)
    if n < 0:
        raise NegativeCount(f"{name} must be nonnegative, got {n}")
    return n


@dataclass(frozen=True)
class Table2x2:
    """Four nonnegative counts in canonical exposed/unexposed x case/noncase layout."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, _as_count(getattr(self, name), name))
        if self.n == 0:
            raise EmptyTable("table has no observations")

    @property
    def n(self) -> int:
        return self.a + self.b + self.c + self.d

    @property
    def cases(self) -> int:
        return self.a + self.c

    @property
    def noncases(self) -> int:
        return self.b + self.d

    @property
    def exposed(self) -> int:
        return self.a + self.b

    @property
    def unexposed(self) -> int:
        return self.c + self.d

    def counts(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def to_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c, "d": self.d}

    @classmethod
    def from_dict(cls, d: dict) -> "Table2x2":
        return cls(d["a"], d["b"], d["c"], d["d"])


@dataclass(frozen=True)
class AssociationSummary:
    """Descriptive measures plus expected counts under independence.

    ``rr`` and ``or_`` are ``inf`` when only their denominator vanishes and
    ``nan`` when the measure is 0/0; ``rd`` is ``nan`` when either group is
    empty. ``expected`` is in canonical (a, b, c, d) order and preserves both
    margins exactly.
    """

    rd: float
    rr: float
    or_: float
    p_exposed: float
    p_unexposed: float
    odds_exposed: float
    odds_unexposed: float
    expected: tuple[float, float, float, float]

    def to_dict(self) -> dict:
        return {
            "rd": self.rd,
            "rr": self.rr,
            "or": self.or_,
            "p_exposed": self.p_exposed,
            "p_unexposed": self.p_unexposed,
            "odds_exposed": self.odds_exposed,
            "odds_unexposed": self.odds_unexposed,
            "expected": list(self.expected),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "AssociationSummary":
        return cls(
            rd=d["rd"],
            rr=d["rr"],
            or_=d["or"],
            p_exposed=d["p_exposed"],
            p_unexposed=d["p_unexposed"],
            odds_exposed=d["odds_exposed"],
            odds_unexposed=d["odds_unexposed"],
            expected=tuple(d["expected"]),
        )


def new_table(a: int, b: int, c: int, d: int) -> Table2x2:
    """Validated table from four nonnegative integer counts."""
    return Table2x2(a, b, c, d)


def _ratio(num: float, den: float) -> float:
    if den > 0:
        return num / den
    return math.nan if num == 0 else math.inf


def summarize(t: Table2x2) -> AssociationSummary:
    """Risk difference, risk ratio, odds ratio, group proportions and odds,
    and expected counts under the independence hypothesis."""
    n = t.n
    p1 = t.a / t.exposed if t.exposed else math.nan
    p0 = t.c / t.unexposed if t.unexposed else math.nan
    odds1 = _ratio(t.a, t.b)
    odds0 = _ratio(t.c, t.d)

    rd = p1 - p0
    rr = _ratio(p1, p0) if not (math.isnan(p1) or math.isnan(p0)) else math.nan
    if t.b * t.c > 0:
        or_ = (t.a * t.d) / (t.b * t.c)
    else:
        or_ = math.nan if t.a * t.d == 0 else math.inf

    expected = (
        t.exposed * t.cases / n,
        t.exposed * t.noncases / n,
        t.unexposed * t.cases / n,
        t.unexposed * t.noncases / n,
    )
    return AssociationSummary(
        rd=rd,
        rr=rr,
        or_=or_,
        p_exposed=p1,
        p_unexposed=p0,
        odds_exposed=odds1,
        odds_unexposed=odds0,
        expected=expected,
    )


def flip_exposure(t: Table2x2) -> Table2x2:
    """Swap the exposed and unexposed groups (an involution; OR inverts)."""
    return Table2x2(t.c, t.d, t.a, t.b)
