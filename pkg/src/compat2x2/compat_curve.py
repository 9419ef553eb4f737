"""P-value (compatibility) and S-value (surprisal) functions over grids of
hypothesized odds ratios, and their serialization.

The S-value s = -log2(p) measures the information the observed statistic
supplies against the tested model, in bits; it is additive over independent
P-values. The coin-toss equivalent is the number of consecutive heads in
fair tosses carrying about the same surprise.
"""

import io
import json
import math
from dataclasses import dataclass, field

from .asymptotic import WaldInput, log_or_se, pearson_p, sample_log_or, wald_p
from .errors import EmptyCurve, InvalidGrid, InvalidP, UnsupportedFormat
from .exact import exact_p, point_estimate
from .parallel import parallel_map
from .table import Table2x2

CURVE_METHODS = ("exact", "wald", "pearson")

DEFAULT_POINTS_PER_DECADE = 200
DEFAULT_SPAN = 64.0  # default grid runs from psi_hat/64 to psi_hat*64


def s_value(p: float) -> float:
    """Surprisal -log2(p) in bits; p = 0 maps to inf."""
    if math.isnan(p) or p < 0.0 or p > 1.0:
        raise InvalidP(f"p must be in [0, 1], got {p}")
    if p == 0.0:
        return math.inf
    return -math.log2(p)


def coin_toss_equivalent(p: float) -> int:
    """Nearest toss count n to the surprisal, i.e. (1/2)**n closest to p on
    the log scale; exact half-integers round toward fewer tosses."""
    if math.isnan(p) or p <= 0.0 or p > 1.0:
        raise InvalidP(f"p must be in (0, 1], got {p}")
    s = s_value(p)
    return max(0, math.ceil(s - 0.5))


def coin_toss_bracket(p: float) -> tuple[int, float, float]:
    """(n, (1/2)**n, (1/2)**(n-1)): the equivalent count with the two
    bracketing all-heads probabilities (the second is 2.0 when n = 0)."""
    n = coin_toss_equivalent(p)
    return n, 0.5**n, 0.5 ** (n - 1)


@dataclass(frozen=True)
class CompatibilityPoint:
    psi: float
    p: float
    s: float

    def to_dict(self) -> dict:
        return {"psi": self.psi, "p": self.p, "s": self.s}

    @classmethod
    def from_dict(cls, d: dict) -> "CompatibilityPoint":
        return cls(psi=d["psi"], p=d["p"], s=d["s"])


@dataclass(frozen=True)
class CompatibilityCurve:
    """An ordered grid of (psi, p, s) points for one table and method."""

    points: tuple[CompatibilityPoint, ...]
    method: str
    source: str
    alpha_marks: tuple[float, ...] = field(default=(0.05,))

    @property
    def psi_max(self) -> float:
        """Grid psi with the largest p (midpoint of the attained-max run)."""
        top = max(pt.p for pt in self.points)
        run = [pt.psi for pt in self.points if pt.p >= top - 1e-12]
        return math.exp(0.5 * (math.log(run[0]) + math.log(run[-1])))

    @property
    def p_max(self) -> float:
        return max(pt.p for pt in self.points)

    def crossings(self, alpha: float) -> tuple[float, float]:
        """Grid psi values where p crosses alpha, by log-linear interpolation
        (nan on a side that never crosses)."""
        pts = self.points
        lower = upper = math.nan
        for i in range(len(pts) - 1):
            p0, p1 = pts[i].p, pts[i + 1].p
            if (p0 - alpha) * (p1 - alpha) < 0.0:
                frac = (alpha - p0) / (p1 - p0)
                log_psi = math.log(pts[i].psi) + frac * math.log(pts[i + 1].psi / pts[i].psi)
                if p1 > p0:
                    lower = math.exp(log_psi)
                else:
                    upper = math.exp(log_psi)
        return lower, upper

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "source": self.source,
            "alpha_marks": list(self.alpha_marks),
            "points": [pt.to_dict() for pt in self.points],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CompatibilityCurve":
        return cls(
            points=tuple(CompatibilityPoint.from_dict(p) for p in d["points"]),
            method=d["method"],
            source=d["source"],
            alpha_marks=tuple(d["alpha_marks"]),
        )


def _p_function(t: Table2x2, method: str, rule: str, midp: bool):
    if method == "exact":
        return lambda psi: exact_p(t, psi, rule=rule, midp=midp).p
    if method == "pearson":
        return lambda psi: pearson_p(t, psi).p
    if method == "wald":
        b = sample_log_or(t)
        se = log_or_se(t)
        return lambda psi: wald_p(WaldInput(b=b, se=se, c=math.log(psi)))
    raise UnsupportedFormat(f"unknown curve method {method!r}")


def default_grid(t: Table2x2) -> tuple[float, float, int]:
    """(psi_min, psi_max, points_per_decade) centered on the exact point
    estimate, wide enough to resolve 2-dp limit crossings without root
    finding."""
    est = point_estimate(t)
    center = est.psi if not est.boundary and math.isfinite(est.psi) else 1.0
    return center / DEFAULT_SPAN, center * DEFAULT_SPAN, DEFAULT_POINTS_PER_DECADE


def compatibility_curve(
    t: Table2x2,
    grid: tuple[float, float, int] | None = None,
    method: str = "exact",
    alpha_marks: tuple[float, ...] = (0.05,),
    rule: str = "central",
    midp: bool = False,
) -> CompatibilityCurve:
    """Evaluate the chosen P-value function on a log-uniform psi grid.

    ``grid`` is (psi_min, psi_max, points_per_decade). Points are
    independent, so they are fanned out via the thread helper and assembled
    in psi order.
    """
    if method not in CURVE_METHODS:
        raise UnsupportedFormat(f"unknown curve method {method!r}")
    if grid is None:
        grid = default_grid(t)
    psi_min, psi_max, ppd = grid
    if not (0.0 < psi_min < psi_max) or ppd < 1:
        raise InvalidGrid(f"need 0 < psi_min < psi_max and points_per_decade >= 1, got {grid}")

    lo, hi = math.log10(psi_min), math.log10(psi_max)
    n_pts = max(2, int(round((hi - lo) * ppd)) + 1)
    psis = [10.0 ** (lo + (hi - lo) * i / (n_pts - 1)) for i in range(n_pts)]

    p_of = _p_function(t, method, rule, midp)
    ps = parallel_map(p_of, psis)
    points = tuple(
        CompatibilityPoint(psi=psi, p=p, s=s_value(p)) for psi, p in zip(psis, ps)
    )
    source = ",".join(str(x) for x in t.counts())
    return CompatibilityCurve(points=points, method=method, source=source, alpha_marks=tuple(alpha_marks))


def render_curve(curve: CompatibilityCurve, fmt: str, width: int = 720, height: int = 480) -> bytes:
    """Serialize a curve as csv, json, or a standalone svg document."""
    if not curve.points:
        raise EmptyCurve("cannot render an empty curve")
    if fmt == "csv":
        return _render_csv(curve)
    if fmt == "json":
        return _render_json(curve)
    if fmt == "svg":
        return _render_svg(curve, width, height)
    raise UnsupportedFormat(f"unknown render format {fmt!r}")


def _render_csv(curve: CompatibilityCurve) -> bytes:
    import csv

    buf = io.StringIO(newline="")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["psi", "p", "s"])
    for pt in curve.points:
        writer.writerow(["%.15g" % pt.psi, "%.15g" % pt.p, "%.15g" % pt.s])
    return buf.getvalue().encode()


def _render_json(curve: CompatibilityCurve) -> bytes:
    return json.dumps(curve.to_dict()).encode()


def _svg_x(log_psi: float, lo: float, hi: float, width: int) -> float:
    margin = 60.0
    return margin + (log_psi - lo) / (hi - lo) * (width - 2 * margin)


def _svg_y(p: float, height: int) -> float:
    margin = 40.0
    return height - margin - p * (height - 2 * margin)


def _render_svg(curve: CompatibilityCurve, width: int, height: int) -> bytes:
    """Static SVG 1.1: p against log psi, a right-hand s axis, and one
    horizontal rule per alpha mark."""
    pts = curve.points
    lo = math.log10(pts[0].psi)
    hi = math.log10(pts[-1].psi)
    if hi <= lo:
        hi = lo + 1.0

    path = " ".join(
        f"{'M' if i == 0 else 'L'} {_svg_x(math.log10(pt.psi), lo, hi, width):.2f} "
        f"{_svg_y(pt.p, height):.2f}"
        for i, pt in enumerate(pts)
    )

    out = io.StringIO()
    out.write(
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}">\n'
    )
    out.write(f'<rect width="{width}" height="{height}" fill="white"/>\n')

    # decade ticks on the psi axis
    for d in range(math.ceil(lo), math.floor(hi) + 1):
        x = _svg_x(float(d), lo, hi, width)
        out.write(
            f'<line x1="{x:.2f}" y1="{_svg_y(0, height):.2f}" x2="{x:.2f}" '
            f'y2="{_svg_y(0, height) + 5:.2f}" stroke="black"/>\n'
            f'<text x="{x:.2f}" y="{_svg_y(0, height) + 18:.2f}" font-size="11" '
            f'text-anchor="middle">{10.0 ** d:g}</text>\n'
        )

    # alpha rules
    for alpha in curve.alpha_marks:
        y = _svg_y(alpha, height)
        out.write(
            f'<line class="alpha-rule" x1="{_svg_x(lo, lo, hi, width):.2f}" y1="{y:.2f}" '
            f'x2="{_svg_x(hi, lo, hi, width):.2f}" y2="{y:.2f}" '
            'stroke="gray" stroke-dasharray="4 3"/>\n'
            f'<text x="{_svg_x(hi, lo, hi, width) + 4:.2f}" y="{y + 4:.2f}" '
            f'font-size="11">p={alpha:g}</text>\n'
        )

    # left axis: p; right axis: s bits
    for p_tick in (0.0, 0.25, 0.5, 0.75, 1.0):
        y = _svg_y(p_tick, height)
        out.write(
            f'<text x="24" y="{y + 4:.2f}" font-size="11">{p_tick:g}</text>\n'
        )
    for s_tick in (1, 2, 4, 7):
        y = _svg_y(2.0**-s_tick, height)
        out.write(
            f'<text x="{width - 46}" y="{y + 4:.2f}" font-size="11">s={s_tick}</text>\n'
        )
    out.write(
        f'<text x="16" y="18" font-size="12">p (left), s bits (right); '
        f'method={curve.method}; table={curve.source}</text>\n'
    )

    out.write(f'<path class="series" data-method="{curve.method}" d="{path}" fill="none" stroke="steelblue" stroke-width="1.5"/>\n')
    out.write("</svg>\n")
    return out.getvalue().encode()
