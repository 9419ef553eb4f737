"""Command-line interface.

One subcommand per procedure: describe, test, compat-curve, interval,
svalue, power, power-curve, bonferroni, familywise, prior-data, bayes-fit,
coverage-sim, sparse-sim, filter-sim.

Conventions:
  * tables are entered as --table a,b,c,d in canonical order (exposed-case,
    exposed-noncase, unexposed-case, unexposed-noncase); --layout
    unexposed-first accepts the printed-table orientation instead (unexposed
    row first), preventing silent OR inversion;
  * interval output is labeled "compatibility interval" and decisions print
    reject / fail-to-reject at level alpha -- "significant" never appears;
  * every stochastic subcommand requires --seed, and identical argv produce
    identical output bytes;
  * exit status: 0 success, 2 usage error, 1 computation error.

COMPAT_THREADS caps internal thread fan-out (0 or unset = automatic).
"""

import argparse
import json
import math
import sys

from . import bayes, compat_curve, decisions, simulate
from .asymptotic import (
    WaldInput,
    log_or_se,
    method_comparison,
    pearson_limits,
    pearson_p,
    sample_log_or,
    wald_limits_for,
    wald_p,
)
from .compat_curve import coin_toss_bracket, s_value
from .decisions import PowerSpec
from .display import fmt
from .errors import CompatError
from .exact import exact_limits, exact_p, point_estimate
from .reports import Scenario, reports_to_csv, scenarios_from_json
from .table import Table2x2, summarize


class _Precision:
    """Report-style display defaults, overridable with --precision."""

    def __init__(self, override: int | None):
        self.p = override if override is not None else 3
        self.ratio = override if override is not None else 2
        self.s = override if override is not None else 1
        self.expected = override if override is not None else 1
        self.prop = override if override is not None else 3


def _parse_table(args) -> Table2x2:
    parts = [s.strip() for s in args.table.split(",")]
    if len(parts) != 4:
        raise CompatError(f"--table needs four comma-separated counts, got {args.table!r}")
    try:
        counts = [int(s) for s in parts]
    except ValueError as exc:
        raise CompatError(f"--table counts must be integers: {exc}") from exc
    if getattr(args, "layout", "canonical") == "unexposed-first":
        c, d, a, b = counts
        counts = [a, b, c, d]
    return Table2x2(*counts)


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _emit_json(obj) -> None:
    _emit(json.dumps(obj, sort_keys=False))


def _kv_csv(pairs: list[tuple[str, object]]) -> str:
    header = ",".join(k for k, _ in pairs)
    row = ",".join(
        "%.15g" % v if isinstance(v, float) else str(v) for _, v in pairs
    )
    return header + "\n" + row + "\n"


# --- subcommand handlers ---------------------------------------------------


def _cmd_describe(args) -> None:
    t = _parse_table(args)
    s = summarize(t)
    pr = _Precision(args.precision)
    if args.format == "json":
        _emit_json({"table": t.to_dict(), "summary": s.to_dict()})
        return
    if args.format == "csv":
        _emit(_kv_csv([
            ("a", t.a), ("b", t.b), ("c", t.c), ("d", t.d),
            ("rd", s.rd), ("rr", s.rr), ("or", s.or_),
            ("expected_a", s.expected[0]), ("expected_b", s.expected[1]),
            ("expected_c", s.expected[2]), ("expected_d", s.expected[3]),
        ]))
        return
    lines = [
        "2x2 table, canonical order (exposed-case, exposed-noncase, unexposed-case, unexposed-noncase)",
        "",
        f"{'':12s}{'cases':>8s}{'noncases':>10s}{'total':>8s}",
        f"{'exposed':12s}{t.a:>8d}{t.b:>10d}{t.exposed:>8d}",
        f"{'unexposed':12s}{t.c:>8d}{t.d:>10d}{t.unexposed:>8d}",
        f"{'total':12s}{t.cases:>8d}{t.noncases:>10d}{t.n:>8d}",
        "",
        f"proportion with outcome, exposed:   {fmt(s.p_exposed, pr.prop)}",
        f"proportion with outcome, unexposed: {fmt(s.p_unexposed, pr.prop)}",
        f"odds, exposed:   {fmt(s.odds_exposed, 4)}",
        f"odds, unexposed: {fmt(s.odds_unexposed, 4)}",
        f"risk difference RD: {fmt(s.rd, pr.p)}",
        f"risk ratio RR:      {fmt(s.rr, pr.ratio)}",
        f"odds ratio OR:      {fmt(s.or_, pr.ratio)}",
        "expected counts under independence (same order): "
        + ", ".join(fmt(e, pr.expected) for e in s.expected),
    ]
    _emit("\n".join(lines))


def _p_for(t: Table2x2, method: str, psi: float, rule: str, midp: bool) -> float:
    if method == "exact":
        return exact_p(t, psi, rule=rule, midp=midp).p
    if method == "pearson":
        return pearson_p(t, psi).p
    if method == "wald":
        return wald_p(WaldInput(b=sample_log_or(t), se=log_or_se(t), c=math.log(psi)))
    raise CompatError(f"unknown method {method!r}")


def _cmd_test(args) -> None:
    t = _parse_table(args)
    pr = _Precision(args.precision)
    psi = args.or_
    if args.method == "all":
        comp = method_comparison(t, psi=psi, alpha=args.alpha)
        if args.format == "json":
            _emit_json(comp.to_dict())
            return
        if args.format == "csv":
            _emit(_kv_csv([
                ("psi", comp.psi), ("p_exact", comp.p_exact),
                ("p_pearson", comp.p_pearson), ("p_wald", comp.p_wald),
            ]))
            return
        lines = [
            f"hypothesized OR: {fmt(psi, pr.ratio)}",
            f"exact p:   {fmt(comp.p_exact, pr.p)}  (s = {fmt(s_value(comp.p_exact), pr.s)} bits)",
            f"pearson p: {fmt(comp.p_pearson, pr.p)}",
            f"wald p:    {fmt(comp.p_wald, pr.p)}",
            f"{comp.exact_interval.alpha:g}-level compatibility interval (exact): "
            f"{fmt(comp.exact_interval.lower, pr.ratio)} to {fmt(comp.exact_interval.upper, pr.ratio)}",
        ]
        if comp.wald_interval is not None:
            lines.append(
                f"{comp.wald_interval.alpha:g}-level compatibility interval (wald):  "
                f"{fmt(comp.wald_interval.lower, pr.ratio)} to {fmt(comp.wald_interval.upper, pr.ratio)}"
            )
        else:
            lines.append("wald interval: undefined (zero cell)")
        _emit("\n".join(lines))
        return

    p = _p_for(t, args.method, psi, args.rule, args.midp)
    s_bits = s_value(p)
    n, lo_half, hi_half = coin_toss_bracket(p)
    point = compat_curve.CompatibilityPoint(psi=psi, p=p, s=s_bits)
    if args.format == "json":
        _emit_json({
            "point": point.to_dict(),
            "method": args.method,
            "rule": args.rule if args.method == "exact" else None,
            "coin_toss": n,
            "coin_toss_bracket": [lo_half, hi_half],
        })
        return
    if args.format == "csv":
        _emit(_kv_csv([("psi", psi), ("p", p), ("s", s_bits), ("coin_toss", n)]))
        return
    _emit("\n".join([
        f"hypothesized OR: {fmt(psi, pr.ratio)}   method: {args.method}",
        f"p = {fmt(p, pr.p)}",
        f"s = {fmt(s_bits, pr.s)} bits",
        f"coin-toss equivalent: n = {n} "
        f"(1/2^{n} = {fmt(lo_half, pr.p)}, 1/2^{n - 1} = {fmt(hi_half, pr.p)})",
    ]))


def _cmd_interval(args) -> None:
    t = _parse_table(args)
    pr = _Precision(args.precision)
    if args.method == "exact":
        iv = exact_limits(t, args.alpha, rule=args.rule, construction=args.construction)
    elif args.method == "wald":
        iv = wald_limits_for(t, args.alpha)
    elif args.method == "pearson":
        iv = pearson_limits(t, args.alpha)
    else:
        raise CompatError(f"unknown method {args.method!r}")
    if args.format == "json":
        _emit_json(iv.to_dict())
        return
    if args.format == "csv":
        _emit(_kv_csv([
            ("lower", iv.lower), ("upper", iv.upper),
            ("alpha", iv.alpha), ("method", iv.method),
        ]))
        return
    est = point_estimate(t)
    lines = [
        f"{iv.alpha:g}-level compatibility interval ({iv.method}, OR scale): "
        f"{fmt(iv.lower, pr.ratio)} to {fmt(iv.upper, pr.ratio)}",
        f"point estimate (max-p): {fmt(est.psi, pr.ratio)}"
        + ("" if est.boundary else f"   conditional MLE: {fmt(est.cmle, pr.ratio)}"),
    ]
    _emit("\n".join(lines))


def _cmd_svalue(args) -> None:
    pr = _Precision(args.precision)
    s_bits = s_value(args.p)
    n, lo_half, hi_half = coin_toss_bracket(args.p)
    if args.format == "json":
        _emit_json({
            "p": args.p,
            "s": s_bits,
            "coin_toss": n,
            "coin_toss_bracket": [lo_half, hi_half],
        })
        return
    if args.format == "csv":
        _emit(_kv_csv([("p", args.p), ("s", s_bits), ("coin_toss", n)]))
        return
    _emit("\n".join([
        f"p = {fmt(args.p, pr.p)}",
        f"s = {fmt(s_bits, pr.s)} bits",
        f"coin-toss equivalent: n = {n} "
        f"(1/2^{n} = {fmt(lo_half, pr.p)}, 1/2^{n - 1} = {fmt(hi_half, pr.p)})",
    ]))


def _cmd_compat_curve(args) -> None:
    t = _parse_table(args)
    grid = None
    if args.psi_min is not None or args.psi_max is not None:
        if args.psi_min is None or args.psi_max is None:
            raise CompatError("--psi-min and --psi-max must be given together")
        grid = (args.psi_min, args.psi_max, args.points_per_decade)
    marks = tuple(float(x) for x in args.alpha_marks.split(",")) if args.alpha_marks else (0.05,)
    curve = compat_curve.compatibility_curve(
        t, grid=grid, method=args.method, alpha_marks=marks, rule=args.rule, midp=args.midp
    )
    if args.format in ("csv", "json", "svg"):
        data = compat_curve.render_curve(curve, args.format, width=args.width, height=args.height)
        if args.out:
            with open(args.out, "wb") as fh:
                fh.write(data)
            _emit(f"wrote {args.format} curve ({len(curve.points)} points) to {args.out}")
        else:
            sys.stdout.write(data.decode())
        return
    pr = _Precision(args.precision)
    lower, upper = curve.crossings(marks[0])
    _emit("\n".join([
        f"compatibility curve: method={curve.method}, {len(curve.points)} points, table={curve.source}",
        f"max p = {fmt(curve.p_max, pr.p)} at OR = {fmt(curve.psi_max, pr.ratio)}",
        f"p = {marks[0]:g} crossings (interpolated): "
        f"{fmt(lower, pr.ratio)} and {fmt(upper, pr.ratio)}",
        "use --format csv|json|svg for the full curve",
    ]))


def _cmd_power(args) -> None:
    spec = PowerSpec(
        n_exposed=args.n_exposed,
        n_unexposed=args.n_unexposed,
        baseline_risk=args.baseline_risk,
        or_pop=args.or_,
        alpha=args.alpha,
        test=args.test,
        n_sims=args.n_sims,
        seed=args.seed,
    )
    report = decisions.power_mc(spec)
    _emit_report(args, report)


def _cmd_power_curve(args) -> None:
    spec = PowerSpec(
        n_exposed=args.n_exposed,
        n_unexposed=args.n_unexposed,
        baseline_risk=args.baseline_risk,
        or_pop=1.0,
        alpha=args.alpha,
        test=args.test,
        n_sims=args.n_sims,
        seed=args.seed,
    )
    or_grid = [float(x) for x in args.or_grid.split(",")]
    reports = decisions.power_curve(spec, or_grid)
    if args.format == "json":
        for r in reports:
            _emit(r.to_json_line())
        return
    if args.format == "csv":
        _emit(reports_to_csv(reports))
        return
    pr = _Precision(args.precision)
    lines = [f"power curve ({args.test} test, alpha={args.alpha:g}):",
             f"{'OR_pop':>8s} {'power':>8s} {'beta':>8s} {'mc_error':>9s}"]
    for r in reports:
        lines.append(
            f"{fmt(r.scenario.or_pop, pr.ratio):>8s} {fmt(r.estimate, pr.p):>8s} "
            f"{fmt(r.extras['beta'], pr.p):>8s} {fmt(r.mc_error, 4):>9s}"
        )
    _emit("\n".join(lines))


def _cmd_bonferroni(args) -> None:
    adjusted = decisions.bonferroni(args.alpha, args.k)
    if args.format == "json":
        _emit_json({"alpha": args.alpha, "k": args.k, "adjusted_alpha": adjusted})
        return
    if args.format == "csv":
        _emit(_kv_csv([("alpha", args.alpha), ("k", args.k), ("adjusted_alpha", adjusted)]))
        return
    _emit(f"divided cutoff for {args.k} tests: alpha/k = {adjusted:g}")


def _cmd_familywise(args) -> None:
    if args.dependence == "simulated" and args.seed is None:
        raise CompatError("--dependence simulated requires --seed")
    report = decisions.familywise_rate(
        args.alpha, args.k, args.dependence,
        rho=args.rho, n_sims=args.n_sims, seed=args.seed,
    )
    _emit_report(args, report)


def _cmd_prior_data(args) -> None:
    prior = bayes.IntervalPrior(lower=args.lower, upper=args.upper, level=args.level, scale=args.scale)
    pd = bayes.prior_to_data(prior)
    if args.format == "json":
        _emit_json(pd.to_dict())
        return
    if args.format == "csv":
        _emit(_kv_csv([
            ("cases_per_arm", pd.cases_per_arm),
            ("total_cases", pd.total_cases),
            ("trial_cases_per_arm", pd.trial_cases_per_arm),
            ("trial_total_cases", pd.trial_total_cases),
            ("implied_se", pd.implied_se),
            ("center_log_ratio", pd.center_log_ratio),
        ]))
        return
    _emit("\n".join([
        f"prior: {args.level:g} probability that the {pd.scale} is in ({args.lower:g}, {args.upper:g})",
        f"pseudo-count: {pd.cases_per_arm:.2f} cases per arm ({pd.total_cases:.2f} total)",
        f"equivalent balanced trial: {pd.trial_cases_per_arm} cases per arm, "
        f"{pd.trial_total_cases} cases total",
        f"implied SE of the log ratio: {pd.implied_se:.4f}",
        f"prior centered at ratio {math.exp(pd.center_log_ratio):.4f} "
        "(midpoint of the log bounds; asymmetric priors are re-centered there)",
    ]))


def _cmd_bayes_fit(args) -> None:
    t = _parse_table(args)
    prior = None
    if not args.no_prior:
        if args.lower is None or args.upper is None:
            raise CompatError("bayes-fit needs --lower and --upper (or --no-prior)")
        prior = bayes.prior_to_data(
            bayes.IntervalPrior(lower=args.lower, upper=args.upper, level=args.level, scale=args.scale)
        )
    fit = bayes.augment_and_fit(t, prior)
    if args.format == "json":
        _emit_json(fit.to_dict())
        return
    if args.format == "csv":
        _emit(_kv_csv([
            ("frequentist_log_or", fit.frequentist_log_or),
            ("frequentist_se", fit.frequentist_se),
            ("log_or_posterior", fit.log_or_posterior),
            ("se_posterior", fit.se_posterior),
            ("iterations", fit.iterations),
        ]))
        return
    pr = _Precision(args.precision)
    lines = [
        "frequentist (no prior): "
        f"log OR = {fmt(fit.frequentist_log_or, 4)}, SE = {fmt(fit.frequentist_se, 4)}, "
        f"OR = {fmt(math.exp(fit.frequentist_log_or), pr.ratio)}"
        + ("  [boundary: separated data]" if fit.separated else ""),
    ]
    if prior is not None:
        lines.append(
            "posterior (data-augmented): "
            f"log OR = {fmt(fit.log_or_posterior, 4)}, SD = {fmt(fit.se_posterior, 4)}, "
            f"OR = {fmt(math.exp(fit.log_or_posterior), pr.ratio)}"
        )
        lines.append(
            f"prior used: {prior.cases_per_arm:.2f} pseudo-cases per arm, "
            f"centered at ratio {math.exp(prior.center_log_ratio):.4f}"
        )
    lines.append(f"converged in {fit.iterations} iterations" if fit.converged else "did not converge")
    _emit("\n".join(lines))


def _scenarios_for(args) -> list[Scenario]:
    if args.scenarios:
        with open(args.scenarios) as fh:
            return scenarios_from_json(fh.read())
    if None in (args.n_exposed, args.n_unexposed, args.baseline_risk, args.or_):
        raise CompatError(
            "give --n-exposed, --n-unexposed, --baseline-risk and --or, or --scenarios FILE"
        )
    return [Scenario(
        n_exposed=args.n_exposed,
        n_unexposed=args.n_unexposed,
        baseline_risk=args.baseline_risk,
        or_pop=args.or_,
        label=args.label,
    )]


def _emit_report(args, report) -> None:
    _emit_reports(args, [report])


def _emit_reports(args, reports) -> None:
    if args.format == "json":
        for r in reports:
            _emit(r.to_json_line())
        return
    if args.format == "csv":
        _emit(reports_to_csv(reports))
        return
    pr = _Precision(args.precision)
    lines = []
    for r in reports:
        head = f"[{r.scenario.label}] " if (r.scenario and r.scenario.label) else ""
        lines.append(
            f"{head}{r.method}: estimate = {fmt(r.estimate, pr.p)} "
            f"(mc error {fmt(r.mc_error, 4)}, n_sims = {r.n_sims}"
            + (f", seed = {r.seed}" if r.seed is not None else "")
            + ")"
        )
        for key in sorted(r.extras):
            lines.append(f"    {key} = {fmt(float(r.extras[key]), 4)}")
    _emit("\n".join(lines))


def _cmd_coverage_sim(args) -> None:
    reports = [
        simulate.coverage_sim(sc, args.method, args.alpha, args.n_sims, args.seed)
        for sc in _scenarios_for(args)
    ]
    _emit_reports(args, reports)


def _cmd_sparse_sim(args) -> None:
    reports = [
        simulate.sparse_bias_sim(sc, args.n_sims, args.seed)
        for sc in _scenarios_for(args)
    ]
    _emit_reports(args, reports)


def _cmd_filter_sim(args) -> None:
    reports = [
        simulate.significance_filter_sim(sc, args.alpha, args.n_sims, args.seed, test=args.test)
        for sc in _scenarios_for(args)
    ]
    _emit_reports(args, reports)


# --- parser ----------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser, formats=("text", "json", "csv")) -> None:
    p.add_argument("--format", choices=formats, default="text", help="output format")
    p.add_argument("--precision", type=int, default=None,
                   help="decimal places for text output (default: p 3, OR 2, s 1)")


def _add_table(p: argparse.ArgumentParser) -> None:
    p.add_argument("--table", required=True, metavar="a,b,c,d",
                   help="counts in canonical order: exposed-case, exposed-noncase, "
                        "unexposed-case, unexposed-noncase")
    p.add_argument("--layout", choices=("canonical", "unexposed-first"), default="canonical",
                   help="unexposed-first reads the counts with the unexposed row first "
                        "(printed-table orientation)")


def _add_scenario(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n-exposed", type=int, default=None)
    p.add_argument("--n-unexposed", type=int, default=None)
    p.add_argument("--baseline-risk", type=float, default=None,
                   help="outcome risk in the unexposed arm")
    p.add_argument("--or", dest="or_", type=float, default=None,
                   help="true odds ratio generating the data")
    p.add_argument("--label", default="", help="scenario label for reports")
    p.add_argument("--scenarios", default=None, metavar="FILE",
                   help="JSON array of scenario objects for a batch run")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="compat2x2",
        description="Exact and approximate compatibility inference for 2x2 tables.",
        epilog="COMPAT_THREADS caps internal parallelism (0 = automatic).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("describe", help="table description and association measures")
    _add_table(p)
    _add_common(p)
    p.set_defaults(func=_cmd_describe)

    p = sub.add_parser("test", help="P-value, S-value and coin-toss equivalent for one hypothesized OR")
    _add_table(p)
    p.add_argument("--or", dest="or_", type=float, default=1.0, help="hypothesized odds ratio")
    p.add_argument("--method", choices=("exact", "pearson", "wald", "all"), default="exact")
    p.add_argument("--rule", choices=("central", "minlik"), default="central",
                   help="two-sided rule for the exact method")
    p.add_argument("--midp", action="store_true", help="mid-P variant (never the default)")
    p.add_argument("--alpha", type=float, default=0.05, help="level for --method all intervals")
    _add_common(p)
    p.set_defaults(func=_cmd_test)

    p = sub.add_parser("interval", help="compatibility interval by test inversion")
    _add_table(p)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--method", choices=("exact", "wald", "pearson"), default="exact")
    p.add_argument("--rule", choices=("central", "minlik"), default="central")
    p.add_argument("--construction", choices=("invert-two-sided", "one-sided-pair"),
                   default="invert-two-sided",
                   help="identical under the central rule; differ under minlik")
    _add_common(p)
    p.set_defaults(func=_cmd_interval)

    p = sub.add_parser("svalue", help="surprisal of a P-value in bits")
    p.add_argument("--p", type=float, required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_svalue)

    p = sub.add_parser("compat-curve", help="P-value function over a grid of odds ratios")
    _add_table(p)
    p.add_argument("--method", choices=("exact", "wald", "pearson"), default="exact")
    p.add_argument("--rule", choices=("central", "minlik"), default="central")
    p.add_argument("--midp", action="store_true")
    p.add_argument("--psi-min", type=float, default=None)
    p.add_argument("--psi-max", type=float, default=None)
    p.add_argument("--points-per-decade", type=int, default=200)
    p.add_argument("--alpha-marks", default="0.05", help="comma-separated levels to annotate")
    p.add_argument("--out", default=None, metavar="FILE", help="write rendered curve to a file")
    p.add_argument("--width", type=int, default=720, help="svg width")
    p.add_argument("--height", type=int, default=480, help="svg height")
    _add_common(p, formats=("text", "json", "csv", "svg"))
    p.set_defaults(func=_cmd_compat_curve)

    p = sub.add_parser("power", help="Monte Carlo rejection rate under an alternative")
    p.add_argument("--n-exposed", type=int, required=True)
    p.add_argument("--n-unexposed", type=int, required=True)
    p.add_argument("--baseline-risk", type=float, required=True)
    p.add_argument("--or", dest="or_", type=float, required=True, help="true odds ratio")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--test", choices=decisions.TESTS, default="exact")
    p.add_argument("--n-sims", type=int, default=10_000)
    p.add_argument("--seed", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_power)

    p = sub.add_parser("power-curve", help="power at each of several true odds ratios")
    p.add_argument("--n-exposed", type=int, required=True)
    p.add_argument("--n-unexposed", type=int, required=True)
    p.add_argument("--baseline-risk", type=float, required=True)
    p.add_argument("--or-grid", required=True, help="comma-separated true odds ratios")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--test", choices=decisions.TESTS, default="exact")
    p.add_argument("--n-sims", type=int, default=10_000)
    p.add_argument("--seed", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_power_curve)

    p = sub.add_parser("bonferroni", help="divided cutoff alpha/k")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--k", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_bonferroni)

    p = sub.add_parser("familywise", help="chance of any p <= alpha among k tests of correct hypotheses")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--dependence", choices=("independent", "perfectly-correlated", "simulated"),
                   default="independent")
    p.add_argument("--rho", type=float, default=None, help="equicorrelation for simulated mode")
    p.add_argument("--n-sims", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=None, help="required for simulated mode")
    _add_common(p)
    p.set_defaults(func=_cmd_familywise)

    p = sub.add_parser("prior-data", help="translate an interval prior into equivalent prior data")
    p.add_argument("--lower", type=float, required=True)
    p.add_argument("--upper", type=float, required=True)
    p.add_argument("--level", type=float, default=0.95)
    p.add_argument("--scale", choices=("odds-ratio", "rate-ratio"), default="odds-ratio")
    _add_common(p)
    p.set_defaults(func=_cmd_prior_data)

    p = sub.add_parser("bayes-fit", help="data-augmented penalized-likelihood fit (frequentist results first)")
    _add_table(p)
    p.add_argument("--lower", type=float, default=None, help="prior interval lower ratio bound")
    p.add_argument("--upper", type=float, default=None, help="prior interval upper ratio bound")
    p.add_argument("--level", type=float, default=0.95)
    p.add_argument("--scale", choices=("odds-ratio", "rate-ratio"), default="odds-ratio")
    p.add_argument("--no-prior", action="store_true", help="fit without augmentation")
    _add_common(p)
    p.set_defaults(func=_cmd_bayes_fit)

    p = sub.add_parser("coverage-sim", help="interval coverage rate under a known-OR scenario")
    _add_scenario(p)
    p.add_argument("--method", choices=("exact", "wald"), default="exact")
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--n-sims", type=int, default=10_000)
    p.add_argument("--seed", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_coverage_sim)

    p = sub.add_parser("sparse-sim", help="sparse-data bias of the sample log odds ratio")
    _add_scenario(p)
    p.add_argument("--n-sims", type=int, default=10_000)
    p.add_argument("--seed", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_sparse_sim)

    p = sub.add_parser("filter-sim", help="estimate inflation from filtering on p <= alpha")
    _add_scenario(p)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--test", choices=decisions.TESTS, default="exact")
    p.add_argument("--n-sims", type=int, default=10_000)
    p.add_argument("--seed", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_filter_sim)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except CompatError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
