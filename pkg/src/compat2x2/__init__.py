"""Exact and approximate compatibility inference for 2x2 tables.

The library answers, for a four-count exposure/outcome table: how compatible
are the data with each hypothesized odds ratio (exact noncentral
hypergeometric and large-sample approximations), what do those P-values look
like as surprisals, which parameter values survive test inversion at a given
level, how do alpha-level decision rules behave (power, multiplicity), what
does an interval prior amount to as data, and do the frequency claims behind
all of this hold up in simulation.
"""

from .asymptotic import (
    Chi2Result,
    MethodComparison,
    WaldInput,
    expected_counts_at,
    log_or_se,
    method_comparison,
    pearson_chi2,
    pearson_limits,
    pearson_p,
    sample_log_or,
    wald_limits,
    wald_limits_for,
    wald_p,
)
from .bayes import (
    AugmentedFit,
    IntervalPrior,
    PriorData,
    augment_and_fit,
    prior_to_data,
)
from .compat_curve import (
    CompatibilityCurve,
    CompatibilityPoint,
    coin_toss_bracket,
    coin_toss_equivalent,
    compatibility_curve,
    render_curve,
    s_value,
)
from .decisions import (
    PowerSpec,
    TestDecision,
    alpha_test,
    bonferroni,
    decision_p_value,
    familywise_rate,
    interval_test,
    power_curve,
    power_mc,
)
from .errors import CompatError
from .estimates import IntervalEstimate, PointEstimate
from .exact import (
    ExactPValue,
    NchgDistribution,
    conditional_mle,
    exact_limits,
    exact_p,
    exact_tail,
    nchg_distribution,
    nchg_pmf,
    point_estimate,
)
from .reports import Scenario, SimReport, scenarios_from_json
from .simulate import coverage_sim, significance_filter_sim, sparse_bias_sim
from .table import AssociationSummary, Table2x2, flip_exposure, new_table, summarize

__version__ = "0.1.0"

__all__ = [
    "AssociationSummary",
    "AugmentedFit",
    "Chi2Result",
    "CompatError",
    "CompatibilityCurve",
    "CompatibilityPoint",
    "ExactPValue",
    "IntervalEstimate",
    "IntervalPrior",
    "MethodComparison",
    "NchgDistribution",
    "PointEstimate",
    "PowerSpec",
    "PriorData",
    "Scenario",
    "SimReport",
    "Table2x2",
    "TestDecision",
    "WaldInput",
    "alpha_test",
    "augment_and_fit",
    "bonferroni",
    "coin_toss_bracket",
    "coin_toss_equivalent",
    "compatibility_curve",
    "conditional_mle",
    "coverage_sim",
    "decision_p_value",
    "exact_limits",
    "exact_p",
    "exact_tail",
    "expected_counts_at",
    "familywise_rate",
    "flip_exposure",
    "interval_test",
    "log_or_se",
    "method_comparison",
    "nchg_distribution",
    "nchg_pmf",
    "new_table",
    "pearson_chi2",
    "pearson_limits",
    "pearson_p",
    "point_estimate",
    "power_curve",
    "power_mc",
    "prior_to_data",
    "render_curve",
    "s_value",
    "sample_log_or",
    "scenarios_from_json",
    "significance_filter_sim",
    "sparse_bias_sim",
    "summarize",
    "wald_limits",
    "wald_limits_for",
    "wald_p",
]
