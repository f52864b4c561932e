"""Exact order-of-magnitude calculus.

Rational functions of an infinitesimal as the exact ground truth, a
sign/order algebra on top of them, ranking-function probability, an
order-of-magnitude decision theory, and sampling harnesses that check the
algebra's soundness and completeness against the exact level.
"""

from oomcalc._backend import BACKEND
from oomcalc.extended_reals import (
    EPS,
    ExtendedReal,
    Polynomial,
    Relation,
    parse_extended_real,
)
from oomcalc.formulas import (
    UNDEFINED,
    FiniteSet,
    check_gt_claim,
    evaluate,
    parse_formula,
    render,
    search_counterexample,
    undefined_witness,
    verify_gt,
)
from oomcalc.infinity import INF
from oomcalc.kappa import (
    ExtendedProbability,
    KappaFunction,
    OomProbability,
    OutcomeSpace,
    possibility_embedding,
    sample_interpretation,
)
from oomcalc.oom import (
    OomValue,
    Sign,
    StarSampler,
    StarSamplerConfig,
    classify,
    compare,
    parse_oom,
)
from oomcalc.decision import (
    AMBIGUOUS,
    DecisionProblem,
    OomUtility,
    Option,
    PearlMu,
    Preference,
    compare_options,
    expect,
    expect_closed_form,
    pearl_cross_check,
    pearl_expected,
    pearl_levels,
    verify_theorem3,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "INF",
    "EPS",
    "UNDEFINED",
    "AMBIGUOUS",
    "ExtendedReal",
    "Polynomial",
    "Relation",
    "parse_extended_real",
    "OomValue",
    "Sign",
    "StarSampler",
    "StarSamplerConfig",
    "classify",
    "compare",
    "parse_oom",
    "FiniteSet",
    "parse_formula",
    "render",
    "evaluate",
    "verify_gt",
    "search_counterexample",
    "check_gt_claim",
    "undefined_witness",
    "OutcomeSpace",
    "KappaFunction",
    "OomProbability",
    "ExtendedProbability",
    "sample_interpretation",
    "possibility_embedding",
    "OomUtility",
    "PearlMu",
    "Option",
    "DecisionProblem",
    "Preference",
    "expect",
    "expect_closed_form",
    "compare_options",
    "pearl_levels",
    "pearl_expected",
    "pearl_cross_check",
    "verify_theorem3",
    "__version__",
]
