"""Good test functions: contour criterion, catalog and expansion checks."""

from .criterion import (
    BandBound,
    CriterionSample,
    GtfReport,
    SufficientCheck,
    cauchy_derivative,
    default_rule_exponent,
    default_rule_name,
    gtf_ratio,
    gtf_scan,
    log_band_bound,
    necessary_check,
    sufficient_check,
)
from .expansion import (
    ExpansionSpec,
    ExpansionTable,
    RemainderRow,
    derivative_growth_bound,
    diff_expansion_check,
    oscillation_amplitude,
)
from .functions import (
    CATALOG,
    AnalyticFunctionSpec,
    LogPlusSin,
    PlainLog,
    PowerExp,
    PowerLog,
    UserFunction,
    get_function,
)
from .geometry import RULES, ContourCircle, FixedRule, HalfSineRule, PowerRule, RadiusRule, Sector, get_radius_rule

__all__ = [
    "CATALOG",
    "RULES",
    "AnalyticFunctionSpec",
    "BandBound",
    "ContourCircle",
    "CriterionSample",
    "ExpansionSpec",
    "ExpansionTable",
    "FixedRule",
    "GtfReport",
    "HalfSineRule",
    "LogPlusSin",
    "PlainLog",
    "PowerExp",
    "PowerLog",
    "PowerRule",
    "RadiusRule",
    "RemainderRow",
    "Sector",
    "SufficientCheck",
    "UserFunction",
    "cauchy_derivative",
    "default_rule_exponent",
    "default_rule_name",
    "derivative_growth_bound",
    "diff_expansion_check",
    "get_function",
    "get_radius_rule",
    "gtf_ratio",
    "gtf_scan",
    "log_band_bound",
    "necessary_check",
    "oscillation_amplitude",
    "sufficient_check",
]
