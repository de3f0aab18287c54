"""Large-v asymptotics of the reduced kernel and their numerical witnesses."""

from .saddle import (
    SaddleDiagnostics,
    angular_bessel_integral,
    angular_bessel_reference,
    eta_coefficients,
    g_function,
    g_prime,
    remainder_bound,
    remainder_r,
    s_factor,
    saddle_diagnostics,
    saddle_phi,
    saddle_phi_prime,
)
from .tables import (
    LogDerivativeCheck,
    RatioRow,
    approximation,
    even_reduction_check,
    exponential_ratio_check,
    log_derivative_check,
    ratio_table,
)
from .theorem import AsymptoticApprox, b_asymp, q_expansion, q_theorem

__all__ = [
    "AsymptoticApprox",
    "LogDerivativeCheck",
    "RatioRow",
    "SaddleDiagnostics",
    "angular_bessel_integral",
    "angular_bessel_reference",
    "approximation",
    "b_asymp",
    "eta_coefficients",
    "even_reduction_check",
    "exponential_ratio_check",
    "g_function",
    "g_prime",
    "log_derivative_check",
    "q_expansion",
    "q_theorem",
    "ratio_table",
    "remainder_bound",
    "remainder_r",
    "s_factor",
    "saddle_diagnostics",
    "saddle_phi",
    "saddle_phi_prime",
]
