"""Special functions and geometric primitives."""

from .bessel import I_SWITCHOVER, bessel_i_scaled, bessel_j, gamma_fn, reduced_bessel_j
from .distance import (
    ThetaEps,
    cc_distance_squared,
    mu,
    mu_from_eps,
    mu_inverse,
    mu_inverse_eps,
    mu_prime,
    mu_prime_from_eps,
    theta_eps,
)
from .phase import (
    g_function,
    g_prime,
    phase_offset,
    remainder_r,
    s_coth_s,
    s_factor,
    s_over_sinh,
    saddle_phi,
    saddle_phi_prime,
)
from .scaled import ScaledValue

__all__ = [
    "I_SWITCHOVER",
    "ScaledValue",
    "ThetaEps",
    "bessel_i_scaled",
    "bessel_j",
    "cc_distance_squared",
    "g_function",
    "g_prime",
    "gamma_fn",
    "mu",
    "mu_from_eps",
    "mu_inverse",
    "mu_inverse_eps",
    "mu_prime",
    "mu_prime_from_eps",
    "phase_offset",
    "reduced_bessel_j",
    "remainder_r",
    "s_coth_s",
    "s_factor",
    "s_over_sinh",
    "saddle_phi",
    "saddle_phi_prime",
    "theta_eps",
]
