"""Direct quadrature of the reduced kernel p(n, m; u, v) for moderate v.

Two representations are available:

half_line
    p = 2 / (4 pi)^(n + m/2) * int_0^inf s^(m-1) exp(-(u/4) s coth s)
        (s / sinh s)^n (sv/2)^(-(m-2)/2) J_((m-2)/2)(sv) ds, valid for every m.

full_line (m = 1)
    p = c_n int_R (s / sinh s)^n exp(i v s - (u/4) s coth s) ds with
    c_n = 1 / ((4 pi)^(n + 1/2) sqrt(pi)). The integrand is analytic in the
    strip |Im s| < pi, so the line is moved to Im s = (pi/2) sign(Re v). The
    factor exp(-pi v / 2) is then exact and only exp(-pi v / 2) of the value
    is left to cancellation, instead of exp(-pi v) on the real line.

Both forms lose relative accuracy like exp(c v) and are refused above
``QuadratureConfig.direct_v_max``.
"""

import logging
import math
from typing import Optional

import numpy as np

from ..config import QuadratureConfig
from ..errors import DomainError
from ..specfun.bessel import reduced_bessel_j
from ..specfun.phase import s_coth_s, s_over_sinh
from ..specfun.scaled import ScaledValue
from .params import KernelParams
from .quadrature import decay_cutoff, panel_integrate

logger = logging.getLogger(__name__)

FORMS = ("auto", "half_line", "full_line")
LINE_SHIFT = 0.5 * math.pi


def log_normalization(n: int, m: int) -> float:
    """log of 2 / (4 pi)^(n + m/2), the half-line prefactor."""
    return math.log(2.0) - (n + 0.5 * m) * math.log(4.0 * math.pi)


def log_full_line_constant(n: int) -> float:
    """log c_n with c_n = 1 / ((4 pi)^(n + 1/2) sqrt(pi))."""
    return -(n + 0.5) * math.log(4.0 * math.pi) - 0.5 * math.log(math.pi)


def _panel_width(v: float) -> float:
    return min(1.0, math.pi / abs(v)) if v != 0 else 1.0


def _half_line(params: KernelParams, cfg: QuadratureConfig) -> ScaledValue:
    n, m, u = params.n, params.m, params.u
    v = abs(float(np.real(params.v)))
    nu = 0.5 * (m - 2)

    def integrand(s: np.ndarray) -> np.ndarray:
        log_ratio = np.log(2.0 * s) - s - np.log(-np.expm1(-2.0 * s))
        coth_term = s / np.tanh(s)
        return s ** (m - 1) * np.exp(n * log_ratio - 0.25 * u * coth_term) * reduced_bessel_j(nu, s * v)

    drop = abs(cfg.abs_floor) + math.pi * v + 0.25 * u + n * math.log(2.0)
    s_max = decay_cutoff(n + m - 1, n + 0.25 * u, drop)
    result = panel_integrate(integrand, 0.0, s_max, _panel_width(v), cfg, label="half-line quadrature")
    logger.debug("half-line (n=%d, m=%d, u=%g, v=%g): S_max=%.1f, %d panels", n, m, u, v, s_max, result.nodes)
    return ScaledValue.of(result.value, log_normalization(n, m))


def _full_line(params: KernelParams, cfg: QuadratureConfig) -> ScaledValue:
    n, u, v = params.n, params.u, complex(params.v)
    shift = LINE_SHIFT * float(np.sign(v.real))

    def integrand(x: np.ndarray) -> np.ndarray:
        s = x + 1j * shift
        ratio = np.asarray(s_over_sinh(s))
        return ratio**n * np.exp(1j * v * s + shift * v - 0.25 * u * np.asarray(s_coth_s(s)))

    rate = n + 0.25 * u - abs(v.imag)
    drop = abs(cfg.abs_floor) + (math.pi - abs(shift)) * abs(v.real) + n * math.log(4.0)
    half_width = decay_cutoff(n, rate, drop)
    result = panel_integrate(
        integrand, -half_width, half_width, _panel_width(v.real), cfg, label="full-line quadrature"
    )
    value = result.value if params.is_complex else float(np.real(result.value))
    logger.debug("full-line (n=%d, u=%g, v=%s): X=%.1f, %d panels", n, u, v, half_width, result.nodes)
    return ScaledValue.of(value, log_full_line_constant(n)) * ScaledValue.from_log(-shift * v)


def p_direct(params: KernelParams, cfg: Optional[QuadratureConfig] = None, form: str = "auto") -> ScaledValue:
    """p(n, m; u, v) by direct quadrature.

    ``form="auto"`` uses the shifted full line for m = 1 and the half line
    otherwise. p is even in v, so a negative real v is accepted.

    Raises:
        DomainError: for |v| above direct_v_max, complex v off the strip, or full_line with m > 1
        QuadratureStallError: if panel refinement stalls
    """
    cfg = cfg or QuadratureConfig()
    if form not in FORMS:
        raise DomainError(f"unknown form {form!r}; expected one of {', '.join(FORMS)}")
    params.check_strip(cfg)
    if abs(complex(params.v).real) > cfg.direct_v_max:
        raise DomainError(
            f"direct quadrature is limited to |v| <= {cfg.direct_v_max:g} (got {params.v}); use the contour route"
        )
    if form == "auto":
        form = "full_line" if params.m == 1 else "half_line"
    if form == "full_line":
        if params.m != 1:
            raise DomainError("full_line form requires m = 1")
        return _full_line(params, cfg)
    if params.is_complex:
        raise DomainError("half_line form requires real v")
    return _half_line(params, cfg)
