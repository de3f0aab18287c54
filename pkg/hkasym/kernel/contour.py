"""The m = 1 kernel for large v by shifting the integration line past i*pi.

Moving the full-line integral from Im s = 0 to Im s = 3 pi / 2 picks up the
singularity of (s / sinh s)^n exp(i v s - (u/4) s coth s) at s = i pi:

    p(n, 1; u, v) = c_n (I + II)

I is the integral along the shifted line, of size exp(-3 pi v / 2). For
u > 0, II is the integral around the circle |s - i pi| = |eps| through the
saddle i theta, theta = pi - eps; for u = 0 it is 2 pi i times the residue
at i pi, computed from numerical Laurent coefficients.
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

import numpy as np

from ..config import BranchConfig, QuadratureConfig
from ..errors import DomainError
from ..specfun.distance import theta_eps
from ..specfun.phase import g_function, phase_offset, s_coth_s, s_factor, s_over_sinh
from ..specfun.scaled import Number, ScaledValue
from .direct import log_full_line_constant
from .quadrature import decay_cutoff, line_trapezoid, periodic_trapezoid

logger = logging.getLogger(__name__)

CONTOUR_V_MIN = 4.0
LINE_HEIGHT = 1.5 * math.pi
RESIDUE_RADIUS = 1.0
RESIDUE_NODES = 256


@dataclass(frozen=True)
class ContourTerms:
    """The two pieces of the shifted contour, each already multiplied by c_n."""

    line: ScaledValue
    circle: ScaledValue
    total: ScaledValue
    eps: Optional[Number] = None

    @property
    def line_fraction(self) -> float:
        """|I| / |I + II|."""
        return math.exp(self.line.log_abs() - self.total.log_abs())


@lru_cache(maxsize=32)
def _residue_coefficients(n: int, radius: float, nodes: int) -> tuple[complex, ...]:
    phi = 2.0 * math.pi * np.arange(nodes) / nodes
    w = radius * np.exp(1j * phi)
    f = np.asarray(s_over_sinh(1j * math.pi + w)) ** n
    return tuple(complex(np.mean(f * w**k)) for k in range(1, n + 1))


def residue_coefficients(n: int, radius: float = RESIDUE_RADIUS, nodes: int = RESIDUE_NODES) -> np.ndarray:
    """Principal-part coefficients a_{-k}, k = 1..n, of (s / sinh s)^n at s = i pi.

    Entry k-1 holds a_{-k}. The coefficients come from the trapezoid rule on
    |s - i pi| = radius, which must stay below pi.
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if not 0 < radius < math.pi:
        raise DomainError(f"radius must lie in (0, pi), got {radius}")
    return np.array(_residue_coefficients(n, float(radius), int(nodes)))


def _residue_term(n: int, v: complex) -> ScaledValue:
    coeffs = residue_coefficients(n)
    poly = sum(coeffs[k - 1] * (1j * v) ** (k - 1) / math.factorial(k - 1) for k in range(1, n + 1))
    return ScaledValue.of(complex(2j * math.pi * poly)) * ScaledValue.from_log(-math.pi * v)


def _line_term(n: int, u: float, v: complex, cfg: QuadratureConfig, scale: float) -> ScaledValue:
    def integrand(x: np.ndarray) -> np.ndarray:
        s = x + 1j * LINE_HEIGHT
        ratio = np.asarray(s_over_sinh(s))
        return ratio**n * np.exp(1j * v * x - 0.25 * u * np.asarray(s_coth_s(s)))

    half_width = decay_cutoff(n, n - abs(v.imag), abs(cfg.abs_floor) + n * math.log(4.0 * LINE_HEIGHT), start=5.0)
    start = 512
    while start < 2.0 * half_width * (abs(v.real) + 8.0) / math.pi:
        start *= 2
    result = line_trapezoid(integrand, half_width, start, cfg, scale=scale, label="shifted-line trapezoid")
    return ScaledValue.of(complex(result.value)) * ScaledValue.from_log(-LINE_HEIGHT * v)


def _circle_term(n: int, u: float, v: complex, eps: Number, cfg: QuadratureConfig) -> ScaledValue:
    def integrand(phi: np.ndarray) -> np.ndarray:
        xi = eps * np.exp(1j * phi)
        return (
            np.exp(1j * (1 - n) * phi)
            * np.asarray(s_factor(n, xi))
            * np.exp(np.asarray(phase_offset(u, v, eps, xi)))
        )

    result = periodic_trapezoid(integrand, cfg.circle_nodes, cfg, label="saddle-circle trapezoid")
    log_phi_saddle = -(math.pi - eps) * v + 0.25 * math.pi * u / eps + g_function(u, eps)
    log_prefactor = log_phi_saddle + n * math.log(math.pi) + (1 - n) * np.log(complex(eps))
    return ScaledValue.of(complex(result.value)) * ScaledValue.from_log(complex(log_prefactor))


def contour_terms(
    n: int,
    u: float,
    v: Number,
    cfg: Optional[QuadratureConfig] = None,
    branch: Optional[BranchConfig] = None,
) -> ContourTerms:
    """Evaluate both contour pieces of p(n, 1; u, v).

    Raises:
        DomainError: if Re v < 4, |Im v| >= strip_delta, or 4v/u is too small for the saddle branch
        QuadratureStallError: if a trapezoid sum does not settle
    """
    cfg = cfg or QuadratureConfig()
    if n < 1 or u < 0:
        raise DomainError(f"contour route needs n >= 1 and u >= 0, got n={n}, u={u}")
    v = complex(v)
    if v.real < CONTOUR_V_MIN:
        raise DomainError(f"contour route needs Re v >= {CONTOUR_V_MIN:g}, got {v.real:g}")
    if abs(v.imag) >= cfg.strip_delta:
        raise DomainError(f"|Im v| must be < {cfg.strip_delta}, got {v.imag}")
    if u > 0 and 4.0 * v.real / u < cfg.contour_x_min:
        raise DomainError(
            f"4v/u = {4.0 * v.real / u:.3g} is in the stationary-phase regime (below {cfg.contour_x_min:g}); "
            "not supported"
        )

    eps: Optional[Number] = None
    if u == 0:
        circle = _residue_term(n, v)
    else:
        eps = theta_eps(u, v if v.imag else v.real, branch=branch, r0=cfg.contour_x_min).eps
        circle = _circle_term(n, u, v, eps, cfg)

    scale = min(math.exp(min(circle.log_abs() + LINE_HEIGHT * v.real, 700.0)), 1e300)
    line = _line_term(n, u, v, cfg, scale)

    log_cn = log_full_line_constant(n)
    line = line.scale_log(log_cn)
    circle = circle.scale_log(log_cn)
    total = line + circle
    if v.imag == 0:
        line, circle, total = line.real, circle.real, total.real
    terms = ContourTerms(line=line, circle=circle, total=total, eps=eps)
    logger.debug("contour (n=%d, u=%g, v=%s): |I|/|total| = %.3g", n, u, v, terms.line_fraction)
    return terms


def p_contour(
    n: int,
    u: float,
    v: Number,
    cfg: Optional[QuadratureConfig] = None,
    branch: Optional[BranchConfig] = None,
) -> ScaledValue:
    """p(n, 1; u, v) for large Re v by the shifted contour."""
    return contour_terms(n, u, v, cfg=cfg, branch=branch).total

