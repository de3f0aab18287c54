"""The contour-integral criterion for good test functions and its companions.

g is a good test function on a sector when, for some radius rule R(z) and
constant C, every circle C_z of radius R(z) inside the sector satisfies

    int_{C_z} |g(xi)| / |xi - z|^2 |d xi| <= C |g'(z)|.

On a circle |xi - z| is the radius, so the left side is (2 pi / R) times the
mean of |g| over the circle; it is computed as a log-sum-exp so that
functions like exp(z^gamma) do not overflow.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.special import logsumexp

from ..config import GtfConfig
from ..errors import BandViolationError, NonConvergenceError, ZeroDerivativeError
from .functions import AnalyticFunctionSpec
from .geometry import ContourCircle, RadiusRule, Sector

logger = logging.getLogger(__name__)

BAND_SLACK = 1e-12


def cauchy_derivative(f: AnalyticFunctionSpec, circle: ContourCircle, cfg: Optional[GtfConfig] = None) -> complex:
    """f'(center) = (1 / 2 pi i) contour integral of f(xi) / (xi - center)^2.

    Trapezoid rule on the circle, doubling the nodes until two successive
    values agree to ``node_tol``.

    Raises:
        NonConvergenceError: if ``max_nodes`` is reached first
    """
    cfg = cfg or GtfConfig()

    def rule(count: int) -> tuple[complex, float]:
        phi = circle.angles(count)
        values = np.asarray(f.value(circle.points(count)))
        terms = values * np.exp(-1j * phi)
        return complex(np.mean(terms)) / circle.radius, float(np.mean(np.abs(terms))) / circle.radius

    count = circle.nodes
    previous, _ = rule(count)
    while count < cfg.max_nodes:
        count *= 2
        current, scale = rule(count)
        if abs(current - previous) <= cfg.node_tol * abs(current) + 64.0 * np.finfo(float).eps * scale:
            return current
        previous = current
    raise NonConvergenceError(f"cauchy_derivative did not settle with {count} nodes")


def _log_abs_derivative(g: AnalyticFunctionSpec, z: complex, radius: float, cfg: GtfConfig) -> float:
    if g.has_derivative:
        value = float(g.log_abs_derivative(z))
    else:
        deriv = cauchy_derivative(g, ContourCircle(z, radius, cfg.nodes), cfg)
        value = math.log(abs(deriv)) if deriv != 0 else -math.inf
    if not math.isfinite(value):
        raise ZeroDerivativeError(f"g'(z) vanishes at z = {z}")
    return value


def _circle_log_abs(g: AnalyticFunctionSpec, circle: ContourCircle, cfg: GtfConfig) -> np.ndarray:
    """log|g| at the node set on which log mean |g| has converged."""
    count = circle.nodes
    values = np.asarray(g.log_abs_value(circle.points(count)))
    previous = logsumexp(values) - math.log(count)
    while count < cfg.max_nodes:
        count *= 2
        values = np.asarray(g.log_abs_value(circle.points(count)))
        current = logsumexp(values) - math.log(count)
        if abs(current - previous) <= cfg.node_tol:
            return values
        previous = current
    raise NonConvergenceError(f"mean |g| on the circle around {circle.center} did not settle with {count} nodes")


@dataclass(frozen=True)
class SufficientCheck:
    """max |g| / R over the circle against |g'(z)|; c_hat <= 2 pi margin."""

    lhs_sup: float
    rhs: float
    margin: float


@dataclass(frozen=True)
class CriterionSample:
    z: complex
    radius: float
    c_hat: float
    margin: float


def _evaluate(
    g: AnalyticFunctionSpec, z: complex, radius: float, sector: Optional[Sector], cfg: GtfConfig
) -> CriterionSample:
    circle = ContourCircle(complex(z), radius, cfg.nodes)
    if sector is not None:
        circle.check_inside(sector)
    log_deriv = _log_abs_derivative(g, z, radius, cfg)
    log_values = _circle_log_abs(g, circle, cfg)
    log_mean = logsumexp(log_values) - math.log(log_values.size)
    log_max = float(np.max(log_values))
    c_hat = math.exp(math.log(2.0 * math.pi / radius) + log_mean - log_deriv)
    margin = math.exp(log_max - math.log(radius) - log_deriv)
    return CriterionSample(z=complex(z), radius=radius, c_hat=c_hat, margin=margin)


def gtf_ratio(
    g: AnalyticFunctionSpec,
    z: complex,
    radius: float,
    sector: Optional[Sector] = None,
    cfg: Optional[GtfConfig] = None,
) -> float:
    """c_hat(z) = int_{C_z} |g(xi)| / |xi - z|^2 |d xi| / |g'(z)|, the best constant at z.

    Raises:
        GeometryError: if the circle is invalid or leaves ``sector``
        ZeroDerivativeError: if g'(z) = 0
    """
    return _evaluate(g, z, radius, sector, cfg or GtfConfig()).c_hat


def sufficient_check(
    g: AnalyticFunctionSpec,
    z: complex,
    radius: float,
    sector: Optional[Sector] = None,
    cfg: Optional[GtfConfig] = None,
) -> SufficientCheck:
    """Pointwise sufficient condition max_{C_z} |g| / R <= (C / 2 pi) |g'(z)|."""
    cfg = cfg or GtfConfig()
    sample = _evaluate(g, z, radius, sector, cfg)
    rhs = math.exp(_log_abs_derivative(g, z, radius, cfg))
    return SufficientCheck(lhs_sup=sample.margin * rhs, rhs=rhs, margin=sample.margin)


def necessary_check(g: AnalyticFunctionSpec, z: complex, cfg: Optional[GtfConfig] = None) -> float:
    """rho(z) = |g(z)| / |z g'(z)|; a good test function keeps rho bounded.

    Raises:
        ZeroDerivativeError: if g'(z) = 0
    """
    cfg = cfg or GtfConfig()
    log_deriv = _log_abs_derivative(g, z, 0.25 * abs(z), cfg)
    return math.exp(float(g.log_abs_value(z)) - math.log(abs(z)) - log_deriv)


@dataclass(frozen=True)
class BandBound:
    """bound = exp(c2 |xi - z|) |g'(z)| / c1 and actual = |g(xi)|."""

    bound: float
    actual: float

    @property
    def holds(self) -> bool:
        return self.actual <= self.bound * (1.0 + BAND_SLACK)


def log_band_bound(
    g: AnalyticFunctionSpec, z: complex, xi: complex, c1: float, c2: float, cfg: Optional[GtfConfig] = None
) -> BandBound:
    """Growth bound along a segment where c1 <= |g'/g| <= c2.

    The band is checked at both endpoints only; the segment itself is the
    caller's responsibility.

    Raises:
        BandViolationError: if |g'/g| leaves [c1, c2] at z or xi
    """
    cfg = cfg or GtfConfig()
    if not 0 < c1 <= c2:
        raise BandViolationError(f"need 0 < c1 <= c2, got c1={c1}, c2={c2}")
    for point in (z, xi):
        ratio = math.exp(_log_abs_derivative(g, point, 0.25 * abs(point) or 0.5, cfg) - float(g.log_abs_value(point)))
        if ratio < c1 * (1.0 - BAND_SLACK) or ratio > c2 * (1.0 + BAND_SLACK):
            raise BandViolationError(f"|g'/g| = {ratio:.6g} at {point} lies outside [{c1:g}, {c2:g}]")
    log_bound = c2 * abs(xi - z) + _log_abs_derivative(g, z, 0.25 * abs(z) or 0.5, cfg) - math.log(c1)
    return BandBound(bound=math.exp(log_bound), actual=math.exp(float(g.log_abs_value(xi))))


@dataclass
class GtfReport:
    """Result of a scan of c_hat over a sector grid."""

    samples: list[CriterionSample]
    sup_c_hat: float
    verdict: str
    radius_rule_tag: str
    slope: float
    ring_sups: list[tuple[float, float]] = field(default_factory=list)

    def as_rows(self) -> list[dict]:
        return [
            {
                "re_z": s.z.real,
                "im_z": s.z.imag,
                "radius": s.radius,
                "c_hat": s.c_hat,
                "margin": s.margin,
            }
            for s in self.samples
        ]


def _verdict(ring_sups: list[tuple[float, float]], threshold: float) -> tuple[str, float]:
    if len(ring_sups) < 3:
        return "inconclusive", math.nan
    radii = np.array([r for r, _ in ring_sups])
    sups = np.array([c for _, c in ring_sups])
    if not np.all(np.isfinite(sups)) or np.any(sups <= 0):
        return "inconclusive", math.nan
    slope = float(np.polyfit(np.log(radii), np.log(sups), 1)[0])
    return ("growing" if slope > threshold else "bounded"), slope


def gtf_scan(
    g: AnalyticFunctionSpec,
    sector: Sector,
    rule: RadiusRule,
    cfg: Optional[GtfConfig] = None,
    jitter: float = 0.0,
    seed: int = 0,
    workers: int = 1,
) -> GtfReport:
    """Evaluate c_hat on a log-spaced grid of Delta' and classify its growth.

    The verdict is "growing" when the log-log slope of the per-ring supremum
    exceeds ``slope_threshold``, "bounded" otherwise, and "inconclusive" with
    fewer than three rings or non-finite values.
    """
    cfg = cfg or GtfConfig()
    grid = sector.grid(cfg.rings_per_decade, cfg.arg_samples, cfg.decades, jitter=jitter, seed=seed)
    points = [complex(z) for z in grid.ravel()]

    def sample(z: complex) -> CriterionSample:
        return _evaluate(g, z, rule(z), sector, cfg)

    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        samples = list(pool.map(sample, points))

    per_ring = grid.shape[1]
    ring_sups = []
    for i in range(grid.shape[0]):
        ring = samples[i * per_ring : (i + 1) * per_ring]
        ring_sups.append((float(abs(grid[i, 0])), max(s.c_hat for s in ring)))
    verdict, slope = _verdict(ring_sups, cfg.slope_threshold)
    logger.debug("gtf_scan %r with %s: slope %.4g -> %s", g, rule.name, slope, verdict)
    return GtfReport(
        samples=samples,
        sup_c_hat=max(s.c_hat for s in samples),
        verdict=verdict,
        radius_rule_tag=rule.name,
        slope=slope,
        ring_sups=ring_sups,
    )


def default_rule_name(g: AnalyticFunctionSpec) -> str:
    """half_sine for every family except power_exp, which uses the power rule."""
    return "power" if g.kind == "power_exp" else "half_sine"


def default_rule_exponent(g: AnalyticFunctionSpec) -> Optional[float]:
    """1 - Re gamma for power_exp."""
    if g.kind == "power_exp":
        return 1.0 - g.gamma.real
    return None
