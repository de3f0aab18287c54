"""Quadrature engines shared by the kernel evaluators.

Two families, both refined by doubling until successive estimates agree:

- composite Gauss-Legendre panels on a finite interval (``panel_integrate``);
- trapezoid sums, spectrally accurate for periodic analytic integrands
  (``periodic_trapezoid``) and for analytic integrands that decay at both ends
  of a line (``line_trapezoid``).

Integrands are vectorized callables taking and returning numpy arrays.
Convergence is relative to ``max(|S|, scale)`` plus a rounding floor of
64 ulp of the integral of |f|, so cancelling integrands do not spin forever.
"""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

import numpy as np
from scipy import special

from ..config import QuadratureConfig
from ..errors import QuadratureStallError

logger = logging.getLogger(__name__)

GL_ORDER = 32
EPS = float(np.finfo(float).eps)

Integrand = Callable[[np.ndarray], np.ndarray]
Scalar = Union[float, complex]


@dataclass(frozen=True)
class QuadratureResult:
    """An integral estimate with the data used to judge it."""

    value: Scalar
    error: float
    l1: float
    nodes: int


@lru_cache(maxsize=8)
def _gauss_legendre(order: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = special.roots_legendre(order)
    return x, w


def gauss_panels(fn: Integrand, a: float, b: float, panels: int, order: int = GL_ORDER) -> tuple[Scalar, float]:
    """Composite Gauss-Legendre rule on [a, b] with equal panels; returns (sum, sum of |terms|)."""
    x, w = _gauss_legendre(order)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    points = mid[:, None] + half[:, None] * x[None, :]
    values = np.asarray(fn(points.ravel())).reshape(points.shape)
    weighted = values * (half[:, None] * w[None, :])
    total = weighted.sum()
    return (complex(total) if np.iscomplexobj(total) else float(total)), float(np.abs(weighted).sum())


def _refine(
    rule: Callable[[int], tuple[Scalar, float]],
    start: int,
    limit: int,
    cfg: QuadratureConfig,
    scale: float,
    label: str,
) -> QuadratureResult:
    count = start
    previous, _ = rule(count)
    while True:
        count *= 2
        current, l1 = rule(count)
        error = abs(current - previous)
        floor = 64.0 * EPS * l1
        reference = max(abs(current), scale)
        if error <= cfg.rel_tol * reference + floor:
            return QuadratureResult(current, error, l1, count)
        if count >= limit:
            if error <= cfg.stall_tol * reference + floor:
                logger.warning("%s stalled at %d nodes; accepting error %.3g", label, count, error)
                return QuadratureResult(current, error, l1, count)
            raise QuadratureStallError(
                f"{label} did not reach rel_tol={cfg.rel_tol:g} with {count} nodes (last change {error:.3g})"
            )
        logger.debug("%s: %d nodes, change %.3g", label, count, error)
        previous = current


def panel_integrate(
    fn: Integrand,
    a: float,
    b: float,
    width: float,
    cfg: QuadratureConfig,
    scale: float = 0.0,
    label: str = "panel quadrature",
    order: int = GL_ORDER,
) -> QuadratureResult:
    """Integrate fn over [a, b] starting from panels of the given width.

    Raises:
        QuadratureStallError: if max_panels is reached without agreement
    """
    start = max(2, math.ceil((b - a) / width))
    limit = max(cfg.max_panels, 2 * start)
    return _refine(lambda p: gauss_panels(fn, a, b, p, order), start, limit, cfg, scale, label)


def periodic_trapezoid(
    fn: Integrand,
    nodes: int,
    cfg: QuadratureConfig,
    scale: float = 0.0,
    label: str = "periodic trapezoid",
) -> QuadratureResult:
    """Integral of a 2*pi-periodic fn over [-pi, pi] by the equal-weight rule."""

    def rule(count: int) -> tuple[Scalar, float]:
        phi = -math.pi + 2.0 * math.pi * np.arange(count) / count
        values = np.asarray(fn(phi))
        step = 2.0 * math.pi / count
        total = values.sum() * step
        return (complex(total) if np.iscomplexobj(total) else float(total)), float(np.abs(values).sum() * step)

    return _refine(rule, nodes, cfg.max_panels * GL_ORDER, cfg, scale, label)


def line_trapezoid(
    fn: Integrand,
    half_width: float,
    nodes: int,
    cfg: QuadratureConfig,
    scale: float = 0.0,
    label: str = "line trapezoid",
) -> QuadratureResult:
    """Integral over [-X, X] of fn, assumed negligible at both ends."""

    def rule(count: int) -> tuple[Scalar, float]:
        x = np.linspace(-half_width, half_width, count + 1)
        values = np.asarray(fn(x))
        step = 2.0 * half_width / count
        weights = np.full(count + 1, step)
        weights[0] = weights[-1] = 0.5 * step
        total = (values * weights).sum()
        return (complex(total) if np.iscomplexobj(total) else float(total)), float((np.abs(values) * weights).sum())

    return _refine(rule, nodes, cfg.max_panels * GL_ORDER, cfg, scale, label)


def decay_cutoff(power: float, rate: float, drop: float, start: float = 1.0) -> float:
    """Smallest X with power * log(X) - rate * X <= -drop, found by fixed-point iteration.

    Bounds the tail of integrands whose envelope is X^power * exp(-rate * X).
    """
    if rate <= 0:
        raise ValueError(f"decay rate must be positive, got {rate}")
    x = max(start, 1.0)
    for _ in range(100):
        nxt = max((drop + power * math.log(x)) / rate, 1.0)
        if abs(nxt - x) < 1e-6 * x:
            return nxt
        x = nxt
    return x
