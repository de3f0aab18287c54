"""Differentiating asymptotic expansions term by term, and how it can fail."""

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..config import GtfConfig
from ..errors import DomainError
from .criterion import cauchy_derivative
from .functions import AnalyticFunctionSpec
from .geometry import ContourCircle, HalfSineRule, Sector

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExpansionSpec:
    """f ~ sum_n f_n with respect to the scale sequence g_n."""

    f: AnalyticFunctionSpec
    terms: tuple[AnalyticFunctionSpec, ...]
    scales: tuple[AnalyticFunctionSpec, ...]

    def __post_init__(self) -> None:
        if not self.terms:
            raise DomainError("an expansion needs at least one term")
        if len(self.terms) != len(self.scales):
            raise DomainError(f"{len(self.terms)} terms but {len(self.scales)} scale functions")

    def is_asymptotic_sequence(self, ray: Sequence[float]) -> bool:
        """|g_{n+1} / g_n| decreases along the positive axis for every n."""
        x = np.asarray(ray, dtype=complex)
        for lower, upper in zip(self.scales, self.scales[1:]):
            ratios = np.abs(np.asarray(upper.value(x)) / np.asarray(lower.value(x)))
            if not np.all(np.diff(ratios) < 0):
                return False
        return True


@dataclass(frozen=True)
class RemainderRow:
    z: complex
    remainder: float
    derivative_remainder: float


@dataclass(frozen=True)
class ExpansionTable:
    """Remainders r_N = (f - S_N) / g_N and r'_N = (f' - S_N') / g_N' along a ray."""

    order: int
    rows: list[RemainderRow]

    @staticmethod
    def _decreasing(values: list[float]) -> bool:
        finite = [v for v in values if math.isfinite(v)]
        return len(finite) == len(values) and all(b < a for a, b in zip(finite, finite[1:]))

    @property
    def value_decreasing(self) -> bool:
        return self._decreasing([r.remainder for r in self.rows])

    @property
    def derivative_decreasing(self) -> bool:
        return self._decreasing([r.derivative_remainder for r in self.rows])

    def decay_factors(self, derivative: bool = False) -> list[float]:
        """Ratios between consecutive remainders along the ray."""
        values = [r.derivative_remainder if derivative else r.remainder for r in self.rows]
        return [a / b for a, b in zip(values, values[1:])]


def _derivative(f: AnalyticFunctionSpec, z: complex, sector: Sector, cfg: GtfConfig) -> complex:
    if f.has_derivative:
        return complex(f.derivative(z))
    radius = HalfSineRule(sector)(z)
    return cauchy_derivative(f, ContourCircle(z, radius, cfg.nodes), cfg)


def diff_expansion_check(
    spec: ExpansionSpec,
    sector: Sector,
    ray: Sequence[float],
    order: int,
    cfg: Optional[GtfConfig] = None,
) -> ExpansionTable:
    """Tabulate |r_N| and |r'_N| at the points of ``ray`` on the positive axis.

    A vanishing g_N' gives a nan derivative remainder.
    """
    cfg = cfg or GtfConfig()
    if not 0 <= order < len(spec.terms):
        raise DomainError(f"order must lie in [0, {len(spec.terms) - 1}], got {order}")
    rows = []
    for x in ray:
        z = complex(x)
        if not sector.contains_inner(z):
            raise DomainError(f"ray point {x} is not in the sector")
        partial = sum(complex(t.value(z)) for t in spec.terms[: order + 1])
        partial_prime = sum(_derivative(t, z, sector, cfg) for t in spec.terms[: order + 1])
        scale = complex(spec.scales[order].value(z))
        scale_prime = _derivative(spec.scales[order], z, sector, cfg)
        remainder = abs((complex(spec.f.value(z)) - partial) / scale)
        if scale_prime == 0:
            derivative_remainder = math.nan
        else:
            derivative_remainder = abs((_derivative(spec.f, z, sector, cfg) - partial_prime) / scale_prime)
        rows.append(RemainderRow(z=z, remainder=remainder, derivative_remainder=derivative_remainder))
    logger.debug("diff_expansion_check order %d: %s", order, rows)
    return ExpansionTable(order=order, rows=rows)


def _log_ray(r_start: float, decades: float, samples_per_decade: int) -> np.ndarray:
    count = int(round(decades * samples_per_decade)) + 1
    return r_start * 10.0 ** (np.arange(count) / samples_per_decade)


def oscillation_amplitude(
    f: AnalyticFunctionSpec, r_start: float = 1e2, decades: float = 4.0, samples_per_decade: int = 64
) -> float:
    """(max - min) / 2 of Re(x f'(x)) over a log-spaced stretch of the positive axis."""
    x = _log_ray(r_start, decades, samples_per_decade)
    values = np.real(x * np.asarray(f.derivative(x.astype(complex))))
    return float(0.5 * (values.max() - values.min()))


def derivative_growth_bound(
    f: AnalyticFunctionSpec, r_start: float = 1e2, decades: float = 4.0, samples_per_decade: int = 64
) -> float:
    """max of |f'(x)| |x| / |log x| over the same stretch."""
    x = _log_ray(r_start, decades, samples_per_decade)
    values = np.abs(np.asarray(f.derivative(x.astype(complex)))) * x / np.abs(np.log(x))
    return float(values.max())
