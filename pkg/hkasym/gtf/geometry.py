"""Sectors at infinity, circle contours and the radius rules R(z)."""

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..errors import DomainError, GeometryError


@dataclass(frozen=True)
class Sector:
    """Delta = {|z| > r_min, |arg z| < theta0} and its closed subsector Delta' (|arg z| <= theta1)."""

    r_min: float = 10.0
    theta0: float = 0.5 * math.pi
    theta1: float = 0.25 * math.pi

    def __post_init__(self) -> None:
        if self.r_min <= 0:
            raise GeometryError(f"r_min must be > 0, got {self.r_min}")
        if not 0 < self.theta0 < math.pi:
            raise GeometryError(f"theta0 must lie in (0, pi), got {self.theta0}")
        if not 0 < self.theta1 < self.theta0:
            raise GeometryError(f"theta1 must lie in (0, theta0) = (0, {self.theta0:g}), got {self.theta1}")

    def contains(self, z: complex) -> bool:
        return bool(abs(z) > self.r_min and abs(np.angle(z)) < self.theta0)

    def contains_inner(self, z: complex) -> bool:
        return bool(abs(z) > self.r_min and abs(np.angle(z)) <= self.theta1)

    def contains_all(self, points: np.ndarray) -> bool:
        return bool(np.all((np.abs(points) > self.r_min) & (np.abs(np.angle(points)) < self.theta0)))

    def grid(
        self,
        rings_per_decade: int = 8,
        arg_samples: int = 5,
        decades: int = 4,
        start: Optional[float] = None,
        jitter: float = 0.0,
        seed: int = 0,
    ) -> np.ndarray:
        """Sample points of Delta' on log-spaced rings, shape (rings, arg_samples).

        Rings start at 3 * r_min unless ``start`` is given. ``jitter`` in [0, 1)
        moves each argument randomly by up to that fraction of the spacing.
        """
        start = 3.0 * self.r_min if start is None else start
        if start <= self.r_min:
            raise GeometryError(f"grid must start beyond r_min = {self.r_min}, got {start}")
        radii = start * 10.0 ** (np.arange(decades * rings_per_decade + 1) / rings_per_decade)
        if arg_samples == 1:
            args = np.zeros((radii.size, 1))
        else:
            base = np.linspace(-self.theta1, self.theta1, arg_samples)
            args = np.tile(base, (radii.size, 1))
            if jitter:
                spacing = base[1] - base[0]
                rng = np.random.default_rng(seed)
                args = args + jitter * spacing * rng.uniform(-0.5, 0.5, size=args.shape)
                args = np.clip(args, -self.theta1, self.theta1)
        return radii[:, None] * np.exp(1j * args)


@dataclass(frozen=True)
class ContourCircle:
    """C_z = {xi : |xi - center| = radius} sampled at ``nodes`` equispaced points."""

    center: complex
    radius: float
    nodes: int = 256

    def __post_init__(self) -> None:
        if self.radius <= 0:
            raise GeometryError(f"radius must be > 0, got {self.radius}")
        if self.radius > 0.5 * abs(self.center) * (1.0 + 1e-12):
            raise GeometryError(f"radius {self.radius:g} exceeds |center| / 2 = {0.5 * abs(self.center):g}")
        if self.nodes < 16:
            raise GeometryError(f"a circle needs at least 16 nodes, got {self.nodes}")

    def angles(self, nodes: Optional[int] = None) -> np.ndarray:
        count = nodes or self.nodes
        return 2.0 * math.pi * np.arange(count) / count

    def points(self, nodes: Optional[int] = None) -> np.ndarray:
        return self.center + self.radius * np.exp(1j * self.angles(nodes))

    def check_inside(self, sector: Sector) -> None:
        """Raise GeometryError if any node leaves Delta."""
        if not sector.contains_all(self.points()):
            raise GeometryError(f"circle |xi - {self.center}| = {self.radius:g} leaves the sector")


class RadiusRule(ABC):
    """A choice of R(z) in (0, |z|/2]."""

    @property
    @abstractmethod
    def name(self) -> str:
        pass

    @abstractmethod
    def radius(self, z: complex) -> float:
        pass

    def __call__(self, z: complex) -> float:
        return min(self.radius(z), 0.5 * abs(z))


class HalfSineRule(RadiusRule):
    """R(z) = sin(theta0 - theta1) |z| / 2, the largest circle that stays inside Delta from Delta'."""

    def __init__(self, sector: Sector):
        self.factor = 0.5 * math.sin(sector.theta0 - sector.theta1)

    @property
    def name(self) -> str:
        return "half_sine"

    def radius(self, z: complex) -> float:
        return self.factor * abs(z)


class PowerRule(RadiusRule):
    """R(z) = |z|^exponent."""

    def __init__(self, exponent: float):
        self.exponent = exponent

    @property
    def name(self) -> str:
        return f"power({self.exponent:g})"

    def radius(self, z: complex) -> float:
        return abs(z) ** self.exponent


class FixedRule(RadiusRule):
    def __init__(self, value: float):
        if value <= 0:
            raise GeometryError(f"fixed radius must be > 0, got {value}")
        self.value = value

    @property
    def name(self) -> str:
        return f"fixed({self.value:g})"

    def radius(self, z: complex) -> float:
        return self.value


RULES = ("half_sine", "power", "fixed")


def get_radius_rule(
    name: str, sector: Sector, exponent: Optional[float] = None, radius: Optional[float] = None
) -> RadiusRule:
    """Build a radius rule by name."""
    name = name.lower().replace("-", "_")
    if name == "half_sine":
        return HalfSineRule(sector)
    elif name == "power":
        if exponent is None:
            raise DomainError("power rule needs an exponent")
        return PowerRule(exponent)
    elif name == "fixed":
        if radius is None:
            raise DomainError("fixed rule needs a radius")
        return FixedRule(radius)
    else:
        raise DomainError(f"Unknown radius rule: {name}; expected one of {', '.join(RULES)}")
