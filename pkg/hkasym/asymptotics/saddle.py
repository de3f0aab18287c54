"""Saddle-point diagnostics for the m = 1 contour integral.

On the circle s = i pi - i xi, xi = eps e^{i phi}, the integrand of the
kernel factors as

    exp(-d^2/4) pi^n eps^(1-n) e^{i(1-n) phi} S(n; xi) exp(R(u, eps; xi)) exp(-kappa (1 - cos phi))

with kappa = pi u / (2 eps). Expanding S e^R in powers of xi turns each term
into a modified Bessel function of kappa. The helpers here measure each
piece of that factorization numerically.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..config import BranchConfig, QuadratureConfig
from ..errors import DomainError
from ..kernel.quadrature import periodic_trapezoid
from ..specfun.bessel import bessel_i_scaled
from ..specfun.distance import theta_eps
from ..specfun.phase import (
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
from ..specfun.scaled import Number

BOUND_SAMPLES = 512
ETA_NODES = 256


def angular_bessel_integral(
    n: int, j: int, u: float, eps: Number, cfg: Optional[QuadratureConfig] = None
) -> complex:
    """(1 / 2 pi) int_{-pi}^{pi} e^{i(1 + j - n) phi} exp(-kappa (1 - cos phi)) d phi, kappa = pi u / (2 eps).

    Equals exp(-kappa) I_{n-j-1}(kappa); see ``angular_bessel_reference``.
    """
    kappa = math.pi * u / (2.0 * eps)
    order = 1 + j - n

    def integrand(phi: np.ndarray) -> np.ndarray:
        return np.exp(1j * order * phi - kappa * (1.0 - np.cos(phi)))

    result = periodic_trapezoid(integrand, 64, cfg or QuadratureConfig(), label="angular integral")
    return complex(result.value) / (2.0 * math.pi)


def angular_bessel_reference(n: int, j: int, u: float, eps: Number) -> complex:
    """exp(-kappa) I_{|n-j-1|}(kappa)."""
    kappa = math.pi * u / (2.0 * eps)
    return complex(bessel_i_scaled(abs(n - j - 1), kappa))


def remainder_bound(u: float, eps: Number, samples: int = BOUND_SAMPLES) -> float:
    """sup over phi in (0, pi] of |R(u, eps; eps e^{i phi})| / (u |eps|^2 (1 - cos phi)).

    R is even in phi up to conjugation for real eps, so the half circle suffices.
    """
    if u <= 0:
        raise DomainError(f"remainder_bound needs u > 0, got {u}")
    phi = math.pi * np.arange(1, samples + 1) / samples
    values = np.abs(np.asarray(remainder_r(u, eps, eps * np.exp(1j * phi))))
    scale = u * abs(eps) ** 2 * (1.0 - np.cos(phi))
    return float(np.max(values / scale))


def eta_coefficients(n: int, u: float, eps: Number, count: int, nodes: int = ETA_NODES) -> np.ndarray:
    """Taylor coefficients eta_0..eta_{count-1} of S(n; xi) exp(R(u, eps; xi)) around xi = 0.

    Read off as Fourier coefficients on the circle |xi| = |eps| and divided by eps^j.
    """
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count}")
    phi = 2.0 * math.pi * np.arange(nodes) / nodes
    xi = eps * np.exp(1j * phi)
    values = np.asarray(s_factor(n, xi)) * np.exp(np.asarray(remainder_r(u, eps, xi)))
    return np.array([np.mean(values * np.exp(-1j * j * phi)) / eps**j for j in range(count)])


@dataclass(frozen=True)
class SaddleDiagnostics:
    """Measured residuals of the saddle-point identities at one (u, v)."""

    u: float
    v: Number
    theta: Number
    eps: Number
    phi_at_saddle: complex
    phi_prime_norm: float
    d_sq_over_4: Number
    g_value: complex
    remainder_sup: float
    bound_constant: float

    @property
    def phi_residual(self) -> float:
        """|phi(i theta) + d^2/4| / (d^2/4)."""
        return abs(self.phi_at_saddle + self.d_sq_over_4) / abs(self.d_sq_over_4)

    @property
    def saddle_relation_residual(self) -> float:
        """|v - (pi u / (4 eps^2) - G'(eps))| / |v|."""
        predicted = math.pi * self.u / (4.0 * self.eps**2) - g_prime(self.u, self.eps)
        return abs(self.v - predicted) / abs(self.v)


def saddle_diagnostics(u: float, v: Number, branch: Optional[BranchConfig] = None) -> SaddleDiagnostics:
    """Evaluate phi, phi', G and the remainder bound at the saddle i theta of (u, v)."""
    te = theta_eps(u, v, branch=branch)
    s = 1j * te.theta
    phi = np.exp(1j * np.linspace(-math.pi, math.pi, BOUND_SAMPLES, endpoint=False))
    remainder = np.abs(np.asarray(remainder_r(u, te.eps, te.eps * phi)))
    return SaddleDiagnostics(
        u=u,
        v=v,
        theta=te.theta,
        eps=te.eps,
        phi_at_saddle=complex(saddle_phi(u, v, s)),
        phi_prime_norm=abs(saddle_phi_prime(u, v, s)),
        d_sq_over_4=te.d_squared / 4.0,
        g_value=complex(g_function(u, te.eps)),
        remainder_sup=float(np.max(remainder)),
        bound_constant=remainder_bound(u, te.eps),
    )


__all__ = [
    "SaddleDiagnostics",
    "angular_bessel_integral",
    "angular_bessel_reference",
    "eta_coefficients",
    "g_function",
    "g_prime",
    "phase_offset",
    "remainder_bound",
    "remainder_r",
    "s_coth_s",
    "s_factor",
    "s_over_sinh",
    "saddle_diagnostics",
    "saddle_phi",
    "saddle_phi_prime",
]
