"""Bessel J, exponentially scaled Bessel I and the gamma function."""

import cmath
import math

import numpy as np
from scipy import integrate, special

from ..errors import DomainError
from .scaled import Number, ScaledValue

# |z| at which bessel_i_scaled stops integrating and uses the large-argument form.
I_SWITCHOVER = 30.0


def gamma_fn(x: float) -> float:
    """Gamma function for x > 0."""
    if x <= 0:
        raise DomainError(f"gamma_fn requires x > 0, got {x}")
    return float(special.gamma(x))


def bessel_j(nu: float, x: float) -> float:
    """Bessel function of the first kind J_nu(x) for nu >= -1/2, x >= 0."""
    if nu < -0.5:
        raise DomainError(f"bessel_j requires nu >= -1/2, got {nu}")
    if x < 0:
        raise DomainError(f"bessel_j requires x >= 0, got {x}")
    return float(special.jv(nu, x))


def reduced_bessel_j(nu: float, x: np.ndarray) -> np.ndarray:
    """(x/2)^(-nu) J_nu(x), the entire function that appears in the kernel integrand.

    Vectorized; the origin is handled by four terms of the power series.
    """
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    small = x < 1e-2
    if np.any(small):
        q = -((x[small] / 2.0) ** 2)
        series = np.zeros_like(q)
        term = np.ones_like(q)
        for k in range(4):
            series += term / special.gamma(k + nu + 1.0)
            term = term * q / (k + 1.0)
        out[small] = series
    big = ~small
    if np.any(big):
        out[big] = special.jv(nu, x[big]) * (x[big] / 2.0) ** (-nu)
    return out


def _bessel_i_scaled_quad(nu: float, z: complex) -> ScaledValue:
    """exp(-z) I_nu(z) from the finite integral over h in [-1, 1].

    With t = 1 + h the integral reads
    (z/2)^nu / (sqrt(pi) Gamma(nu + 1/2)) * int_0^2 (t(2 - t))^(nu - 1/2) exp(-z t) dt,
    and the algebraic endpoint weight goes to QUADPACK's QAWS rule.
    """
    alpha = nu - 0.5
    opts = {"weight": "alg", "wvar": (alpha, alpha), "epsabs": 0.0, "epsrel": 1e-13, "limit": 200}
    re_part = integrate.quad(lambda t: math.exp(-z.real * t) * math.cos(z.imag * t), 0.0, 2.0, **opts)[0]
    im_part = 0.0
    if z.imag != 0:
        im_part = -integrate.quad(lambda t: math.exp(-z.real * t) * math.sin(z.imag * t), 0.0, 2.0, **opts)[0]
    log_prefactor = nu * cmath.log(z / 2.0) - 0.5 * math.log(math.pi) - special.gammaln(nu + 0.5)
    integral = complex(re_part, im_part) if z.imag != 0 else re_part
    return ScaledValue.from_log(log_prefactor) * ScaledValue.of(integral)


def _bessel_i_scaled_large(nu: float, z: complex) -> ScaledValue:
    """exp(-z) I_nu(z) for large |z| from scipy's exponentially scaled ive."""
    value = special.ive(nu, z)
    if z.imag != 0:
        # ive only removes exp(|Re z|); the phase exp(-i Im z) is ours to apply
        value = value * cmath.exp(-1j * z.imag)
        return ScaledValue.of(complex(value))
    return ScaledValue.of(float(np.real(value)))


def bessel_i_scaled(nu: float, z: Number, switchover: float = I_SWITCHOVER) -> ScaledValue:
    """exp(-z) I_nu(z) as a ScaledValue, for nu > -1/2 and Re z >= 0."""
    if nu <= -0.5:
        raise DomainError(f"bessel_i_scaled requires nu > -1/2, got {nu}")
    z = complex(z)
    if z.real < 0:
        raise DomainError(f"bessel_i_scaled requires Re z >= 0, got {z}")
    if z == 0:
        if nu == 0:
            return ScaledValue.of(1.0)
        if nu > 0:
            return ScaledValue.zero()
        raise DomainError(f"I_nu(0) is infinite for nu = {nu} < 0")
    if abs(z) <= switchover:
        return _bessel_i_scaled_quad(nu, z)
    return _bessel_i_scaled_large(nu, z)
