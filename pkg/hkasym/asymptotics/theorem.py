"""Closed-form large-v approximations of p(n, m; u, v)."""

import math
from dataclasses import dataclass
from typing import Optional

from ..config import BranchConfig
from ..errors import DomainError
from ..specfun.bessel import bessel_i_scaled
from ..specfun.distance import theta_eps
from ..specfun.scaled import ScaledValue
from .saddle import eta_coefficients


@dataclass(frozen=True)
class AsymptoticApprox:
    """q(n, m; u, v) together with the factors it is built from.

    value = prefactor * exp(exp_log) * bessel_part, where bessel_part is
    eps^(1-n) exp(-kappa) I_{n-1}(kappa) with kappa = pi u / (2 eps).
    """

    value: ScaledValue
    prefactor: float
    exp_log: float
    bessel_part: ScaledValue
    regime_tag: str
    eps: Optional[float] = None

    def recompose(self) -> ScaledValue:
        return ScaledValue.of(self.prefactor) * ScaledValue.from_log(self.exp_log) * self.bessel_part


def _check_dims(n: int, m: int) -> None:
    if n < 1 or m < 1:
        raise DomainError(f"n and m must be >= 1, got n={n}, m={m}")


def q_theorem(n: int, m: int, u: float, v: float, branch: Optional[BranchConfig] = None) -> AsymptoticApprox:
    """2^(-2n - (m-1)/2) v^(-(m-1)/2) exp(-d^2/4) eps^(1-n) exp(-kappa) I_{n-1}(kappa).

    Raises:
        DomainError: if u <= 0 or 4v/u is outside the large-x sector
    """
    _check_dims(n, m)
    te = theta_eps(u, v, branch=branch)
    half_m = 0.5 * (m - 1)
    prefactor = 2.0 ** (-2 * n - half_m) * v ** (-half_m)
    kappa = math.pi * u / (2.0 * te.eps)
    bessel_part = bessel_i_scaled(n - 1, kappa).scale_log((1 - n) * math.log(te.eps))
    exp_log = -te.d_squared / 4.0
    return AsymptoticApprox(
        value=ScaledValue.of(prefactor, exp_log) * bessel_part,
        prefactor=prefactor,
        exp_log=exp_log,
        bessel_part=bessel_part,
        regime_tag="u_positive",
        eps=te.eps,
    )


def b_asymp(n: int, m: int, v: float) -> ScaledValue:
    """Leading term of b(n, m; v) = p(n, m; 0, v).

    Odd m = 2k + 1: v^(n-k-1) exp(-pi v) / (2^k 4^n (n-1)!).
    Even m = 2k: sqrt(2) v^(n-k-1/2) exp(-pi v) / (2^k 4^n (n-1)!).
    """
    _check_dims(n, m)
    if v <= 0:
        raise DomainError(f"b_asymp needs v > 0, got {v}")
    k = m // 2
    log_coeff = -k * math.log(2.0) - n * math.log(4.0) - math.lgamma(n)
    if m % 2:
        power = n - k - 1
    else:
        log_coeff += 0.5 * math.log(2.0)
        power = n - k - 0.5
    return ScaledValue.from_log(log_coeff + power * math.log(v) - math.pi * v)


def q_expansion(n: int, u: float, v: float, terms: int = 3, branch: Optional[BranchConfig] = None) -> ScaledValue:
    """Refined m = 1 approximation with ``terms`` saddle-expansion coefficients.

    2^(-2n) exp(-d^2/4) eps^(1-n) sum_j eta_j eps^j exp(-kappa) I_{|n-j-1|}(kappa).
    terms = 1 reproduces q_theorem up to eta_0.
    """
    _check_dims(n, 1)
    te = theta_eps(u, v, branch=branch)
    kappa = math.pi * u / (2.0 * te.eps)
    eta = eta_coefficients(n, u, te.eps, terms)
    total = ScaledValue.zero()
    for j, coeff in enumerate(eta):
        term = bessel_i_scaled(abs(n - j - 1), kappa) * float(coeff.real) * te.eps**j
        total = total + term
    return total.scale_log(-2 * n * math.log(2.0) - te.d_squared / 4.0 + (1 - n) * math.log(te.eps))
