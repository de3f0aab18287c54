"""The function mu, its inverse near pi, and the Carnot-Caratheodory distance.

mu(w) = (2w - sin 2w) / (2 sin^2 w) = w / sin^2 w - cot w links t/|z|^2 to the
angle theta of a geodesic. Near pi everything is carried in eps = pi - theta:
a float theta close to pi has only ~1e-16 absolute resolution, while mu grows
like pi / eps^2.
"""

import cmath
import logging
import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
from scipy import optimize

from ..config import BranchConfig
from ..errors import DomainError, NonConvergenceError, PoleError
from .scaled import Number

logger = logging.getLogger(__name__)

SERIES_RADIUS = 1e-2
NEWTON_RTOL = 1e-13
NEWTON_ATOL = 1e-300  # absolute floor; the relative test governs
NEWTON_MAXITER = 60
DAMPING_MIN = 2.0**-30

# Taylor coefficients of odd functions, lowest power first
_MU_SERIES = (2.0 / 3.0, 4.0 / 45.0, 4.0 / 315.0, 8.0 / 4725.0)
_MU_PRIME_SERIES = (2.0 / 3.0, 4.0 / 15.0, 4.0 / 63.0, 8.0 / 675.0)

ArrayLike = Union[Number, np.ndarray]


def _odd_series(w: np.ndarray, coeffs: tuple[float, ...]) -> np.ndarray:
    w2 = w * w
    acc = np.zeros_like(w)
    for c in reversed(coeffs):
        acc = acc * w2 + c
    return acc * w


def _even_series(w: np.ndarray, coeffs: tuple[float, ...]) -> np.ndarray:
    w2 = w * w
    acc = np.zeros_like(w)
    for c in reversed(coeffs):
        acc = acc * w2 + c
    return acc


def _as_array(w: ArrayLike) -> np.ndarray:
    arr = np.asarray(w)
    if np.iscomplexobj(arr):
        return arr.astype(complex)
    return arr.astype(float)


def _check_poles(w: np.ndarray, name: str) -> None:
    k = np.rint(np.real(w) / math.pi)
    near = (k != 0) & (np.abs(w - k * math.pi) < 1e-12)
    if np.any(near):
        raise PoleError(f"{name} has a pole at {w[near].flat[0]}")


def _unwrap(result: np.ndarray, like: ArrayLike) -> ArrayLike:
    if np.ndim(like) == 0:
        return result[()].item()
    return result


def mu(w: ArrayLike) -> ArrayLike:
    """(2w - sin 2w) / (2 sin^2 w); odd, removable at 0, poles at k*pi (k != 0)."""
    arr = _as_array(w)
    _check_poles(arr, "mu")
    out = np.empty_like(arr)
    small = np.abs(arr) < SERIES_RADIUS
    out[small] = _odd_series(arr[small], _MU_SERIES)
    rest = arr[~small]
    s = np.sin(rest)
    out[~small] = rest / (s * s) - np.cos(rest) / s
    return _unwrap(out, w)


def mu_prime(w: ArrayLike) -> ArrayLike:
    """Derivative 2 (1 - w cot w) / sin^2 w."""
    arr = _as_array(w)
    _check_poles(arr, "mu_prime")
    out = np.empty_like(arr)
    small = np.abs(arr) < SERIES_RADIUS
    out[small] = _even_series(arr[small], _MU_PRIME_SERIES)
    rest = arr[~small]
    s = np.sin(rest)
    out[~small] = 2.0 * (1.0 - rest * np.cos(rest) / s) / (s * s)
    return _unwrap(out, w)


def mu_from_eps(eps: Number) -> Number:
    """mu(pi - eps) evaluated in the eps variable: (pi - eps) / sin^2 eps + cot eps."""
    if eps == 0:
        raise PoleError("mu has a pole at pi")
    s = np.sin(eps)
    return (math.pi - eps) / (s * s) + np.cos(eps) / s


def mu_prime_from_eps(eps: Number) -> Number:
    """mu'(pi - eps) = 2 (1 + (pi - eps) cot eps) / sin^2 eps."""
    if eps == 0:
        raise PoleError("mu' has a pole at pi")
    s = np.sin(eps)
    return 2.0 * (1.0 + (math.pi - eps) * np.cos(eps) / s) / (s * s)


def _scalar(value: Number) -> Number:
    value = complex(value)
    return value if value.imag != 0 else value.real


def _in_image(eps: Number) -> bool:
    """0 < Re eps < pi and |arg eps| < pi / 4, where the inverse branch lives."""
    eps = complex(eps)
    return 0.0 < eps.real < math.pi and abs(cmath.phase(eps)) < 0.25 * math.pi


def _damped_newton_eps(x: Number, seed: Number) -> Number:
    """Newton in eps with the step halved until it stays in the image and the residual drops."""
    floor = 8.0 * np.finfo(float).eps * abs(x)
    eps = seed
    residual = abs(mu_from_eps(eps) - x) if _in_image(eps) else math.inf
    for _ in range(NEWTON_MAXITER):
        step = (mu_from_eps(eps) - x) / mu_prime_from_eps(eps)
        lam = 1.0
        while lam >= DAMPING_MIN:
            trial = eps + lam * step
            if _in_image(trial):
                trial_residual = abs(mu_from_eps(trial) - x)
                if trial_residual < residual or trial_residual <= floor:
                    break
            lam *= 0.5
        else:
            raise NonConvergenceError(f"mu_inverse: damped step stalled at eps = {eps} for x = {x}")
        eps, residual = trial, trial_residual
        if abs(lam * step) <= NEWTON_RTOL * abs(eps):
            return _scalar(eps)
    raise NonConvergenceError(f"mu_inverse did not converge for x = {x} after {NEWTON_MAXITER} damped steps")


def mu_inverse_eps(
    x: Number,
    branch: Optional[BranchConfig] = None,
    r0: Optional[float] = None,
    seed: Optional[Number] = None,
) -> Number:
    """eps = pi - mu^{-1}(x) on the branch that maps large x near the positive axis to theta near pi.

    Newton's method in the eps variable, seeded with sqrt(pi / x). When the
    plain iteration fails or lands outside 0 < Re eps < pi, |arg eps| < pi/4
    it is rerun with damped steps that never leave that region.

    mu_from_eps(mu_inverse_eps(x)) reproduces x to 1e-12 relative. The theta
    form is coarser: theta = pi - eps carries an absolute error of ulp(pi),
    so mu(mu_inverse(x)) is only good to about ulp(pi) / eps, near 5e-12 at
    x = 1e8.

    Args:
        x: argument, |x| > r0 and |arg x| < branch.eta0
        branch: sector constants (defaults to BranchConfig())
        r0: override of branch.r0
        seed: starting point in eps (defaults to sqrt(pi / x))

    Raises:
        DomainError: if x is outside the sector
        NonConvergenceError: if neither the plain nor the damped iteration converges
    """
    branch = branch or BranchConfig()
    r0 = branch.r0 if r0 is None else r0
    x = _scalar(x)
    arg = cmath.phase(x)
    if abs(x) <= r0 or abs(arg) >= branch.eta0:
        raise DomainError(f"mu_inverse needs |x| > {r0} and |arg x| < {branch.eta0:.6g}; got x = {x}")

    if seed is None:
        seed = cmath.sqrt(math.pi / x) if isinstance(x, complex) else math.sqrt(math.pi / x)
    root, info = optimize.newton(
        lambda e: mu_from_eps(e) - x,
        seed,
        fprime=lambda e: -mu_prime_from_eps(e),
        tol=NEWTON_ATOL,
        rtol=NEWTON_RTOL,
        maxiter=NEWTON_MAXITER,
        full_output=True,
        disp=False,
    )
    if info.converged and _in_image(root):
        eps = _scalar(root)
    else:
        logger.debug("mu_inverse: plain Newton from %s gave %s for x = %s; damping", seed, root, x)
        eps = _damped_newton_eps(x, seed)
    if abs(cmath.phase(eps)) >= branch.eta0_prime:
        logger.warning("arg(eps) = %.4g lies outside |arg| < %.4g for x = %s", cmath.phase(eps), branch.eta0_prime, x)
    return eps


def mu_inverse(x: Number, branch: Optional[BranchConfig] = None, r0: Optional[float] = None) -> Number:
    """theta = mu^{-1}(x) near pi, for x in the large sector around the positive axis."""
    return math.pi - mu_inverse_eps(x, branch=branch, r0=r0)


def _real_theta_sin(x: float) -> tuple[float, float]:
    """Real theta in [0, pi) with mu(theta) = x, returned with sin(theta)."""
    if x == 0:
        return 0.0, 0.0
    if x <= 10.0:
        theta = optimize.brentq(lambda th: mu(th) - x, 0.0, 2.6, xtol=1e-15)
        return theta, math.sin(theta)
    lo = 0.5 * math.sqrt(math.pi / x)
    eps = optimize.brentq(lambda e: mu_from_eps(e) - x, lo, 0.7, xtol=1e-15 * lo)
    return math.pi - eps, math.sin(eps)


def cc_distance_squared(z_sq: float, t_abs: float) -> float:
    """Squared Carnot-Caratheodory distance d^2(z, t) from |z|^2 and |t|."""
    if z_sq < 0 or t_abs < 0:
        raise DomainError(f"cc_distance_squared needs z_sq >= 0 and t_abs >= 0, got ({z_sq}, {t_abs})")
    if z_sq == 0:
        return 4.0 * math.pi * t_abs
    theta, sin_theta = _real_theta_sin(4.0 * t_abs / z_sq)
    if theta == 0:
        return z_sq
    return (theta / sin_theta) ** 2 * z_sq


@dataclass(frozen=True)
class ThetaEps:
    """Saddle data: theta = mu^{-1}(4v/u), eps = pi - theta, d^2(u, v) = (theta / sin theta)^2 u."""

    theta: Number
    eps: Number
    d_squared: Number
    u: float
    v: Number

    @property
    def dd2_dv(self) -> Number:
        """d(d^2)/dv = 4 theta."""
        return 4.0 * self.theta

    @property
    def dtheta_dv(self) -> Number:
        """d(theta)/dv = 4 / (u mu'(theta))."""
        return 4.0 / (self.u * mu_prime_from_eps(self.eps))

    @property
    def bessel_argument(self) -> Number:
        """pi u / (2 eps), the argument of I_{n-1} in the large-v approximation."""
        return math.pi * self.u / (2.0 * self.eps)


def theta_eps(u: float, v: Number, branch: Optional[BranchConfig] = None, r0: Optional[float] = None) -> ThetaEps:
    """Bundle theta, eps and d^2(u, v) for u > 0 and 4v/u in the large sector."""
    if u <= 0:
        raise DomainError(f"theta_eps needs u > 0, got {u}")
    eps = mu_inverse_eps(4.0 * v / u, branch=branch, r0=r0)
    theta = math.pi - eps
    d_squared = _scalar((theta / np.sin(eps)) ** 2 * u)
    return ThetaEps(theta=theta, eps=eps, d_squared=d_squared, u=u, v=v)
