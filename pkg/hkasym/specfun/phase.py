"""Phase function of the kernel integrand and its decomposition around i*pi.

phi(u, v; s) = i v s - (u/4) s coth s. Writing s = i(pi - xi) splits it as
-(pi - xi) v + pi u / (4 xi) + G(u; xi) with G analytic for |xi| < pi.
All functions broadcast over numpy arrays.
"""

import math

import numpy as np

from ..errors import PoleError
from .distance import ArrayLike, _unwrap, mu

SERIES_RADIUS = 1e-2

# cot(x) - 1/x = -(x/3 + x^3/45 + 2x^5/945 + x^7/4725)
_COT_MINUS_INV = (1.0 / 3.0, 1.0 / 45.0, 2.0 / 945.0, 1.0 / 4725.0)
# x cot(x) = 1 - x^2/3 - x^4/45 - 2x^6/945
_X_COT = (1.0, -1.0 / 3.0, -1.0 / 45.0, -2.0 / 945.0)
# csc^2(x) - 1/x^2 = 1/3 + x^2/15 + 2x^4/189 + x^6/675
_CSC2_MINUS_INV2 = (1.0 / 3.0, 1.0 / 15.0, 2.0 / 189.0, 1.0 / 675.0)
# x / sin(x) = 1 + x^2/6 + 7x^4/360 + 31x^6/15120
_X_OVER_SIN = (1.0, 1.0 / 6.0, 7.0 / 360.0, 31.0 / 15120.0)
# s coth(s) = 1 + s^2/3 - s^4/45 + 2s^6/945
_S_COTH = (1.0, 1.0 / 3.0, -1.0 / 45.0, 2.0 / 945.0)
# coth(s) - s csch^2(s) = 2s/3 - 4s^3/45 + 12s^5/945 - 8s^7/4725
_COTH_DERIV = (2.0 / 3.0, -4.0 / 45.0, 12.0 / 945.0, -8.0 / 4725.0)
# s / sinh(s) = 1 - s^2/6 + 7s^4/360 - 31s^6/15120
_S_OVER_SINH = (1.0, -1.0 / 6.0, 7.0 / 360.0, -31.0 / 15120.0)


def _poly_even(x: np.ndarray, coeffs: tuple[float, ...]) -> np.ndarray:
    x2 = x * x
    acc = np.zeros_like(x)
    for c in reversed(coeffs):
        acc = acc * x2 + c
    return acc


def _complex_array(x: ArrayLike) -> np.ndarray:
    return np.asarray(x, dtype=complex)


def _check_real_axis_poles(x: np.ndarray, name: str) -> None:
    k = np.rint(x.real / math.pi)
    near = (k != 0) & (np.abs(x - k * math.pi) < 1e-12)
    if np.any(near):
        raise PoleError(f"{name} has a pole at {x[near].flat[0]}")


def _check_imag_axis_poles(s: np.ndarray, name: str) -> None:
    k = np.rint(s.imag / math.pi)
    near = (k != 0) & (np.abs(s - 1j * k * math.pi) < 1e-12)
    if np.any(near):
        raise PoleError(f"{name} has a pole at {s[near].flat[0]}")


def s_coth_s(s: ArrayLike) -> ArrayLike:
    """s coth s with the removable value 1 at the origin."""
    arr = _complex_array(s)
    _check_imag_axis_poles(arr, "s coth s")
    out = np.empty_like(arr)
    small = np.abs(arr) < SERIES_RADIUS
    out[small] = _poly_even(arr[small], _S_COTH)
    rest = arr[~small]
    out[~small] = rest / np.tanh(rest)
    return _unwrap(out, s)


def s_over_sinh(s: ArrayLike) -> ArrayLike:
    """s / sinh s with the removable value 1 at the origin."""
    arr = _complex_array(s)
    _check_imag_axis_poles(arr, "s / sinh s")
    out = np.empty_like(arr)
    small = np.abs(arr) < SERIES_RADIUS
    out[small] = _poly_even(arr[small], _S_OVER_SINH)
    rest = arr[~small]
    out[~small] = rest / np.sinh(rest)
    return _unwrap(out, s)


def saddle_phi(u: float, v: complex, s: ArrayLike) -> ArrayLike:
    """phi(u, v; s) = i v s - (u/4) s coth s."""
    arr = _complex_array(s)
    return _unwrap(1j * v * arr - 0.25 * u * np.asarray(s_coth_s(arr)), s)


def saddle_phi_prime(u: float, v: complex, s: ArrayLike) -> ArrayLike:
    """d phi / ds = i v - (u/4)(coth s - s / sinh^2 s)."""
    arr = _complex_array(s)
    _check_imag_axis_poles(arr, "phi'")
    out = np.empty_like(arr)
    small = np.abs(arr) < SERIES_RADIUS
    x = arr[small]
    out[small] = x * _poly_even(x, _COTH_DERIV)
    rest = arr[~small]
    sh = np.sinh(rest)
    out[~small] = 1.0 / np.tanh(rest) - rest / (sh * sh)
    return _unwrap(1j * v - 0.25 * u * out, s)


def g_function(u: float, xi: ArrayLike) -> ArrayLike:
    """G(u; xi) = (u/4)(pi (cot xi - 1/xi) - xi cot xi); G(u; 0) = -u/4."""
    arr = _complex_array(xi)
    _check_real_axis_poles(arr, "G")
    out = np.empty_like(arr)
    small = np.abs(arr) < SERIES_RADIUS
    x = arr[small]
    out[small] = -math.pi * x * _poly_even(x, _COT_MINUS_INV) - _poly_even(x, _X_COT)
    rest = arr[~small]
    cot = np.cos(rest) / np.sin(rest)
    out[~small] = math.pi * (cot - 1.0 / rest) - rest * cot
    return _unwrap(0.25 * u * out, xi)


def g_prime(u: float, xi: ArrayLike) -> ArrayLike:
    """dG/dxi = (u/4)(mu(xi) - pi (csc^2 xi - 1/xi^2))."""
    arr = _complex_array(xi)
    _check_real_axis_poles(arr, "G'")
    out = np.empty_like(arr)
    small = np.abs(arr) < SERIES_RADIUS
    out[small] = _poly_even(arr[small], _CSC2_MINUS_INV2)
    rest = arr[~small]
    sn = np.sin(rest)
    out[~small] = 1.0 / (sn * sn) - 1.0 / (rest * rest)
    return _unwrap(0.25 * u * (np.asarray(mu(arr)) - math.pi * out), xi)


def remainder_r(u: float, eps: complex, xi: ArrayLike) -> ArrayLike:
    """First-order Taylor remainder of G around eps: G(xi) - G(eps) - G'(eps)(xi - eps)."""
    arr = _complex_array(xi)
    value = np.asarray(g_function(u, arr)) - g_function(u, eps) - g_prime(u, eps) * (arr - eps)
    return _unwrap(value, xi)


def s_factor(n: int, xi: ArrayLike) -> ArrayLike:
    """S(n; xi) = [xi / sin xi * (1 - xi / pi)]^n; S(n; 0) = 1."""
    arr = _complex_array(xi)
    _check_real_axis_poles(arr, "S")
    ratio = np.empty_like(arr)
    small = np.abs(arr) < SERIES_RADIUS
    ratio[small] = _poly_even(arr[small], _X_OVER_SIN)
    rest = arr[~small]
    ratio[~small] = rest / np.sin(rest)
    return _unwrap((ratio * (1.0 - arr / math.pi)) ** n, xi)


def phase_offset(u: float, v: complex, eps: complex, xi: ArrayLike) -> ArrayLike:
    """phi(u, v; i(pi - xi)) - phi(u, v; i(pi - eps)) without the large cancelling pi*v terms."""
    arr = _complex_array(xi)
    value = (
        (arr - eps) * v
        + 0.25 * math.pi * u * (1.0 / arr - 1.0 / eps)
        + np.asarray(g_function(u, arr))
        - g_function(u, eps)
    )
    return _unwrap(value, xi)
