"""Dimension recurrences in m and the routing evaluator built on them.

Two identities move between center dimensions:

    d/dv p(n, m; u, v) = -2 pi v p(n, m + 2; u, v)
    p(n, m; u, v) = 2 int_v^inf h (h^2 - v^2)^(-1/2) p(n, m + 1; u, h) dh

``evaluate`` combines them with the direct and contour routes so that every
(n, m) is reachable for large v: m = 1 from the contour, odd m by repeated
differentiation, even m by integrating the next odd m.
"""

import logging
import math
from typing import Optional

import numpy as np

from ..config import BranchConfig, QuadratureConfig
from ..errors import DomainError, QuadratureStallError, StepSizeError
from ..specfun.scaled import ScaledValue
from .contour import p_contour
from .direct import p_direct
from .params import KernelParams
from .quadrature import panel_integrate

logger = logging.getLogger(__name__)

ROUTES = ("auto", "direct", "contour")

KEY2_ORDER = 16
KEY2_MAX_PANELS = 64
KEY2_WIDEN = 1.25
KEY2_MAX_WIDEN = 40


def evaluate(
    params: KernelParams,
    cfg: Optional[QuadratureConfig] = None,
    route: str = "auto",
    branch: Optional[BranchConfig] = None,
) -> ScaledValue:
    """p(n, m; u, v) by the best available route.

    auto picks the direct quadrature up to direct_v_max; above it m = 1 goes
    to the contour, odd m > 1 to derive_m_plus_2 from m - 2 and even m to
    integrate_key2 from m + 1.

    Raises:
        DomainError: for an unknown route, the contour route with m > 1, or an unsupported regime
    """
    cfg = cfg or QuadratureConfig()
    if route not in ROUTES:
        raise DomainError(f"unknown route {route!r}; expected one of {', '.join(ROUTES)}")
    params.check_strip(cfg)

    if route == "direct":
        return p_direct(params, cfg)

    v = complex(params.v)
    if v.real < 0:
        # p is even in v
        v = -v
    if route == "contour":
        if params.m != 1:
            raise DomainError("contour route requires m = 1")
        return p_contour(params.n, params.u, v, cfg=cfg, branch=branch)

    if v.real <= cfg.direct_v_max:
        return p_direct(params, cfg)
    if params.m == 1:
        return p_contour(params.n, params.u, v, cfg=cfg, branch=branch)
    if params.m % 2 == 1:
        return derive_m_plus_2(params.n, params.m - 2, params.u, v.real, cfg=cfg, branch=branch)
    return integrate_key2(params.n, params.m, params.u, v.real, cfg=cfg, branch=branch)


def default_step(v: float) -> float:
    """Finite-difference step max(1e-3, 1e-2 / v)."""
    return max(1e-3, 1e-2 / v)


def derive_m_plus_2(
    n: int,
    m: int,
    u: float,
    v: float,
    h: Optional[float] = None,
    cfg: Optional[QuadratureConfig] = None,
    rel_tol: Optional[float] = None,
    branch: Optional[BranchConfig] = None,
) -> ScaledValue:
    """p(n, m + 2; u, v) = -(1 / (2 pi v)) d/dv p(n, m; u, v).

    The derivative is taken of r(v') = p(v') / p(v) * exp(pi (v' - v)), which
    removes the exp(-pi v) trend, with a fourth-order central difference.
    The same difference at step 2h gives the Richardson error estimate.

    Raises:
        DomainError: if v <= 4h
        StepSizeError: if the truncation estimate exceeds rel_tol relative to d/dv log p
    """
    cfg = cfg or QuadratureConfig()
    rel_tol = cfg.recurrence_rel_tol if rel_tol is None else rel_tol
    h = default_step(v) if h is None else h
    if h <= 0 or v - 4.0 * h <= 0:
        raise DomainError(f"derive_m_plus_2 needs v > 4h > 0, got v={v}, h={h}")

    base = KernelParams(n, m, u, v)
    center = evaluate(base, cfg, branch=branch)
    r = {}
    for k in (-4, -2, -1, 1, 2, 4):
        shifted = evaluate(base.with_v(v + k * h), cfg, branch=branch)
        r[k] = float(np.real((shifted / center).to_number())) * math.exp(math.pi * k * h)

    d_h = (r[-2] - 8.0 * r[-1] + 8.0 * r[1] - r[2]) / (12.0 * h)
    d_2h = (r[-4] - 8.0 * r[-2] + 8.0 * r[2] - r[4]) / (24.0 * h)
    truncation = abs(d_h - d_2h) / 15.0
    log_derivative = d_h + (d_h - d_2h) / 15.0 - math.pi
    if truncation > rel_tol * abs(log_derivative):
        raise StepSizeError(
            f"step h={h:g} too large at v={v:g}: truncation estimate {truncation:.3g} "
            f"exceeds {rel_tol:g} * |d log p / dv| = {rel_tol * abs(log_derivative):.3g}"
        )
    logger.debug("derive_m_plus_2 (n=%d, m=%d, u=%g, v=%g): d log p/dv = %.12g", n, m, u, v, log_derivative)
    return center * (-log_derivative / (2.0 * math.pi * v))


def _relaxed(cfg: QuadratureConfig, v: float) -> QuadratureConfig:
    # Points past direct_v_max only need accuracy relative to p(v), which the
    # direct route still delivers when v itself is in its range.
    if v <= cfg.direct_v_max:
        return cfg.model_copy(update={"direct_v_max": math.inf})
    return cfg


def _log_envelope(power: float, u: float, v: float, w: float) -> float:
    # log of cosh(w)^power exp(-pi v (cosh w - 1) + sqrt(pi u v cosh w)), a bound on the integrand ratio
    c = math.cosh(w)
    return power * math.log(c) - math.pi * v * (c - 1.0) + math.sqrt(math.pi * u * v * c)


def integrate_key2(
    n: int,
    m: int,
    u: float,
    v: float,
    cfg: Optional[QuadratureConfig] = None,
    branch: Optional[BranchConfig] = None,
) -> ScaledValue:
    """p(n, m; u, v) from p(n, m + 1; u, .) by the integral identity.

    With h = v cosh w the integral becomes 2 v int_0^W cosh w p(n, m + 1; u, v cosh w) dw,
    free of the endpoint singularity. W grows until the integrand has fallen
    truncation_margin e-folds below its value at w = 0. When v is inside the
    direct range the tail values are only accurate relative to p(v), so W is
    taken from the decay envelope instead of from computed values.

    Raises:
        DomainError: if v <= 0
        QuadratureStallError: if the Gauss-Legendre refinement does not settle
    """
    cfg = cfg or QuadratureConfig()
    if v <= 0:
        raise DomainError(f"integrate_key2 needs v > 0, got {v}")
    inner_cfg = _relaxed(cfg, v)
    upper = KernelParams(n, m + 1, u, v)
    center = evaluate(upper, inner_cfg, branch=branch)

    def log_integrand(w: float) -> float:
        value = evaluate(upper.with_v(v * math.cosh(w)), inner_cfg, branch=branch)
        return math.log(math.cosh(w)) + (value / center).log_abs()

    margin = cfg.truncation_margin
    width = math.acosh(1.0 + margin / (math.pi * v))
    relaxed = inner_cfg is not cfg
    for _ in range(KEY2_MAX_WIDEN):
        if relaxed and _log_envelope(n + m + 1, u, v, width) <= -margin:
            break
        if not relaxed and log_integrand(width) <= -margin:
            break
        width *= KEY2_WIDEN
    else:
        raise QuadratureStallError(f"integrate_key2 could not bound the tail at v={v:g}")

    def integrand(w: np.ndarray) -> np.ndarray:
        out = np.empty_like(w)
        for i, wi in enumerate(w):
            value = evaluate(upper.with_v(v * math.cosh(wi)), inner_cfg, branch=branch)
            out[i] = math.cosh(wi) * float(np.real((value / center).to_number()))
        return out

    tol = max(cfg.rel_tol, 1e-3 * cfg.recurrence_rel_tol)
    key2_cfg = cfg.model_copy(update={"rel_tol": tol, "max_panels": KEY2_MAX_PANELS})
    panel_width = 2.0 / math.sqrt(math.pi * v)
    result = panel_integrate(integrand, 0.0, width, panel_width, key2_cfg, label="integrate_key2", order=KEY2_ORDER)
    logger.debug("integrate_key2 (n=%d, m=%d, u=%g, v=%g): W=%.4g, %d panels", n, m, u, v, width, result.nodes)
    return center * (2.0 * v * float(result.value))


def heat_kernel(
    z_sq: float,
    t_abs: float,
    h: float,
    n: int,
    m: int,
    cfg: Optional[QuadratureConfig] = None,
    route: str = "auto",
    branch: Optional[BranchConfig] = None,
) -> ScaledValue:
    """p_h(z, t) = h^-(n + m) p(n, m; |z|^2 / h, |t| / h)."""
    if h <= 0:
        raise DomainError(f"h must be > 0, got {h}")
    if z_sq < 0 or t_abs < 0:
        raise DomainError(f"|z|^2 and |t| must be >= 0, got {z_sq}, {t_abs}")
    value = evaluate(KernelParams(n, m, z_sq / h, t_abs / h), cfg, route=route, branch=branch)
    return value.scale_log(-(n + m) * math.log(h))
