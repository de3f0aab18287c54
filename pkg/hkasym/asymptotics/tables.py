"""Numerical witnesses of the large-v asymptotics.

``ratio_table`` compares the kernel with its leading-order approximation
over a v grid; the remaining checks measure the identities satisfied by the
approximation q itself.
"""

import logging
import math
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Optional

import numpy as np
from scipy import integrate

from ..config import Config
from ..errors import DomainError, QuadratureStallError, StepSizeError
from ..kernel import KernelParams, evaluate
from ..specfun.distance import theta_eps
from ..specfun.scaled import ScaledValue
from .theorem import b_asymp, q_theorem

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RatioRow:
    """One v of a ratio table."""

    v: float
    p_value: ScaledValue
    q_value: ScaledValue
    ratio: float
    abs_dev: float

    def as_dict(self) -> dict[str, Any]:
        return {
            "v": self.v,
            "p_log": self.p_value.log_abs(),
            "q_log": self.q_value.log_abs(),
            "ratio": self.ratio,
            "abs_dev": self.abs_dev,
        }


def approximation(n: int, m: int, u: float, v: float, config: Optional[Config] = None) -> ScaledValue:
    """q(n, m; u, v) for u > 0, b_asymp for u = 0."""
    config = config or Config()
    if u == 0:
        return b_asymp(n, m, v)
    return q_theorem(n, m, u, v, branch=config.branch).value


def _row(n: int, m: int, u: float, v: float, config: Config) -> RatioRow:
    p = evaluate(KernelParams(n, m, u, v), config.quadrature, branch=config.branch)
    q = approximation(n, m, u, v, config)
    ratio = float(np.real(p.ratio(q)))
    logger.debug("ratio (n=%d, m=%d, u=%g, v=%g) = %.12g", n, m, u, v, ratio)
    return RatioRow(v=v, p_value=p, q_value=q, ratio=ratio, abs_dev=abs(ratio - 1.0))


def ratio_table(
    n: int, m: int, u: float, v_grid: Sequence[float], config: Optional[Config] = None
) -> list[RatioRow]:
    """Rows (v, p, q, p/q, |p/q - 1|) over an ascending v grid.

    p comes from the routing evaluator; grid points are evaluated in parallel
    with at most ``config.worker_count()`` threads.

    Raises:
        DomainError: if the grid is empty or not strictly ascending
    """
    config = config or Config()
    grid = [float(v) for v in v_grid]
    if not grid:
        raise DomainError("v grid is empty")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise DomainError(f"v grid must be strictly ascending, got {grid}")
    if u < 0:
        raise DomainError(f"u must be >= 0, got {u}")

    with ThreadPoolExecutor(max_workers=config.worker_count()) as pool:
        return list(pool.map(lambda v: _row(n, m, u, v, config), grid))


@dataclass(frozen=True)
class LogDerivativeCheck:
    """d/dv log q against -theta at one v."""

    v: float
    derivative: float
    theta: float
    eps: float
    residual: float
    bound: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.bound


def _log_q(n: int, m: int, u: float, v: float, config: Config) -> float:
    return q_theorem(n, m, u, v, branch=config.branch).value.log_abs()


def log_derivative_check(
    n: int, m: int, u: float, v: float, rel_step: float = 1e-4, config: Optional[Config] = None
) -> LogDerivativeCheck:
    """Compare d/dv log q(n, m; u, v) with -theta; the residual should be O(1/v + |eps|).

    Centered differences at steps h and 2h, h = rel_step * v.

    Raises:
        StepSizeError: if the two differences disagree beyond 1e-6
    """
    config = config or Config()
    h = rel_step * v

    def centered(step: float) -> float:
        return (_log_q(n, m, u, v + step, config) - _log_q(n, m, u, v - step, config)) / (2.0 * step)

    d_h, d_2h = centered(h), centered(2.0 * h)
    if abs(d_h - d_2h) > 1e-6 * max(1.0, abs(d_h)):
        raise StepSizeError(f"log-derivative differences disagree at v={v}: {d_h} vs {d_2h}")
    te = theta_eps(u, v, branch=config.branch)
    residual = abs(d_h + te.theta)
    return LogDerivativeCheck(
        v=v,
        derivative=d_h,
        theta=te.theta,
        eps=te.eps,
        residual=residual,
        bound=10.0 * (1.0 / v + abs(te.eps)),
    )


def exponential_ratio_check(
    n: int,
    m: int,
    u: float,
    v: float,
    span: float = 5.0,
    samples: int = 11,
    config: Optional[Config] = None,
) -> list[tuple[float, float]]:
    """Pairs (s, q(s) / q(v) * exp(pi (s - v))) for s in [v, v + span]."""
    config = config or Config()
    base = q_theorem(n, m, u, v, branch=config.branch).value
    out = []
    for s in np.linspace(v, v + span, samples):
        q = q_theorem(n, m, u, float(s), branch=config.branch).value
        out.append((float(s), float((q / base).scale_log(math.pi * (s - v)).to_number())))
    return out


def even_reduction_check(n: int, k: int, u: float, v: float, config: Optional[Config] = None) -> float:
    """2 int_v^inf h (h^2 - v^2)^(-1/2) q(n, 2k+1; u, h) dh / (sqrt(2v) q(n, 2k+1; u, v)).

    Tends to 1 as v grows.
    """
    config = config or Config()
    m = 2 * k + 1
    base = q_theorem(n, m, u, v, branch=config.branch).value

    def relative(w: float) -> float:
        q = q_theorem(n, m, u, v * math.cosh(w), branch=config.branch).value
        return math.cosh(w) * float((q / base).to_number())

    margin = config.quadrature.truncation_margin
    width = math.acosh(1.0 + margin / (math.pi * v))
    while relative(width) > math.exp(-margin):
        width *= 1.25
    value, abserr = integrate.quad(relative, 0.0, width, epsabs=0.0, epsrel=1e-10, limit=200)
    if abserr > config.quadrature.stall_tol * abs(value):
        raise QuadratureStallError(f"even_reduction_check integral did not settle (error {abserr:.3g})")
    return math.sqrt(2.0 * v) * value
