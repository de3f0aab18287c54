"""Parameters of the reduced heat kernel p(n, m; u, v)."""

from dataclasses import dataclass
from typing import Optional

from ..config import QuadratureConfig
from ..errors import DomainError
from ..specfun.scaled import Number


@dataclass(frozen=True)
class KernelParams:
    """Point (n, m; u, v) at which p is evaluated.

    n is half the horizontal dimension, m the center dimension, u = |z|^2 / h
    and v = |t| / h. Complex v is only meaningful for m = 1, where p extends
    analytically to a strip |Im v| < delta.
    """

    n: int
    m: int
    u: float
    v: Number

    def __post_init__(self) -> None:
        if self.n < 1 or self.m < 1:
            raise DomainError(f"n and m must be >= 1, got n={self.n}, m={self.m}")
        if self.u < 0:
            raise DomainError(f"u must be >= 0, got {self.u}")
        if self.is_complex and self.m != 1:
            raise DomainError(f"complex v requires m = 1, got m={self.m}")

    @property
    def is_complex(self) -> bool:
        return isinstance(self.v, complex) and self.v.imag != 0

    @property
    def regime(self) -> str:
        return "u_zero" if self.u == 0 else "u_positive"

    def check_strip(self, cfg: Optional[QuadratureConfig] = None) -> None:
        """Reject complex v outside the analyticity strip."""
        cfg = cfg or QuadratureConfig()
        if self.is_complex and abs(self.v.imag) >= cfg.strip_delta:
            raise DomainError(f"|Im v| must be < {cfg.strip_delta}, got {self.v.imag}")

    def with_v(self, v: Number) -> "KernelParams":
        return KernelParams(self.n, self.m, self.u, v)

    def with_m(self, m: int) -> "KernelParams":
        return KernelParams(self.n, m, self.u, self.v)
