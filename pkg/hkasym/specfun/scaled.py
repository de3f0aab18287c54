"""Log-scaled numbers that survive magnitudes like exp(-500 pi)."""

import cmath
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

Number = Union[int, float, complex]

LN2 = math.log(2.0)


def _normalize(mantissa: complex, log_scale: float) -> tuple[complex, float]:
    """Bring |mantissa| into [0.5, 1) by moving powers of two into log_scale."""
    if mantissa == 0:
        return 0.0, 0.0
    if not np.isfinite(mantissa):
        raise OverflowError(f"cannot scale non-finite mantissa {mantissa!r}")
    _, exponent = np.frexp(abs(mantissa))
    shifted = mantissa * math.ldexp(1.0, -int(exponent))
    return shifted, log_scale + int(exponent) * LN2


@dataclass(frozen=True)
class ScaledValue:
    """A real or complex number stored as mantissa * exp(log_scale).

    Construct through ``ScaledValue.of`` or ``ScaledValue.from_log``; both
    renormalize so that 0.5 <= |mantissa| < 1 (zero is (0, 0)).
    """

    mantissa: Number
    log_scale: float

    @classmethod
    def of(cls, value: Number, log_scale: float = 0.0) -> "ScaledValue":
        """Wrap value * exp(log_scale)."""
        if isinstance(value, ScaledValue):
            return value.scale_log(log_scale)
        value = complex(value) if isinstance(value, (complex, np.complexfloating)) else float(value)
        mantissa, scale = _normalize(value, float(log_scale))
        return cls(mantissa, scale)

    @classmethod
    def from_log(cls, log_value: Number) -> "ScaledValue":
        """Build exp(log_value); a complex log contributes a phase."""
        if isinstance(log_value, (complex, np.complexfloating)) and log_value.imag != 0:
            return cls.of(cmath.exp(1j * log_value.imag), log_value.real)
        return cls.of(1.0, float(np.real(log_value)))

    @classmethod
    def zero(cls) -> "ScaledValue":
        return cls(0.0, 0.0)

    @property
    def is_zero(self) -> bool:
        return self.mantissa == 0

    @property
    def is_real(self) -> bool:
        return not isinstance(self.mantissa, complex)

    def log(self) -> complex:
        """Natural log (principal branch)."""
        if self.is_zero:
            raise ValueError("log of zero")
        return cmath.log(self.mantissa) + self.log_scale

    def log_abs(self) -> float:
        """log|value|, finite for every non-zero value."""
        if self.is_zero:
            return -math.inf
        return math.log(abs(self.mantissa)) + self.log_scale

    def scale_log(self, shift: float) -> "ScaledValue":
        """Multiply by exp(shift)."""
        if self.is_zero:
            return self
        return ScaledValue.of(self.mantissa, self.log_scale + shift)

    def to_number(self) -> Number:
        """Plain float/complex; underflows to 0 and overflows to inf."""
        if self.is_zero:
            return self.mantissa
        if self.log_scale > 709.0:
            return self.mantissa * math.inf
        return self.mantissa * math.exp(self.log_scale)

    def __float__(self) -> float:
        return float(np.real(self.to_number()))

    def __complex__(self) -> complex:
        return complex(self.to_number())

    @property
    def real(self) -> "ScaledValue":
        return ScaledValue.of(float(np.real(self.mantissa)), self.log_scale)

    @property
    def imag(self) -> "ScaledValue":
        return ScaledValue.of(float(np.imag(self.mantissa)), self.log_scale)

    def conjugate(self) -> "ScaledValue":
        return ScaledValue(np.conj(self.mantissa) if not self.is_real else self.mantissa, self.log_scale)

    def __abs__(self) -> "ScaledValue":
        return ScaledValue.of(abs(self.mantissa), self.log_scale)

    def __neg__(self) -> "ScaledValue":
        return ScaledValue(-self.mantissa, self.log_scale)

    def __mul__(self, other: Union["ScaledValue", Number]) -> "ScaledValue":
        other = _coerce(other)
        if self.is_zero or other.is_zero:
            return ScaledValue.zero()
        return ScaledValue.of(self.mantissa * other.mantissa, self.log_scale + other.log_scale)

    __rmul__ = __mul__

    def __truediv__(self, other: Union["ScaledValue", Number]) -> "ScaledValue":
        other = _coerce(other)
        if other.is_zero:
            raise ZeroDivisionError("ScaledValue division by zero")
        if self.is_zero:
            return ScaledValue.zero()
        return ScaledValue.of(self.mantissa / other.mantissa, self.log_scale - other.log_scale)

    def __rtruediv__(self, other: Number) -> "ScaledValue":
        return _coerce(other) / self

    def __add__(self, other: Union["ScaledValue", Number]) -> "ScaledValue":
        other = _coerce(other)
        if other.is_zero:
            return self
        if self.is_zero:
            return other
        top = max(self.log_scale, other.log_scale)
        total = self.mantissa * math.exp(self.log_scale - top) + other.mantissa * math.exp(other.log_scale - top)
        return ScaledValue.of(total, top)

    __radd__ = __add__

    def __sub__(self, other: Union["ScaledValue", Number]) -> "ScaledValue":
        return self + (-_coerce(other))

    def __rsub__(self, other: Number) -> "ScaledValue":
        return _coerce(other) - self

    def __pow__(self, exponent: float) -> "ScaledValue":
        if self.is_zero:
            if exponent > 0:
                return self
            raise ZeroDivisionError("zero to a non-positive power")
        return ScaledValue.from_log(exponent * self.log())

    def ratio(self, other: "ScaledValue") -> Number:
        """self / other as a plain number (the common case for diagnostics)."""
        return (self / other).to_number()

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        if abs(self.log_scale) < 700:
            return f"{self.to_number():.16g}"
        return f"{self.mantissa:.16g}*exp({self.log_scale:.16g})"


def _coerce(value: Union[ScaledValue, Number]) -> ScaledValue:
    if isinstance(value, ScaledValue):
        return value
    return ScaledValue.of(value)
