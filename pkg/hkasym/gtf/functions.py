"""Catalog of analytic test functions on sectors around the positive axis.

All logs and powers use principal branches, which are analytic on any sector
|arg z| < theta0 < pi. Functions evaluate elementwise on numpy arrays.
"""

import copy
from abc import ABC, abstractmethod
from collections.abc import Callable
from typing import Optional, Union

import numpy as np

from ..errors import DomainError

ComplexArray = Union[complex, np.ndarray]


def _cpow(z: np.ndarray, power: complex) -> np.ndarray:
    if power == 0:
        return np.ones_like(z)
    return np.power(z, power)


def _as_complex(z: ComplexArray) -> np.ndarray:
    return np.asarray(z, dtype=complex)


def _unwrap(values: np.ndarray, like: ComplexArray) -> ComplexArray:
    if np.ndim(like) == 0:
        return complex(values[()])
    return values


class AnalyticFunctionSpec(ABC):
    """An analytic function g, optionally with a closed-form derivative.

    Every spec carries a complex coefficient so that c * g is represented
    without wrapping.
    """

    def __init__(self, coefficient: complex = 1.0):
        if coefficient == 0:
            raise DomainError("coefficient must be non-zero")
        self.coefficient = complex(coefficient)

    @property
    @abstractmethod
    def kind(self) -> str:
        """Catalog name of the function family."""
        pass

    @abstractmethod
    def _value(self, z: np.ndarray) -> np.ndarray:
        pass

    def _derivative(self, z: np.ndarray) -> Optional[np.ndarray]:
        return None

    @property
    def has_derivative(self) -> bool:
        return True

    def value(self, z: ComplexArray) -> ComplexArray:
        arr = _as_complex(z)
        return _unwrap(self.coefficient * self._value(arr), z)

    def derivative(self, z: ComplexArray) -> ComplexArray:
        """Exact g'(z).

        Raises:
            NotImplementedError: if the spec has no closed-form derivative
        """
        arr = _as_complex(z)
        out = self._derivative(arr)
        if out is None:
            raise NotImplementedError(f"{self.kind} has no closed-form derivative")
        return _unwrap(self.coefficient * out, z)

    def log_abs_value(self, z: ComplexArray) -> np.ndarray:
        """log|g(z)|; subclasses override when |g| can overflow."""
        with np.errstate(divide="ignore"):
            return np.log(np.abs(self.coefficient * self._value(_as_complex(z))))

    def log_abs_derivative(self, z: ComplexArray) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return np.log(np.abs(_as_complex(self.derivative(z))))

    def scaled(self, factor: complex) -> "AnalyticFunctionSpec":
        """The same function multiplied by a non-zero constant."""
        if factor == 0:
            raise DomainError("coefficient must be non-zero")
        clone = copy.copy(self)
        clone.coefficient = self.coefficient * complex(factor)
        return clone

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.describe()})"

    def describe(self) -> str:
        return f"coefficient={self.coefficient}"


class PowerLog(AnalyticFunctionSpec):
    """z^alpha log^beta z."""

    def __init__(self, alpha: complex, beta: complex = 0.0, coefficient: complex = 1.0):
        super().__init__(coefficient)
        self.alpha = complex(alpha)
        self.beta = complex(beta)

    @property
    def kind(self) -> str:
        return "power_log"

    def _value(self, z: np.ndarray) -> np.ndarray:
        return _cpow(z, self.alpha) * _cpow(np.log(z), self.beta)

    def _derivative(self, z: np.ndarray) -> np.ndarray:
        if self.beta == 0:
            if self.alpha == 0:
                return np.zeros_like(z)
            return self.alpha * _cpow(z, self.alpha - 1)
        log_z = np.log(z)
        return _cpow(z, self.alpha - 1) * _cpow(log_z, self.beta - 1) * (self.alpha * log_z + self.beta)

    def log_abs_value(self, z: ComplexArray) -> np.ndarray:
        arr = _as_complex(z)
        log_z = np.log(arr)
        out = np.full(arr.shape, np.log(abs(self.coefficient)))
        if self.alpha != 0:
            out = out + np.real(self.alpha * log_z)
        if self.beta != 0:
            out = out + np.real(self.beta * np.log(log_z))
        return out

    def describe(self) -> str:
        return f"alpha={self.alpha}, beta={self.beta}, coefficient={self.coefficient}"


class PowerExp(AnalyticFunctionSpec):
    """z^alpha exp(beta z^gamma) with beta != 0 and Re gamma > 0."""

    def __init__(self, alpha: complex, beta: complex, gamma: complex, coefficient: complex = 1.0):
        super().__init__(coefficient)
        if beta == 0:
            raise DomainError("power_exp needs beta != 0")
        if complex(gamma).real <= 0:
            raise DomainError(f"power_exp needs Re gamma > 0, got gamma={gamma}")
        self.alpha = complex(alpha)
        self.beta = complex(beta)
        self.gamma = complex(gamma)

    @property
    def kind(self) -> str:
        return "power_exp"

    def _value(self, z: np.ndarray) -> np.ndarray:
        return _cpow(z, self.alpha) * np.exp(self.beta * _cpow(z, self.gamma))

    def _derivative(self, z: np.ndarray) -> np.ndarray:
        inner = self.beta * self.gamma * _cpow(z, self.alpha + self.gamma - 1)
        if self.alpha != 0:
            inner = inner + self.alpha * _cpow(z, self.alpha - 1)
        return inner * np.exp(self.beta * _cpow(z, self.gamma))

    def log_abs_value(self, z: ComplexArray) -> np.ndarray:
        arr = _as_complex(z)
        out = np.log(abs(self.coefficient)) + np.real(self.beta * _cpow(arr, self.gamma))
        if self.alpha != 0:
            out = out + np.real(self.alpha * np.log(arr))
        return out

    def log_abs_derivative(self, z: ComplexArray) -> np.ndarray:
        arr = _as_complex(z)
        inner = self.beta * self.gamma * _cpow(arr, self.alpha + self.gamma - 1)
        if self.alpha != 0:
            inner = inner + self.alpha * _cpow(arr, self.alpha - 1)
        with np.errstate(divide="ignore"):
            return (
                np.log(abs(self.coefficient))
                + np.log(np.abs(inner))
                + np.real(self.beta * _cpow(arr, self.gamma))
            )

    def describe(self) -> str:
        return f"alpha={self.alpha}, beta={self.beta}, gamma={self.gamma}, coefficient={self.coefficient}"


class PlainLog(AnalyticFunctionSpec):
    """log z, the standard example of a function that is not a good test function."""

    @property
    def kind(self) -> str:
        return "plain_log"

    def _value(self, z: np.ndarray) -> np.ndarray:
        return np.log(z)

    def _derivative(self, z: np.ndarray) -> np.ndarray:
        return 1.0 / z


class LogPlusSin(AnalyticFunctionSpec):
    """log z + sin(log z): asymptotic to log z, but its derivative is not asymptotic to 1/z."""

    @property
    def kind(self) -> str:
        return "log_plus_sin"

    def _value(self, z: np.ndarray) -> np.ndarray:
        log_z = np.log(z)
        return log_z + np.sin(log_z)

    def _derivative(self, z: np.ndarray) -> np.ndarray:
        return (1.0 + np.cos(np.log(z))) / z


class UserFunction(AnalyticFunctionSpec):
    """A user-supplied vectorized callable, optionally with its derivative.

    Callbacks may be invoked from several threads at once during scans.
    """

    def __init__(
        self,
        func: Callable[[np.ndarray], np.ndarray],
        derivative: Optional[Callable[[np.ndarray], np.ndarray]] = None,
        name: str = "user",
        coefficient: complex = 1.0,
    ):
        super().__init__(coefficient)
        self.func = func
        self.deriv = derivative
        self.name = name

    @property
    def kind(self) -> str:
        return "user"

    @property
    def has_derivative(self) -> bool:
        return self.deriv is not None

    def _value(self, z: np.ndarray) -> np.ndarray:
        return np.asarray(self.func(z), dtype=complex)

    def _derivative(self, z: np.ndarray) -> Optional[np.ndarray]:
        if self.deriv is None:
            return None
        return np.asarray(self.deriv(z), dtype=complex)

    def describe(self) -> str:
        return f"name={self.name}, coefficient={self.coefficient}"


CATALOG = ("power_log", "power_exp", "plain_log", "log_plus_sin")


def get_function(
    name: str,
    alpha: complex = 0.0,
    beta: complex = 0.0,
    gamma: complex = 1.0,
    coefficient: complex = 1.0,
) -> AnalyticFunctionSpec:
    """Build a catalog function by name."""
    name = name.lower().replace("-", "_")
    if name == "power_log":
        return PowerLog(alpha, beta, coefficient=coefficient)
    elif name == "power_exp":
        return PowerExp(alpha, beta, gamma, coefficient=coefficient)
    elif name == "plain_log":
        return PlainLog(coefficient=coefficient)
    elif name == "log_plus_sin":
        return LogPlusSin(coefficient=coefficient)
    else:
        raise DomainError(f"Unknown function: {name}; expected one of {', '.join(CATALOG)}")
