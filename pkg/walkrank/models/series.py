from dataclasses import dataclass, replace
from typing import Callable, Optional
import enum
import math

import numpy as np

from walkrank.core.config import settings
from walkrank.core.exceptions import DomainError, InvalidInputError, TruncationError


class SeriesKind(str, enum.Enum):
    EXPONENTIAL = "exponential"
    RESOLVENT = "resolvent"
    CUSTOM = "custom"


class ClassTag(str, enum.Enum):
    # entire functions
    P_INFINITY = "P_infinity"
    # finite radius, series diverges at the radius
    P_SUP_INFINITY = "P_sup_infinity"
    P_ONLY = "P_only"


def _exp_coefficient(k: int) -> float:
    return math.exp(-math.lgamma(k + 1))


def _unit_coefficient(k: int) -> float:
    return 1.0


@dataclass(frozen=True)
class SeriesFunction:
    """
    Power series f(z) = sum_k c_k z^k with strictly positive coefficients.

    ``order`` selects the tail of the series: the function with coefficients
    c_{k+order} / c_order. Order 0 is f itself.
    """

    kind: SeriesKind
    base_coefficient: Callable[[int], float]
    radius: float
    class_tag: ClassTag
    name: str
    order: int = 0

    @classmethod
    def exponential(cls) -> "SeriesFunction":
        return cls(SeriesKind.EXPONENTIAL, _exp_coefficient, math.inf, ClassTag.P_INFINITY, "exp")

    @classmethod
    def resolvent(cls) -> "SeriesFunction":
        return cls(SeriesKind.RESOLVENT, _unit_coefficient, 1.0, ClassTag.P_SUP_INFINITY, "resolvent")

    @classmethod
    def custom(
        cls,
        coefficients: Callable[[int], float],
        radius: float,
        class_tag: ClassTag,
        name: str = "custom",
    ) -> "SeriesFunction":
        """
        Wrap a user coefficient map ``k -> c_k``.

        The map must be stateless. Radius and class tag are declared by the caller;
        divergence at the radius is not checked.
        """
        if not radius > 0:
            raise InvalidInputError("series radius must be positive")
        return cls(SeriesKind.CUSTOM, coefficients, float(radius), ClassTag(class_tag), name)

    def shifted(self, m: int) -> "SeriesFunction":
        if m < 0:
            raise InvalidInputError("series order must be nonnegative")
        return replace(self, order=self.order + m)

    def coefficient(self, k: int) -> float:
        if self.kind == SeriesKind.RESOLVENT:
            return 1.0
        if self.kind == SeriesKind.EXPONENTIAL:
            m = self.order
            return math.exp(math.lgamma(m + 1) - math.lgamma(k + m + 1))
        c = self._base(k + self.order)
        return c / self._base(self.order) if self.order else c

    def ratio(self, k: int) -> float:
        """c_k / c_{k-1} for k >= 1, the factor of the term recurrence."""
        if self.kind == SeriesKind.RESOLVENT:
            return 1.0
        if self.kind == SeriesKind.EXPONENTIAL:
            return 1.0 / (k + self.order)
        j = k + self.order
        return self._base(j) / self._base(j - 1)

    def _base(self, j: int) -> float:
        c = float(self.base_coefficient(j))
        if not c > 0 or not math.isfinite(c):
            raise InvalidInputError(f"series coefficient c_{j} must be positive and finite")
        return c

    def evaluate(self, x, tol: Optional[float] = None) -> np.ndarray:
        """Scalar evaluation, vectorised over ``x``."""
        x = np.asarray(x, dtype=float)
        if self.kind == SeriesKind.RESOLVENT:
            if np.any(x >= 1.0):
                raise DomainError("resolvent is undefined for arguments >= 1", bound=1.0)
            return 1.0 / (1.0 - x)
        if self.kind == SeriesKind.EXPONENTIAL:
            return self._exp_tail(x)
        if np.any(np.abs(x) >= self.radius):
            raise DomainError(
                f"argument outside the radius of convergence {self.radius}", bound=self.radius
            )
        return self._scalar_series(x, tol)

    def log_evaluate(self, x, tol: Optional[float] = None) -> np.ndarray:
        """log f(x); finite for exponential arguments whose value would overflow."""
        x = np.asarray(x, dtype=float)
        if self.kind != SeriesKind.EXPONENTIAL:
            return np.log(self.evaluate(x, tol))
        m = self.order
        if m == 0:
            return x.copy()
        out = np.empty_like(x)
        large = x > 0.5
        out[~large] = np.log(self._exp_tail(x[~large]))
        xl = x[large]
        poly = sum(xl**j * _exp_coefficient(j) for j in range(m))
        out[large] = math.lgamma(m + 1) - m * np.log(xl) + xl + np.log1p(-poly * np.exp(-xl))
        return out

    def _exp_tail(self, x: np.ndarray) -> np.ndarray:
        m = self.order
        if m == 0:
            return np.exp(x)
        out = np.empty_like(x)
        far = np.abs(x) > 0.5
        xf = x[far]
        if xf.size:
            poly = sum(xf**j * _exp_coefficient(j) for j in range(m))
            with np.errstate(over="ignore"):
                out[far] = math.factorial(m) * (np.exp(xf) - poly) / xf**m
        if (~far).any():
            out[~far] = self._scalar_series(x[~far], 1e-17)
        return out

    def _scalar_series(self, x: np.ndarray, tol: Optional[float]) -> np.ndarray:
        tol = settings.DEFAULT_TOL if tol is None else tol
        term = np.full_like(x, self.coefficient(0))
        acc = term.copy()
        small_run = 0
        for k in range(1, settings.SERIES_MAX_TERMS + 1):
            term = term * x * self.ratio(k)
            acc = acc + term
            if np.all(np.abs(term) <= tol * np.abs(acc)):
                small_run += 1
                if small_run >= 2:
                    return acc
            else:
                small_run = 0
        bound = float(np.max(np.abs(term)))
        raise TruncationError(
            f"scalar series did not reach tolerance within {settings.SERIES_MAX_TERMS} terms",
            bound=bound,
        )

    def __repr__(self):
        suffix = f", order={self.order}" if self.order else ""
        return f"SeriesFunction({self.name}, radius={self.radius}{suffix})"
