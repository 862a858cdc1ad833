from typing import Optional, Union
import logging
import math

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import LinearOperator, spsolve

from walkrank.core.config import settings
from walkrank.core.exceptions import (
    CapacityError,
    ConvergenceError,
    DomainError,
    InvalidInputError,
    TruncationError,
    UnsupportedOperationError,
)
from walkrank.models.graph import Graph
from walkrank.models.series import SeriesFunction, SeriesKind
from walkrank.services.spectral import spectral_service

logger = logging.getLogger(__name__)

Operator = Union[Graph, sp.spmatrix, LinearOperator]

# alpha * lambda1 at or above this is treated as the pole of the resolvent
RESOLVENT_POLE_MARGIN = 1e-9


def _operator(op: Operator, transpose: bool = False):
    if isinstance(op, Graph):
        return op.operator(transpose=transpose)
    if transpose:
        return op.T
    return op


def _norm_bound(op: Operator, norm_bound: Optional[float]) -> float:
    if norm_bound is not None:
        return float(norm_bound)
    if isinstance(op, LinearOperator):
        raise InvalidInputError("a norm bound is required for implicit operators")
    a = op.adjacency if isinstance(op, Graph) else sp.csr_matrix(op)
    if a.nnz == 0:
        return 0.0
    rows = np.asarray(abs(a).sum(axis=1)).max()
    cols = np.asarray(abs(a).sum(axis=0)).max()
    return float(min(rows, cols))


def _spectral_radius(op: Operator) -> float:
    if isinstance(op, Graph):
        return spectral_service.spectral_radius(op)
    if isinstance(op, LinearOperator):
        raise InvalidInputError("lambda1 must be given for implicit operators")
    a = sp.csr_matrix(op)
    directed = (abs(a - a.T) > 0).nnz > 0
    return spectral_service.spectral_radius(Graph(a, directed=directed, allow_loops=True))


class MatrixFunctionService:
    """Actions and diagonals of f(tA) for positive-coefficient series f."""

    def __init__(self, tol: Optional[float] = None, max_terms: Optional[int] = None):
        self._tol = tol
        self._max_terms = max_terms

    @property
    def tol(self) -> float:
        return self._tol or settings.DEFAULT_TOL

    @property
    def max_terms(self) -> int:
        return self._max_terms or settings.SERIES_MAX_TERMS

    @staticmethod
    def feasible_interval(f: SeriesFunction, lambda1: float) -> float:
        """t* = R_f / lambda1; infinite for entire functions."""
        if lambda1 < 0:
            raise DomainError("lambda1 must be nonnegative")
        if math.isinf(f.radius) or lambda1 == 0:
            return math.inf
        return f.radius / lambda1

    @classmethod
    def check_parameter(cls, f: SeriesFunction, t: float, lambda1: float, name: str = "t") -> float:
        """Raise DomainError unless 0 <= t < t*; returns t*."""
        t_star = cls.feasible_interval(f, lambda1)
        if t < 0 or not math.isfinite(t):
            raise DomainError(f"{name} must be nonnegative, got {t}", bound=0.0)
        if f.kind == SeriesKind.RESOLVENT and lambda1 > 0:
            if t * lambda1 >= 1.0 - RESOLVENT_POLE_MARGIN:
                raise DomainError(
                    f"{name} must be < 1/lambda1 = {1.0 / lambda1:.12g}, got {t}", bound=1.0 / lambda1
                )
        elif t >= t_star:
            raise DomainError(f"{name} must be < t* = {t_star:.12g}, got {t}", bound=t_star)
        return t_star

    def apply_series(
        self,
        f: SeriesFunction,
        t: float,
        op: Operator,
        v: np.ndarray,
        tol: Optional[float] = None,
        transpose: bool = False,
        order: int = 0,
        lambda1: Optional[float] = None,
    ) -> np.ndarray:
        """
        f(tA) v summed term by term.

        With ``order=m`` returns the series tail g(tA) A^m v, where g has the
        coefficients c_{k+m}/c_m. Stops once two consecutive terms and the
        geometric tail estimate are all below tol * ||acc||_1.
        """
        tol = tol or self.tol
        if not math.isinf(f.radius):
            if lambda1 is None:
                lambda1 = _spectral_radius(op)
            self.check_parameter(f, t, lambda1)
        elif t < 0:
            raise DomainError(f"t must be nonnegative, got {t}", bound=0.0)

        a = _operator(op, transpose)
        g = f.shifted(order)
        w = np.asarray(v, dtype=float).copy()
        for _ in range(order):
            w = a.dot(w)
        term = g.coefficient(0) * w
        acc = term.copy()
        if t == 0:
            return acc

        prev_norm = float(np.abs(term).sum())
        small_run = 0
        tail = math.inf
        for k in range(1, self.max_terms + 1):
            term = (g.ratio(k) * t) * a.dot(term)
            acc += term
            term_norm = float(np.abs(term).sum())
            acc_norm = float(np.abs(acc).sum())
            if not math.isfinite(acc_norm):
                raise TruncationError(f"series overflowed after {k} terms", bound=math.inf)

            rate = term_norm / prev_norm if prev_norm > 0 else 0.0
            tail = term_norm * rate / (1.0 - rate) if rate < 1.0 else math.inf
            prev_norm = term_norm

            if term_norm <= tol * acc_norm:
                small_run += 1
                if small_run >= 2 and tail <= tol * acc_norm:
                    logger.debug("Series %s converged after %d terms", g, k)
                    return acc
            else:
                small_run = 0

        raise TruncationError(
            f"series did not reach tolerance within {self.max_terms} terms (tail estimate {tail:.3e})",
            bound=tail,
        )

    def exp_action(
        self,
        beta: float,
        op: Operator,
        v: np.ndarray,
        tol: Optional[float] = None,
        transpose: bool = False,
        order: int = 0,
        normalize: bool = False,
        norm_bound: Optional[float] = None,
    ) -> np.ndarray:
        """
        e^{beta A} v by scaling: s steps of the Taylor series at beta/s.

        s is the smallest power of two with beta * bound / s <= 1, where the
        bound is min(max row sum, max column sum) or ``norm_bound``.
        ``normalize`` divides by a positive scalar (ranking-preserving).
        """
        tol = tol or self.tol
        if beta < 0 or not math.isfinite(beta):
            raise DomainError(f"beta must be nonnegative, got {beta}", bound=0.0)
        exp = SeriesFunction.exponential()
        bound = _norm_bound(op, norm_bound)

        s = 1
        while beta * bound / s > 1.0:
            s *= 2

        if s == 1 or beta == 0:
            x = self.apply_series(exp, beta, op, v, tol=tol, transpose=transpose, order=order)
            return x / np.abs(x).sum() if normalize else x

        a = _operator(op, transpose)
        x = np.asarray(v, dtype=float).copy()
        log_scale = 0.0
        for _ in range(s):
            x = self.apply_series(exp, beta / s, op, x, tol=tol, transpose=transpose)
            if normalize:
                norm = float(np.abs(x).sum())
                x /= norm
                log_scale += math.log(norm)
        logger.debug("exp_action beta=%g used %d scaling steps", beta, s)
        if order == 0:
            return x

        # tail = m!/beta^m (e^{beta A} - sum_{j<m} (beta A)^j / j!) v; no cancellation once beta*bound > 1
        term = np.asarray(v, dtype=float).copy()
        poly = np.zeros_like(term)
        for j in range(order):
            poly += term
            term = (beta / (j + 1)) * a.dot(term)
        poly *= math.exp(-log_scale)
        tail = (x - poly) * (math.factorial(order) / beta**order)
        return tail / np.abs(tail).sum() if normalize else tail

    def resolvent_solve(
        self,
        alpha: float,
        op: Operator,
        v: np.ndarray,
        tol: Optional[float] = None,
        transpose: bool = False,
        method: str = "auto",
        lambda1: Optional[float] = None,
        max_iter: Optional[int] = None,
    ) -> np.ndarray:
        """
        x = (I - alpha A)^{-1} v.

        Neumann iteration while alpha * lambda1 <= NEUMANN_MAX_RATE, a sparse
        direct solve above it (``method`` forces either).
        """
        tol = tol or self.tol
        max_iter = max_iter or settings.MAX_ITER
        v = np.asarray(v, dtype=float)
        if lambda1 is None:
            lambda1 = _spectral_radius(op)
        self.check_parameter(SeriesFunction.resolvent(), alpha, lambda1, name="alpha")
        if alpha == 0:
            return v.copy()

        rate = alpha * lambda1
        if method == "auto":
            method = "neumann" if rate <= settings.NEUMANN_MAX_RATE else "direct"

        a = _operator(op, transpose)
        if method == "direct":
            if isinstance(a, LinearOperator):
                raise UnsupportedOperationError("direct solve needs an explicit sparse operator")
            m = (sp.identity(a.shape[0], format="csc") - alpha * sp.csc_matrix(a))
            x = spsolve(m, v)
            logger.debug("Resolvent direct solve, alpha*lambda1=%.6g", rate)
            return np.asarray(x, dtype=float)
        if method != "neumann":
            raise InvalidInputError(f"unknown resolvent method {method!r}")

        # a-posteriori bound ||x* - x_m|| <= rate / (1 - rate) * ||x_m - x_{m-1}||
        factor = max(1.0, rate / (1.0 - rate))
        x = v.copy()
        diff = math.inf
        for iteration in range(1, max_iter + 1):
            x_new = v + alpha * a.dot(x)
            diff = float(np.abs(x_new - x).sum())
            x = x_new
            if diff * factor <= tol * float(np.abs(x).sum()):
                logger.debug("Neumann iteration converged in %d steps", iteration)
                return x
        raise ConvergenceError(
            f"Neumann iteration did not converge in {max_iter} steps",
            best=x,
            iterations=max_iter,
            residual=diff,
        )

    def fA_diagonal(
        self,
        f: SeriesFunction,
        t: float,
        g: Graph,
        order: int = 0,
        normalize: bool = False,
    ) -> np.ndarray:
        """
        diag f(tA) from a dense symmetric eigendecomposition A = Q L Q^T.

        ``order=m`` gives the diagonal of the series tail g(tA) A^m.
        ``normalize`` divides by the tail value at t * lambda1.
        """
        if g.directed:
            raise UnsupportedOperationError(
                "diagonal measures are not defined for directed graphs; use total communicability"
            )
        if g.n > settings.CENTRALITY_DENSE_LIMIT:
            raise CapacityError(
                f"n = {g.n} exceeds CENTRALITY_DENSE_LIMIT = {settings.CENTRALITY_DENSE_LIMIT}; "
                "use total communicability instead"
            )
        lam, q = np.linalg.eigh(g.adjacency.toarray())
        lambda1 = float(lam[-1])
        self.check_parameter(f, t, max(lambda1, 0.0))

        tail = f.shifted(order)
        power = lam**order
        if normalize:
            logs = tail.log_evaluate(t * lam)
            weights = np.exp(logs - logs[-1]) * power
        else:
            weights = tail.evaluate(t * lam) * power
        return (q**2) @ weights


matfunc_service = MatrixFunctionService()
