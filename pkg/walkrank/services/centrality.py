from typing import Optional, Sequence, Tuple, Union
import logging

import numpy as np

from walkrank.core.config import settings
from walkrank.core.exceptions import (
    ConvergenceError,
    DisconnectedGraphError,
    GraphValidationError,
)
from walkrank.models.graph import DegreeSide, Graph
from walkrank.models.measure import EigenSide, Measure, Side
from walkrank.models.series import SeriesFunction, SeriesKind
from walkrank.schemas.centrality import CentralityVector
from walkrank.services.graph import GraphService
from walkrank.services.matfunc import matfunc_service
from walkrank.services.pagerank import pagerank_service
from walkrank.services.spectral import spectral_service

logger = logging.getLogger(__name__)

PreferenceInput = Optional[Union[str, np.ndarray, Sequence[float]]]


def _side(g: Graph, side: Side) -> Side:
    # broadcast and receive coincide on undirected graphs
    return Side.SYMMETRIC if not g.directed else Side(side)


def _transpose(side: Side) -> bool:
    return Side(side) == Side.RECEIVE


def resolve_preference(g: Graph, preference: PreferenceInput) -> Tuple[np.ndarray, str]:
    """Uniform ones unless a strictly positive vector is given."""
    if preference is None or (isinstance(preference, str) and preference == "uniform"):
        return np.ones(g.n), "uniform"
    v = np.asarray(preference, dtype=float).ravel()
    if v.shape != (g.n,):
        raise GraphValidationError(f"preference must have {g.n} entries, got {v.size}")
    if not np.all(np.isfinite(v)) or v.min() <= 0:
        raise GraphValidationError("preference vector must be strictly positive")
    return v, "custom"


class CentralityService:
    """The walk-based measure catalogue; every method returns a CentralityVector."""

    def __init__(self, tol: Optional[float] = None):
        self._tol = tol

    @property
    def tol(self) -> float:
        return self._tol or settings.DEFAULT_TOL

    def _vector(self, g: Graph, measure: Measure, side: Side, scores: np.ndarray, **kwargs) -> CentralityVector:
        return CentralityVector(
            measure=measure,
            side=_side(g, side),
            scores=np.asarray(scores, dtype=float),
            node_labels=list(g.node_labels),
            **kwargs,
        )

    def degree_centrality(self, g: Graph, side: Side = Side.BROADCAST) -> CentralityVector:
        degree_side = DegreeSide.IN if _transpose(side) else DegreeSide.OUT
        return self._vector(g, Measure.DEGREE, side, GraphService.degrees(g, degree_side))

    def eigenvector_centrality(
        self, g: Graph, side: Side = Side.BROADCAST, tol: Optional[float] = None
    ) -> CentralityVector:
        eig_side = EigenSide.LEFT if _transpose(side) else EigenSide.RIGHT
        info = spectral_service.dominant_eigenpair(g, side=eig_side, tol=tol or self.tol)
        return self._vector(
            g,
            Measure.EIGENVECTOR,
            side,
            info.dominant_vector,
            solver_meta={
                "lambda1": info.lambda1,
                "iterations": info.iterations,
                "residual": info.residual,
                "tol": info.tol,
            },
        )

    def katz(
        self,
        g: Graph,
        alpha: Optional[float] = None,
        preference: PreferenceInput = None,
        side: Side = Side.BROADCAST,
        tol: Optional[float] = None,
        order: int = 0,
    ) -> CentralityVector:
        """(I - alpha A)^{-1} v on A (broadcast) or A^T (receive); default alpha = 0.85/lambda1."""
        lambda1 = spectral_service.spectral_radius(g)
        if alpha is None:
            alpha = settings.DEFAULT_TAU / lambda1
        v, pref = resolve_preference(g, preference)
        transpose = _transpose(side)
        if order:
            # tail ((I - alpha A)^{-1} - I) v / alpha = A (I - alpha A)^{-1} v
            a = g.operator(transpose)
            scores = a @ matfunc_service.resolvent_solve(
                alpha, g, v, tol=tol or self.tol, transpose=transpose, lambda1=lambda1
            )
            for _ in range(order - 1):
                scores = a @ scores
        else:
            scores = matfunc_service.resolvent_solve(
                alpha, g, v, tol=tol or self.tol, transpose=transpose, lambda1=lambda1
            )
        return self._vector(
            g,
            Measure.KATZ,
            side,
            scores,
            parameter=alpha,
            preference=pref,
            solver_meta={"lambda1": lambda1, "tau": alpha * lambda1, "order": order, "tol": tol or self.tol},
        )

    def resolvent_subgraph(
        self, g: Graph, alpha: Optional[float] = None, order: int = 0, normalize: bool = False
    ) -> CentralityVector:
        """[(I - alpha A)^{-1}]_ii from the dense eigendecomposition."""
        if alpha is None:
            alpha = settings.DEFAULT_TAU / spectral_service.spectral_radius(g)
        scores = matfunc_service.fA_diagonal(
            SeriesFunction.resolvent(), alpha, g, order=order, normalize=normalize
        )
        return self._vector(
            g, Measure.RESOLVENT_SUBGRAPH, Side.SYMMETRIC, scores,
            parameter=alpha, solver_meta={"order": order},
        )

    def exp_subgraph(
        self, g: Graph, beta: Optional[float] = None, order: int = 0, normalize: bool = False
    ) -> CentralityVector:
        beta = settings.DEFAULT_BETA if beta is None else beta
        scores = matfunc_service.fA_diagonal(
            SeriesFunction.exponential(), beta, g, order=order, normalize=normalize
        )
        return self._vector(
            g, Measure.EXP_SUBGRAPH, Side.SYMMETRIC, scores,
            parameter=beta, solver_meta={"order": order},
        )

    def total_communicability(
        self,
        g: Graph,
        beta: Optional[float] = None,
        preference: PreferenceInput = None,
        side: Side = Side.BROADCAST,
        tol: Optional[float] = None,
        order: int = 0,
        normalize: bool = False,
    ) -> CentralityVector:
        beta = settings.DEFAULT_BETA if beta is None else beta
        v, pref = resolve_preference(g, preference)
        scores = matfunc_service.exp_action(
            beta, g, v, tol=tol or self.tol, transpose=_transpose(side), order=order, normalize=normalize
        )
        return self._vector(
            g, Measure.TOTAL_COMMUNICABILITY, side, scores,
            parameter=beta, preference=pref, solver_meta={"order": order, "tol": tol or self.tol},
        )

    def subgraph(self, g: Graph, f: SeriesFunction, t: float, order: int = 0) -> CentralityVector:
        """General f-subgraph centrality diag f(tA)."""
        measure = {
            SeriesKind.EXPONENTIAL: Measure.EXP_SUBGRAPH,
            SeriesKind.RESOLVENT: Measure.RESOLVENT_SUBGRAPH,
        }.get(f.kind, Measure.SUBGRAPH)
        scores = matfunc_service.fA_diagonal(f, t, g, order=order)
        return self._vector(g, measure, Side.SYMMETRIC, scores, parameter=t, solver_meta={"function": f.name})

    def communicability(
        self,
        g: Graph,
        f: SeriesFunction,
        t: float,
        preference: PreferenceInput = None,
        side: Side = Side.BROADCAST,
        tol: Optional[float] = None,
    ) -> CentralityVector:
        """Total f-communicability f(tA) v."""
        if f.kind == SeriesKind.EXPONENTIAL:
            return self.total_communicability(g, t, preference, side, tol)
        if f.kind == SeriesKind.RESOLVENT:
            return self.katz(g, t, preference, side, tol)
        v, pref = resolve_preference(g, preference)
        scores = matfunc_service.apply_series(
            f, t, g, v, tol=tol or self.tol, transpose=_transpose(side)
        )
        return self._vector(
            g, Measure.COMMUNICABILITY, side, scores,
            parameter=t, preference=pref, solver_meta={"function": f.name},
        )

    def hits(
        self, g: Graph, tol: Optional[float] = None, max_iter: Optional[int] = None
    ) -> Tuple[CentralityVector, CentralityVector]:
        """
        Hub and authority vectors by alternating power iteration.

        a = A^T h, h = A a, each normalised in the 2-norm; stops on the
        residual of A A^T at the hub vector. On bipartite undirected graphs the
        top eigenvalue of A^2 is double and the hub vector is not unique.
        """
        tol = tol or self.tol
        max_iter = max_iter or settings.MAX_ITER
        if g.n == 0 or not g.is_weakly_connected():
            raise DisconnectedGraphError("HITS requires a (weakly) connected graph")
        if g.adjacency.nnz == 0:
            raise GraphValidationError("HITS needs at least one edge")

        a, at = g.adjacency, g.adjacency_t
        h = np.full(g.n, 1.0 / np.sqrt(g.n))
        best_res = np.inf
        for iteration in range(1, max_iter + 1):
            auth = at @ h
            mu = float(auth @ auth)
            aah = a @ auth
            residual = float(np.linalg.norm(aah - mu * h))
            best_res = min(best_res, residual)
            auth /= np.linalg.norm(auth)
            if residual <= tol * mu:
                break
            h = aah / np.linalg.norm(aah)
        else:
            raise ConvergenceError(
                f"HITS did not converge in {max_iter} iterations",
                best=h,
                iterations=max_iter,
                residual=best_res,
            )
        logger.debug("HITS converged in %d iterations (residual %.3e)", iteration, residual)
        meta = {"sigma2": mu, "iterations": iteration, "residual": residual}
        hub = self._vector(g, Measure.HITS_HUB, Side.BROADCAST, h, solver_meta=meta)
        authority = self._vector(g, Measure.HITS_AUTHORITY, Side.RECEIVE, auth, solver_meta=meta)
        return hub, authority

    def pagerank(
        self,
        g: Graph,
        alpha: Optional[float] = None,
        preference: PreferenceInput = None,
        tol: Optional[float] = None,
        method: str = "power",
    ) -> CentralityVector:
        pref = None if isinstance(preference, str) else preference
        model = pagerank_service.build_model(g, alpha, pref)
        solve = pagerank_service.pagerank_linear if method == "linear" else pagerank_service.pagerank_power
        p = solve(model, tol=tol or self.tol)
        return self._vector(
            g, Measure.PAGERANK, Side.RECEIVE, p,
            parameter=model.alpha,
            preference="uniform" if model.uniform_preference else "custom",
            solver_meta={"method": method, "tol": tol or self.tol},
        )

    def heat_kernel(
        self,
        g: Graph,
        t: float,
        alpha: Optional[float] = None,
        preference: PreferenceInput = None,
        tol: Optional[float] = None,
    ) -> CentralityVector:
        """Row sums of e^{tP}, divided by e^t so they sum to n."""
        pref = None if isinstance(preference, str) else preference
        model = pagerank_service.build_model(g, alpha, pref)
        rows = pagerank_service.heat_kernel_rowsums(model, t, tol=tol or self.tol, normalize=True)
        return self._vector(
            g, Measure.HEAT_KERNEL, Side.RECEIVE, rows * g.n,
            parameter=t,
            preference="uniform" if model.uniform_preference else "custom",
            solver_meta={"alpha": model.alpha},
        )


centrality_service = CentralityService()
