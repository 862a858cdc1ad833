from typing import Optional, Tuple
import logging

import numpy as np

from walkrank.core.config import settings
from walkrank.core.exceptions import (
    ConvergenceError,
    DisconnectedGraphError,
    GraphValidationError,
    UnsupportedOperationError,
)
from walkrank.models.graph import Graph
from walkrank.models.measure import EigenSide
from walkrank.schemas.spectral import SpectralInfo

logger = logging.getLogger(__name__)


class SpectralService:
    """Dominant and subdominant eigen-information of adjacency matrices."""

    def __init__(self, tol: Optional[float] = None, max_iter: Optional[int] = None, seed: Optional[int] = None):
        self._tol = tol
        self._max_iter = max_iter
        self._seed = seed

    # unset knobs follow the current settings
    @property
    def tol(self) -> float:
        return self._tol or settings.DEFAULT_TOL

    @property
    def max_iter(self) -> int:
        return self._max_iter or settings.MAX_ITER

    @property
    def seed(self) -> int:
        return settings.SEED if self._seed is None else self._seed

    def dominant_eigenpair(
        self,
        g: Graph,
        side: EigenSide = EigenSide.RIGHT,
        tol: Optional[float] = None,
        max_iter: Optional[int] = None,
    ) -> SpectralInfo:
        """
        Perron pair by power iteration on A + I from the uniform vector.

        The unit shift makes the Perron root strictly dominant on every
        connected graph, bipartite ones included. ``side=left`` iterates with
        A^T and returns the left eigenvector.
        """
        tol = tol or self.tol
        max_iter = max_iter or self.max_iter
        side = EigenSide(side)
        if g.n == 0:
            raise DisconnectedGraphError("graph is empty")
        if g.adjacency.nnz == 0:
            raise GraphValidationError("graph has no edges; the dominant eigenvalue is zero")
        if not g.is_connected():
            kind = "strongly connected" if g.directed else "connected"
            raise DisconnectedGraphError(f"dominant eigenpair requires a {kind} graph")

        a = g.operator(transpose=(side == EigenSide.LEFT))
        lam, x, iterations, residual = self._shifted_power(a, tol, max_iter)
        logger.debug(
            "Dominant %s eigenpair: lambda1=%.12g after %d iterations (residual %.3e)",
            side.value, lam, iterations, residual,
        )
        return SpectralInfo(
            lambda1=lam,
            dominant_vector=x,
            side=side,
            iterations=iterations,
            residual=residual,
            tol=tol,
        )

    def spectral_radius(self, g: Graph, tol: Optional[float] = None, max_iter: Optional[int] = None) -> float:
        """Perron root of any nonnegative adjacency, connected or not."""
        tol = tol or self.tol
        max_iter = max_iter or self.max_iter
        if g.n == 0 or g.adjacency.nnz == 0:
            return 0.0
        count, labels = g.components()
        if count == 1:
            return self._shifted_power(g.adjacency, tol, max_iter)[0]

        # the spectrum is the union of the diagonal blocks' spectra
        radius = 0.0
        for c in range(count):
            nodes = np.flatnonzero(labels == c)
            sub = g.subgraph(nodes)
            if sub.adjacency.nnz == 0:
                continue
            radius = max(radius, self._shifted_power(sub.adjacency, tol, max_iter)[0])
        return radius

    def second_eigenvalue(
        self,
        g: Graph,
        info: Optional[SpectralInfo] = None,
        tol: Optional[float] = None,
        max_iter: Optional[int] = None,
    ) -> float:
        """
        Signed second largest eigenvalue of an undirected graph.

        Iterates x -> (A + lambda1 I) x restricted to the complement of q1. The
        shift makes the restricted spectrum nonnegative, so the iteration
        converges to the lambda2 eigenspace; lambda2 is read off the Rayleigh
        quotient.
        """
        if g.directed:
            raise UnsupportedOperationError("second eigenvalue is only defined here for undirected graphs")
        if g.n < 2:
            raise UnsupportedOperationError("second eigenvalue needs at least two nodes")
        tol = tol or self.tol
        max_iter = max_iter or self.max_iter
        if info is None:
            info = self.dominant_eigenpair(g, tol=tol, max_iter=max_iter)

        a = g.adjacency
        lam1 = info.lambda1
        q = info.dominant_vector / np.linalg.norm(info.dominant_vector)

        rng = np.random.default_rng(self.seed)
        x = rng.standard_normal(g.n)
        x -= (q @ x) * q
        x /= np.linalg.norm(x)

        best_res, best_mu = np.inf, 0.0
        for iteration in range(1, max_iter + 1):
            ax = a @ x
            mu = float(x @ ax)
            residual = float(np.linalg.norm(ax - mu * x))
            if residual < best_res:
                best_res, best_mu = residual, mu
            if residual <= tol * lam1:
                logger.debug(
                    "Second eigenvalue %.12g after %d iterations (residual %.3e)",
                    mu, iteration, residual,
                )
                return mu
            y = ax + lam1 * x
            y -= (q @ y) * q
            norm = np.linalg.norm(y)
            if norm == 0.0:
                return mu
            x = y / norm

        raise ConvergenceError(
            f"second eigenvalue did not converge in {max_iter} iterations",
            best=x,
            iterations=max_iter,
            residual=best_res,
            estimate=best_mu,
        )

    def spectral_gap(self, g: Graph, tol: Optional[float] = None) -> float:
        info = self.analyze(g, tol=tol)
        return info.gap

    def analyze(self, g: Graph, tol: Optional[float] = None) -> SpectralInfo:
        """Dominant pair plus lambda2 and both gaps for an undirected graph."""
        info = self.dominant_eigenpair(g, tol=tol)
        lambda2 = self.second_eigenvalue(g, info, tol=tol)
        return info.with_second(lambda2)

    def _shifted_power(self, a, tol: float, max_iter: int) -> Tuple[float, np.ndarray, int, float]:
        n = a.shape[0]
        x = np.full(n, 1.0 / np.sqrt(n))
        best_x, best_res, best_lam = x, np.inf, 0.0
        for iteration in range(1, max_iter + 1):
            y = a @ x + x
            x = y / np.linalg.norm(y)
            ax = a @ x
            lam = float(x @ ax)
            residual = float(np.linalg.norm(ax - lam * x))
            if residual < best_res:
                best_x, best_res, best_lam = x, residual, lam
            if residual <= tol * lam:
                return lam, x, iteration, residual

        raise ConvergenceError(
            f"power iteration did not converge in {max_iter} iterations "
            f"(best residual {best_res:.3e})",
            best=best_x,
            iterations=max_iter,
            residual=best_res,
            estimate=best_lam,
        )


spectral_service = SpectralService()
