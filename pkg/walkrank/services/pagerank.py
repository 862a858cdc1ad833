from typing import Optional, Sequence, Union
import logging

import numpy as np
import scipy.sparse as sp

from walkrank.core.config import settings
from walkrank.core.exceptions import (
    ConvergenceError,
    DisconnectedGraphError,
    DomainError,
    GraphValidationError,
)
from walkrank.models.google import GoogleModel
from walkrank.models.graph import Graph
from walkrank.services.matfunc import matfunc_service

logger = logging.getLogger(__name__)

Preference = Optional[Union[np.ndarray, Sequence[float]]]


class PageRankService:
    """Google-matrix construction and the PageRank solvers. P stays implicit."""

    def __init__(self, tol: Optional[float] = None, max_iter: Optional[int] = None):
        self._tol = tol
        self._max_iter = max_iter

    @property
    def tol(self) -> float:
        return self._tol or settings.DEFAULT_TOL

    @property
    def max_iter(self) -> int:
        return self._max_iter or settings.MAX_ITER

    @staticmethod
    def link_matrix(g: Graph):
        """H = (D^-1 A)^T and the dangling indicator; dangling columns of H are zero."""
        out = np.asarray(g.adjacency.sum(axis=1)).ravel()
        dangling = (out == 0).astype(float)
        inv = np.divide(1.0, out, out=np.zeros_like(out), where=out > 0)
        h = (sp.diags(inv) @ g.adjacency).T.tocsr()
        return h, dangling

    def build_model(self, g: Graph, alpha: Optional[float] = None, preference: Preference = None) -> GoogleModel:
        alpha = settings.DEFAULT_DAMPING if alpha is None else float(alpha)
        if g.n == 0:
            raise DisconnectedGraphError("graph is empty")
        if not 0.0 <= alpha <= settings.MAX_DAMPING:
            raise DomainError(
                f"alpha must lie in [0, {settings.MAX_DAMPING}], got {alpha}",
                bound=settings.MAX_DAMPING,
            )
        if alpha >= settings.DAMPING_WARNING:
            logger.warning("Damping factor %.4g is close to 1; PageRank becomes ill-conditioned", alpha)

        n = g.n
        if preference is None:
            v = np.full(n, 1.0 / n)
            uniform = True
        else:
            v = np.asarray(preference, dtype=float).ravel()
            if v.shape != (n,):
                raise GraphValidationError(f"preference must have {n} entries, got {v.size}")
            if not np.all(np.isfinite(v)) or v.min() < 0 or v.sum() <= 0:
                raise GraphValidationError("preference must be nonnegative with a positive sum")
            v = v / v.sum()
            uniform = bool(np.allclose(v, 1.0 / n, rtol=0, atol=1e-15))

        h, dangling = self.link_matrix(g)
        model = GoogleModel(h, dangling, alpha, v, uniform_preference=uniform)
        logger.debug("Built %r", model)
        return model

    def pagerank_power(self, model: GoogleModel, tol: Optional[float] = None, max_iter: Optional[int] = None) -> np.ndarray:
        """p <- P p from p0 = v; stops on alpha/(1-alpha) * ||p_{k+1} - p_k||_1 <= tol."""
        tol = tol or self.tol
        max_iter = max_iter or self.max_iter
        factor = model.alpha / (1.0 - model.alpha)
        p = model.preference.copy()
        diff = np.inf
        for iteration in range(1, max_iter + 1):
            p_new = model.apply(p)
            p_new /= p_new.sum()
            diff = float(np.abs(p_new - p).sum())
            p = p_new
            if factor * diff <= tol:
                logger.debug("PageRank power iteration converged in %d steps", iteration)
                return p
        raise ConvergenceError(
            f"PageRank power iteration did not converge in {max_iter} steps",
            best=p,
            iterations=max_iter,
            residual=diff,
        )

    def pagerank_linear(self, model: GoogleModel, tol: Optional[float] = None, max_iter: Optional[int] = None) -> np.ndarray:
        """
        Solve (I - alpha H) x = v by Neumann iteration and normalise.

        With dangling nodes and a non-uniform preference a second solve with
        the uniform vector restores the dangling correction exactly.
        """
        tol = tol or self.tol
        max_iter = max_iter or self.max_iter
        x = self._neumann(model, model.preference, tol, max_iter)
        if model.has_dangling and not model.uniform_preference:
            alpha = model.alpha
            y = self._neumann(model, np.full(model.n, 1.0 / model.n), tol, max_iter)
            s = (1.0 - alpha) * (model.dangling @ x) / (1.0 - alpha * (model.dangling @ y))
            x = alpha * s * y + (1.0 - alpha) * x
        return x / x.sum()

    def _neumann(self, model: GoogleModel, v: np.ndarray, tol: float, max_iter: int) -> np.ndarray:
        alpha = model.alpha
        if alpha == 0:
            return v.copy()
        factor = alpha / (1.0 - alpha)
        x = v.copy()
        diff = np.inf
        for iteration in range(1, max_iter + 1):
            x_new = v + alpha * (model.h @ x)
            diff = float(np.abs(x_new - x).sum())
            x = x_new
            if factor * diff <= tol * x.sum():
                logger.debug("PageRank Neumann iteration converged in %d steps", iteration)
                return x
        raise ConvergenceError(
            f"PageRank Neumann iteration did not converge in {max_iter} steps",
            best=x / x.sum(),
            iterations=max_iter,
            residual=diff,
        )

    def small_alpha_limit(self, g: Graph) -> np.ndarray:
        """H 1, the ranking limit as alpha -> 0+ (uniform preference only)."""
        h, _ = self.link_matrix(g)
        return np.asarray(h.sum(axis=1)).ravel()

    @staticmethod
    def recurrent_nodes(g: Graph, dangling: np.ndarray) -> np.ndarray:
        """
        Mask of the nodes carrying stationary mass under S.

        These are the closed strong components of A without dangling nodes; when
        there are none, dangling jumps make every node recurrent.
        """
        _, labels = g.components()
        coo = g.adjacency.tocoo()
        leaving = labels[coo.row] != labels[coo.col]
        open_components = set(labels[coo.row[leaving]].tolist())
        open_components.update(labels[dangling > 0].tolist())
        closed = [c for c in np.unique(labels).tolist() if c not in open_components]
        if not closed:
            return np.ones(g.n, dtype=bool)
        return np.isin(labels, closed)

    def stationary_limit(self, g: Graph, tol: Optional[float] = None, max_iter: Optional[int] = None) -> np.ndarray:
        """
        Stationary vector of S by power iteration on the lazy chain (S + I)/2.

        Transient nodes are set to exactly zero once the iteration has converged.
        """
        tol = tol or self.tol
        max_iter = max_iter or self.max_iter
        h, dangling = self.link_matrix(g)
        chain = GoogleModel(h, dangling, 1.0, np.full(g.n, 1.0 / g.n))
        recurrent = self.recurrent_nodes(g, dangling)
        x = np.full(g.n, 1.0 / g.n)
        residual = np.inf
        for iteration in range(1, max_iter + 1):
            sx = chain.apply_s(x)
            residual = float(np.abs(sx - x).sum())
            if residual <= tol:
                logger.debug("Stationary vector of S after %d lazy steps", iteration)
                x[~recurrent] = 0.0
                return x / x.sum()
            x = 0.5 * (sx + x)
        raise ConvergenceError(
            f"stationary vector did not converge in {max_iter} steps",
            best=x / x.sum(),
            iterations=max_iter,
            residual=residual,
        )

    def heat_kernel_rowsums(
        self,
        model: GoogleModel,
        t: float,
        tol: Optional[float] = None,
        normalize: bool = False,
    ) -> np.ndarray:
        """e^{tP} 1 via the scaled Taylor action on the implicit P (unscaled unless ``normalize``)."""
        if model.preference.min() <= 0:
            raise GraphValidationError("heat kernel requires a strictly positive preference")
        return matfunc_service.exp_action(
            t,
            model.as_operator(),
            np.ones(model.n),
            tol=tol or self.tol,
            normalize=normalize,
            norm_bound=1.0,
        )


pagerank_service = PageRankService()
