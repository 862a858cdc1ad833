from concurrent.futures import ThreadPoolExecutor
from typing import Any, List, Optional, Sequence, Tuple
import logging

import numpy as np

from walkrank.core.config import settings
from walkrank.core.exceptions import (
    DomainError,
    InvalidInputError,
    MismatchError,
    UnsupportedOperationError,
)
from walkrank.models.graph import DegreeSide, Graph
from walkrank.models.measure import EigenSide, Family, Side
from walkrank.models.series import SeriesFunction
from walkrank.schemas.ranking import (
    ConvergenceReport,
    LimitCheck,
    MonotoneViolation,
    Ranking,
    SweepResult,
)
from walkrank.services.centrality import centrality_service, resolve_preference
from walkrank.services.graph import GraphService
from walkrank.services.matfunc import RESOLVENT_POLE_MARGIN, matfunc_service
from walkrank.services.pagerank import pagerank_service
from walkrank.services.spectral import spectral_service

logger = logging.getLogger(__name__)

BETA_GRID = [0.1, 0.5, 1.0, 2.0, 5.0, 8.0, 10.0]
TAU_GRID = [0.01, 0.05, 0.1, 0.25, 0.5, 0.75, 0.9, 0.95, 0.99]
DAMPING_GRID = [0.001, 0.01, 0.1, 0.5, 0.85, 0.9, 0.99]


class RankingService:

    @staticmethod
    def rank(
        scores: Sequence[float],
        tie_tol: Optional[float] = None,
        node_labels: Optional[List[Any]] = None,
    ) -> Ranking:
        """
        Order nodes by descending score, ascending id on ties.

        Adjacent scores within ``tie_tol`` (relative) chain into one tie group;
        members of a group are listed by ascending id.
        """
        tie_tol = settings.TIE_TOL if tie_tol is None else tie_tol
        s = np.asarray(scores, dtype=float).ravel()
        if not np.all(np.isfinite(s)):
            raise InvalidInputError("scores must be finite")
        n = s.size
        order = np.lexsort((np.arange(n), -s))

        groups: List[List[int]] = []
        start = 0
        for pos in range(1, n + 1):
            if pos < n:
                a, b = s[order[pos - 1]], s[order[pos]]
                if abs(a - b) <= tie_tol * max(abs(a), abs(b)):
                    continue
            groups.append(list(range(start, pos)))
            start = pos
        for group in groups:
            if len(group) > 1:
                order[group] = np.sort(order[group])

        return Ranking(order=order, scores=s, tie_groups=groups, tie_tol=tie_tol, node_labels=node_labels)

    @staticmethod
    def _check_compatible(x: Ranking, y: Ranking):
        if x.n != y.n:
            raise MismatchError(f"rankings cover {x.n} and {y.n} nodes")
        if x.node_labels is not None and y.node_labels is not None:
            if list(x.node_labels) != list(y.node_labels):
                raise MismatchError("rankings are over different node sets")

    @staticmethod
    def resolve_ties(x: Ranking, y: Ranking) -> np.ndarray:
        """y's order with each tie group reordered to follow x."""
        pos_x = x.positions()
        order = y.order.copy()
        for group in y.tie_groups:
            if len(group) > 1:
                members = order[group]
                order[group] = members[np.argsort(pos_x[members], kind="stable")]
        return order

    @staticmethod
    def intersection_distance(
        x: Ranking, y: Ranking, k: Optional[int] = None, resolve_ties: bool = False
    ) -> float:
        """
        Mean over i <= k of |X_i sym-diff Y_i| / (2i), X_i and Y_i the top-i sets.

        ``resolve_ties`` lets the tie groups of ``y`` follow ``x`` before comparing.
        """
        RankingService._check_compatible(x, y)
        n = x.n
        k = n if k is None else int(k)
        if not 1 <= k <= n:
            raise InvalidInputError(f"k must lie in [1, {n}], got {k}")

        xo = x.order
        yo = RankingService.resolve_ties(x, y) if resolve_ties else y.order
        in_x = np.zeros(n, dtype=bool)
        in_y = np.zeros(n, dtype=bool)
        overlap = 0
        total = 0.0
        for i in range(k):
            a, b = xo[i], yo[i]
            in_x[a] = True
            if in_y[a]:
                overlap += 1
            in_y[b] = True
            if in_x[b]:
                overlap += 1
            total += 1.0 - overlap / (i + 1)
        return total / k

    @staticmethod
    def equivalent(x: Ranking, reference: Ranking) -> bool:
        """Same ranking as ``reference`` up to the order inside its tie groups."""
        RankingService._check_compatible(x, reference)
        for group in reference.tie_groups:
            if set(x.order[group].tolist()) != set(reference.order[group].tolist()):
                return False
        return True

    @staticmethod
    def default_grid(family: Family, lambda1: Optional[float] = None) -> List[float]:
        family = Family(family)
        if family == Family.PAGERANK:
            return list(DAMPING_GRID)
        if family.is_resolvent:
            if not lambda1:
                raise InvalidInputError("resolvent grids need lambda1")
            return [tau / lambda1 for tau in TAU_GRID]
        return list(BETA_GRID)

    @staticmethod
    def scaled_scores(
        family: Family,
        g: Graph,
        param: float,
        side: Side = Side.BROADCAST,
        preference=None,
        tol: Optional[float] = None,
        lambda1: Optional[float] = None,
    ) -> np.ndarray:
        """
        Scores that rank exactly like the family's measure at ``param``.

        Diagonal families drop the constant and linear terms of the series and
        rescale (order 2, or 1 with loops); row-sum families with a uniform
        preference drop the constant term. Both stay informative at tiny
        parameters and do not overflow at large ones.
        """
        family = Family(family)
        if family == Family.PAGERANK:
            pref = None if preference is None or isinstance(preference, str) else preference
            model = pagerank_service.build_model(g, param, pref)
            return pagerank_service.pagerank_power(model, tol=tol)

        diagonal_order = 1 if g.has_loops else 2
        if family == Family.EXP_SUBGRAPH:
            return matfunc_service.fA_diagonal(
                SeriesFunction.exponential(), param, g, order=diagonal_order, normalize=True
            )
        if family == Family.RESOLVENT_SUBGRAPH:
            return matfunc_service.fA_diagonal(
                SeriesFunction.resolvent(), param, g, order=diagonal_order, normalize=True
            )

        _, pref = resolve_preference(g, preference)
        order = 1 if pref == "uniform" else 0
        if family == Family.TOTAL_COMMUNICABILITY:
            return centrality_service.total_communicability(
                g, param, preference, side, tol=tol, order=order, normalize=True
            ).scores
        if lambda1 is None:
            lambda1 = spectral_service.spectral_radius(g)
        return RankingService._katz_scores(g, param, preference, side, tol, order, lambda1)

    @staticmethod
    def _katz_scores(g, alpha, preference, side, tol, order, lambda1) -> np.ndarray:
        v, _ = resolve_preference(g, preference)
        transpose = Side(side) == Side.RECEIVE
        x = matfunc_service.resolvent_solve(alpha, g, v, tol=tol, transpose=transpose, lambda1=lambda1)
        if order:
            x = g.operator(transpose) @ x
        return x

    @staticmethod
    def references(
        g: Graph,
        family: Family,
        side: Side = Side.BROADCAST,
        tol: Optional[float] = None,
    ) -> Tuple[np.ndarray, np.ndarray, str, str]:
        """(small-end scores, large-end scores) with their names."""
        family = Family(family)
        receive = g.directed and Side(side) == Side.RECEIVE
        if family == Family.PAGERANK:
            return (
                pagerank_service.small_alpha_limit(g),
                pagerank_service.stationary_limit(g, tol=tol),
                "row sums of H",
                "stationary vector of S",
            )

        if family.is_diagonal and g.has_loops:
            small, small_name = GraphService.walk_diagonal(g, 1), "loop weights"
        elif family.is_diagonal and g.is_weighted:
            small, small_name = GraphService.walk_diagonal(g, 2), "diag(A^2)"
        else:
            degree_side = DegreeSide.IN if receive else DegreeSide.OUT
            small = GraphService.degrees(g, degree_side)
            small_name = f"{degree_side.value}-degree" if g.directed else "degree"

        eig_side = EigenSide.LEFT if receive else EigenSide.RIGHT
        info = spectral_service.dominant_eigenpair(g, side=eig_side, tol=tol)
        large_name = {EigenSide.RIGHT: "x1", EigenSide.LEFT: "y1"}[eig_side] if g.directed else "q1"
        return small, info.dominant_vector, small_name, large_name

    @staticmethod
    def verify_limit(
        g: Graph,
        family: Family,
        end: str,
        side: Side = Side.BROADCAST,
        preference=None,
        tol: Optional[float] = None,
        tie_tol: Optional[float] = None,
    ) -> LimitCheck:
        """
        Compare the ranking at an extreme parameter with its limiting reference.

        Starts at the configured extreme and moves further toward the limit
        (at most LIMIT_MAX_ESCALATIONS times) until the ranking matches the
        reference modulo the reference's ties.
        """
        family = Family(family)
        if end not in ("small", "large"):
            raise InvalidInputError("end must be 'small' or 'large'")
        if not g.directed:
            side = Side.SYMMETRIC
        if preference is not None and not isinstance(preference, str):
            logger.warning("Custom preference: the %s-end limit is not guaranteed", end)

        lambda1 = spectral_service.spectral_radius(g)
        small_ref, large_ref, small_name, large_name = RankingService.references(g, family, side, tol)
        reference_scores, reference_name = (small_ref, small_name) if end == "small" else (large_ref, large_name)
        reference = RankingService.rank(reference_scores, tie_tol)

        param = RankingService._limit_start(family, end, lambda1)
        escalations = 0
        while True:
            scores = RankingService.scaled_scores(family, g, param, side, preference, tol, lambda1)
            ranking = RankingService.rank(scores, tie_tol)
            matched = RankingService.equivalent(ranking, reference)
            if matched:
                break
            following = RankingService._escalate(family, end, param, lambda1)
            if escalations >= settings.LIMIT_MAX_ESCALATIONS or following is None:
                break
            logger.warning(
                "%s ranking at %s=%.6g differs from %s; moving closer to the limit",
                family.value, "tau" if family.is_resolvent else "parameter",
                param * lambda1 if family.is_resolvent else param, reference_name,
            )
            param = following
            escalations += 1

        return LimitCheck(
            family=family,
            end=end,
            side=side,
            reference=reference_name,
            parameter=param,
            relative_parameter=param * lambda1 if family.is_resolvent else None,
            escalations=escalations,
            matched=matched,
            isim=RankingService.intersection_distance(ranking, reference, resolve_ties=True),
        )

    @staticmethod
    def _limit_start(family: Family, end: str, lambda1: float) -> float:
        if family == Family.PAGERANK:
            return settings.LIMIT_TAU_SMALL if end == "small" else settings.MAX_DAMPING
        if family.is_resolvent:
            tau = settings.LIMIT_TAU_SMALL if end == "small" else settings.LIMIT_TAU_LARGE
            return tau / lambda1
        return settings.LIMIT_BETA_SMALL if end == "small" else settings.LIMIT_BETA_LARGE

    @staticmethod
    def _escalate(family: Family, end: str, param: float, lambda1: float) -> Optional[float]:
        if end == "small":
            return param / 100.0
        if family == Family.PAGERANK:
            return None
        if family.is_resolvent:
            tau = 1.0 - (1.0 - param * lambda1) / 100.0
            return tau / lambda1 if tau < 1.0 - RESOLVENT_POLE_MARGIN else None
        return param * 2.0


class SweepService:
    """Parameter sweeps of a family against its two limiting rankings."""

    def __init__(self, workers: Optional[int] = None, tol: Optional[float] = None):
        self._workers = workers
        self._tol = tol

    @property
    def workers(self) -> int:
        return self._workers or settings.SWEEP_WORKERS

    @property
    def tol(self) -> float:
        return self._tol or settings.DEFAULT_TOL

    def validate_grid(self, family: Family, grid: Sequence[float], lambda1: float) -> List[float]:
        grid = [float(p) for p in grid]
        if not grid:
            raise InvalidInputError("parameter grid is empty")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise InvalidInputError("parameter grid must be strictly increasing")
        for p in grid:
            if family == Family.PAGERANK:
                if not 0 <= p <= settings.MAX_DAMPING:
                    raise DomainError(
                        f"alpha must lie in [0, {settings.MAX_DAMPING}], got {p}", bound=settings.MAX_DAMPING
                    )
            elif family.is_resolvent:
                matfunc_service.check_parameter(SeriesFunction.resolvent(), p, lambda1, name="alpha")
            else:
                matfunc_service.check_parameter(SeriesFunction.exponential(), p, lambda1, name="beta")
        return grid

    def limit_sweep(
        self,
        g: Graph,
        family: Family,
        grid: Optional[Sequence[float]] = None,
        k: Optional[int] = None,
        side: Side = Side.BROADCAST,
        preference=None,
        tie_tol: Optional[float] = None,
    ) -> SweepResult:
        """
        Rank the family at every grid point and measure the intersection
        distance to the degree-type and eigenvector-type references.

        Grid points run in a thread pool and are collected by index.
        """
        family = Family(family)
        if family.is_diagonal and g.directed:
            raise UnsupportedOperationError(f"{family.value} is only defined for undirected graphs")
        if not g.directed:
            side = Side.SYMMETRIC
        if preference is not None and not isinstance(preference, str):
            logger.warning("Custom preference: the limiting rankings are not guaranteed")

        lambda1 = spectral_service.spectral_radius(g)
        grid = self.validate_grid(
            family, grid if grid is not None else RankingService.default_grid(family, lambda1), lambda1
        )
        k = g.n if k is None else k
        if not 1 <= k <= g.n:
            raise InvalidInputError(f"k must lie in [1, {g.n}], got {k}")

        small_ref, large_ref, _, _ = RankingService.references(g, family, side, self.tol)
        degree_rank = RankingService.rank(small_ref, tie_tol)
        eigen_rank = RankingService.rank(large_ref, tie_tol)

        def evaluate(param: float) -> Ranking:
            scores = RankingService.scaled_scores(family, g, param, side, preference, self.tol, lambda1)
            return RankingService.rank(scores, tie_tol)

        with ThreadPoolExecutor(max_workers=self.workers) as executor:
            rankings = list(executor.map(evaluate, grid))

        isim = RankingService.intersection_distance
        isim_degree = [isim(r, degree_rank, k, resolve_ties=True) for r in rankings]
        isim_eigen = [isim(r, eigen_rank, k, resolve_ties=True) for r in rankings]
        raw_degree = [isim(r, degree_rank, k) for r in rankings]
        raw_eigen = [isim(r, eigen_rank, k) for r in rankings]
        successive: List[Optional[float]] = [None] + [
            isim(prev, cur, k) for prev, cur in zip(rankings, rankings[1:])
        ]
        logger.info("Swept %s over %d grid points (k=%d)", family.value, len(grid), k)

        return SweepResult(
            family=family,
            side=side,
            parameters=grid,
            relative_grid=[p * lambda1 for p in grid] if family.is_resolvent else None,
            lambda1=lambda1,
            isim_degree=isim_degree,
            isim_eigenvector=isim_eigen,
            isim_successive=successive,
            raw_isim_degree=raw_degree,
            raw_isim_eigenvector=raw_eigen,
            k=k,
            n=g.n,
            ties_resolved=True,
        )

    @staticmethod
    def convergence_report(s: SweepResult, threshold: Optional[float] = None) -> ConvergenceReport:
        """
        Informative band: grid points whose ranking is more than ``threshold``
        away from BOTH limiting rankings, plus monotonicity violations.
        """
        threshold = settings.ISIM_THRESHOLD if threshold is None else threshold
        symbol = "tau" if s.family.is_resolvent else ("alpha" if s.family == Family.PAGERANK else "beta")

        if len(s.parameters) < 2:
            return ConvergenceReport(
                family=s.family,
                threshold=threshold,
                degenerate=True,
                recommendation="degenerate sweep: at least two grid points are needed",
            )

        # tie-resolved distances read 0 wherever the measure only splits the
        # reference ties, so the band is taken from the raw ones
        band_degree = s.raw_isim_degree if s.raw_isim_degree is not None else s.isim_degree
        band_eigen = s.raw_isim_eigenvector if s.raw_isim_eigenvector is not None else s.isim_eigenvector
        informative = [
            i for i, (d, e) in enumerate(zip(band_degree, band_eigen))
            if d > threshold and e > threshold
        ]
        points = [s.parameters[i] for i in informative]
        band = (min(points), max(points)) if points else None
        band_relative = None
        if band is not None and s.relative_grid is not None:
            rel = [s.relative_grid[i] for i in informative]
            band_relative = (min(rel), max(rel))

        violations: List[MonotoneViolation] = []
        for i in range(1, len(s.parameters)):
            d0, d1 = s.isim_degree[i - 1], s.isim_degree[i]
            if d1 < d0 - 1e-12:
                violations.append(MonotoneViolation(
                    reference="degree", index=i, parameter=s.parameters[i], previous=d0, current=d1
                ))
            e0, e1 = s.isim_eigenvector[i - 1], s.isim_eigenvector[i]
            if e1 > e0 + 1e-12:
                violations.append(MonotoneViolation(
                    reference="eigenvector", index=i, parameter=s.parameters[i], previous=e0, current=e1
                ))

        shown = band_relative if band_relative is not None else band
        if shown is None:
            recommendation = (
                f"no grid point is more than {threshold:g} away from both limiting rankings; "
                f"across this grid the measure behaves like degree or eigenvector centrality"
            )
        else:
            recommendation = f"choose {symbol} in [{shown[0]:.4g}, {shown[1]:.4g}]"
            if s.family.is_resolvent:
                recommendation += " (alpha = tau / lambda1)"
        if violations:
            recommendation += f"; {len(violations)} monotonicity violation(s) on this grid"

        return ConvergenceReport(
            family=s.family,
            threshold=threshold,
            band=band,
            band_relative=band_relative,
            informative_points=points,
            monotone_violations=violations,
            degenerate=False,
            recommendation=recommendation,
        )


sweep_service = SweepService()
