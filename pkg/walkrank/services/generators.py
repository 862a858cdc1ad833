from typing import List, Optional
import logging

import numpy as np

from walkrank.core.exceptions import GraphValidationError
from walkrank.models.graph import Edge, Graph

logger = logging.getLogger(__name__)


class GraphGenerator:
    """Seeded synthetic graphs for randomized suites. Every random graph needs a seed."""

    def __init__(self, seed: int):
        self.seed = seed
        self.rng = np.random.default_rng(seed)

    def erdos_renyi(
        self,
        n: int,
        p: float,
        directed: bool = False,
        connected: bool = True,
        weighted: bool = False,
    ) -> Graph:
        """
        G(n, p), optionally forced (strongly) connected.

        Connectivity comes from a random spanning tree when undirected and a
        random Hamiltonian cycle when directed, laid under the G(n, p) edges.
        """
        if n < 1:
            raise GraphValidationError("n must be at least 1")
        if not 0 <= p <= 1:
            raise GraphValidationError("p must lie in [0, 1]")

        pairs = set()
        if connected and n > 1:
            perm = self.rng.permutation(n)
            if directed:
                for i in range(n):
                    pairs.add((int(perm[i]), int(perm[(i + 1) % n])))
            else:
                for i in range(1, n):
                    j = int(perm[self.rng.integers(0, i)])
                    u, v = int(perm[i]), j
                    pairs.add((min(u, v), max(u, v)))

        mask = self.rng.random((n, n)) < p
        np.fill_diagonal(mask, False)
        if not directed:
            mask = np.triu(mask)
        for u, v in zip(*np.nonzero(mask)):
            pairs.add((int(u), int(v)))

        edges: List[Edge] = []
        for u, v in sorted(pairs):
            w = float(self.rng.uniform(0.5, 2.0)) if weighted else 1.0
            edges.append((u, v, w))
        graph = Graph.from_edges(n, edges, directed=directed)
        logger.debug("Generated G(%d, %.3f) seed=%d: %r", n, p, self.seed, graph)
        return graph

    def random_connected(
        self,
        n_range=(5, 50),
        p_range=(0.1, 0.3),
        directed: bool = False,
        weighted: bool = False,
    ) -> Graph:
        n = int(self.rng.integers(n_range[0], n_range[1] + 1))
        p = float(self.rng.uniform(*p_range))
        return self.erdos_renyi(n, p, directed=directed, connected=True, weighted=weighted)

    @staticmethod
    def ring(n: int, directed: bool = False) -> Graph:
        if n < 3:
            raise GraphValidationError("a ring needs at least 3 nodes")
        return Graph.from_edges(n, [(i, (i + 1) % n, 1.0) for i in range(n)], directed=directed)

    @staticmethod
    def path(n: int, directed: bool = False) -> Graph:
        return Graph.from_edges(n, [(i, i + 1, 1.0) for i in range(n - 1)], directed=directed)

    @staticmethod
    def star(leaves: int, directed: bool = False) -> Graph:
        """Node 0 is the center; directed stars point outward."""
        return Graph.from_edges(leaves + 1, [(0, i, 1.0) for i in range(1, leaves + 1)], directed=directed)

    @staticmethod
    def complete(n: int, directed: bool = False) -> Graph:
        edges = [
            (i, j, 1.0)
            for i in range(n)
            for j in range(n)
            if i != j and (directed or i < j)
        ]
        return Graph.from_edges(n, edges, directed=directed)

    @staticmethod
    def from_dense(a: np.ndarray, directed: Optional[bool] = None, allow_loops: bool = False) -> Graph:
        a = np.asarray(a, dtype=float)
        if directed is None:
            directed = not np.allclose(a, a.T)
        rows, cols = np.nonzero(a)
        edges = [(int(i), int(j), float(a[i, j])) for i, j in zip(rows, cols) if directed or i <= j]
        return Graph.from_edges(a.shape[0], edges, directed=directed, allow_loops=allow_loops)
