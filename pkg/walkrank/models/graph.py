from functools import cached_property
from typing import Hashable, Iterable, List, Optional, Sequence, Tuple
import enum

import numpy as np
import scipy.sparse as sp
from scipy.sparse import csgraph

from walkrank.core.exceptions import GraphValidationError

Edge = Tuple[int, int, float]


class DegreeSide(str, enum.Enum):
    OUT = "out"
    IN = "in"


class Graph:
    """
    Immutable weighted graph on dense 0-based node ids.

    The adjacency is held as a canonical CSR matrix with a_ij > 0 exactly when
    the edge (i, j) exists. Undirected graphs store the symmetric adjacency and
    report each edge once through ``edges``.
    """

    def __init__(
        self,
        adjacency: sp.spmatrix,
        directed: bool,
        node_labels: Optional[Sequence[Hashable]] = None,
        allow_loops: bool = False,
    ):
        a = sp.csr_matrix(adjacency, dtype=float, copy=True)
        if a.shape[0] != a.shape[1]:
            raise GraphValidationError(f"adjacency must be square, got {a.shape}")
        a.sum_duplicates()
        a.eliminate_zeros()
        a.sort_indices()
        if a.nnz and (not np.all(np.isfinite(a.data)) or a.data.min() <= 0):
            raise GraphValidationError("edge weights must be finite and strictly positive")
        if not directed and (abs(a - a.T) > 0).nnz:
            raise GraphValidationError("undirected graph requires a symmetric adjacency")
        if not allow_loops and a.diagonal().any():
            raise GraphValidationError("loops are not allowed (set allow_loops)")

        n = a.shape[0]
        if node_labels is None:
            node_labels = list(range(n))
        elif len(node_labels) != n:
            raise GraphValidationError(
                f"expected {n} node labels, got {len(node_labels)}"
            )

        a.data.flags.writeable = False
        self._adjacency = a
        self.directed = bool(directed)
        self.allow_loops = bool(allow_loops)
        self.node_labels: Tuple[Hashable, ...] = tuple(node_labels)

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[Edge],
        directed: bool = False,
        allow_loops: bool = False,
        node_labels: Optional[Sequence[Hashable]] = None,
    ) -> "Graph":
        """Build a graph from (source, target, weight) triples; duplicates sum."""
        rows: List[int] = []
        cols: List[int] = []
        vals: List[float] = []
        for u, v, w in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphValidationError(f"edge ({u}, {v}) outside node range 0..{n - 1}")
            if not np.isfinite(w) or w <= 0:
                raise GraphValidationError(f"edge ({u}, {v}) has nonpositive weight {w}")
            if u == v and not allow_loops:
                raise GraphValidationError(f"loop at node {u} not allowed (set allow_loops)")
            if not directed and u > v:
                u, v = v, u
            rows.append(u)
            cols.append(v)
            vals.append(float(w))

        upper = sp.coo_matrix((vals, (rows, cols)), shape=(n, n)).tocsr()
        upper.sum_duplicates()
        if directed:
            adjacency = upper
        else:
            adjacency = upper + upper.T - sp.diags(upper.diagonal())
        return cls(adjacency, directed, node_labels=node_labels, allow_loops=allow_loops)

    @property
    def adjacency(self) -> sp.csr_matrix:
        return self._adjacency

    @cached_property
    def adjacency_t(self) -> sp.csr_matrix:
        return self._adjacency.T.tocsr()

    def operator(self, transpose: bool = False) -> sp.csr_matrix:
        return self.adjacency_t if transpose else self._adjacency

    @property
    def n(self) -> int:
        return self._adjacency.shape[0]

    @property
    def edges(self) -> List[Edge]:
        a = self._adjacency if self.directed else sp.triu(self._adjacency)
        coo = sp.coo_matrix(a)
        order = np.lexsort((coo.col, coo.row))
        return [
            (int(coo.row[k]), int(coo.col[k]), float(coo.data[k])) for k in order
        ]

    @property
    def edge_count(self) -> int:
        if self.directed:
            return int(self._adjacency.nnz)
        loops = int(np.count_nonzero(self._adjacency.diagonal()))
        return (int(self._adjacency.nnz) - loops) // 2 + loops

    @cached_property
    def has_loops(self) -> bool:
        return bool(self._adjacency.diagonal().any())

    @cached_property
    def is_weighted(self) -> bool:
        return bool(self._adjacency.nnz) and not np.all(self._adjacency.data == 1.0)

    def components(self) -> Tuple[int, np.ndarray]:
        """Strong components for digraphs, connected components otherwise."""
        connection = "strong" if self.directed else "weak"
        count, labels = csgraph.connected_components(
            self._adjacency, directed=self.directed, connection=connection
        )
        return int(count), labels

    def is_connected(self) -> bool:
        if self.n == 0:
            return False
        count, _ = self.components()
        return count == 1

    def is_weakly_connected(self) -> bool:
        if self.n == 0:
            return False
        count, _ = csgraph.connected_components(
            self._adjacency, directed=self.directed, connection="weak"
        )
        return count == 1

    def subgraph(self, nodes: Sequence[int]) -> "Graph":
        idx = np.asarray(sorted(set(int(i) for i in nodes)), dtype=int)
        sub = self._adjacency[idx][:, idx]
        labels = [self.node_labels[i] for i in idx]
        return Graph(sub, self.directed, node_labels=labels, allow_loops=self.allow_loops)

    def scaled(self, factor: float) -> "Graph":
        if not factor > 0:
            raise GraphValidationError("scale factor must be positive")
        return Graph(
            self._adjacency * float(factor),
            self.directed,
            node_labels=self.node_labels,
            allow_loops=self.allow_loops,
        )

    def relabeled(self, permutation: Sequence[int]) -> "Graph":
        """Node ``i`` of the result is node ``permutation[i]`` of this graph."""
        perm = np.asarray(permutation, dtype=int)
        if sorted(perm.tolist()) != list(range(self.n)):
            raise GraphValidationError("permutation must cover every node exactly once")
        sub = self._adjacency[perm][:, perm]
        labels = [self.node_labels[i] for i in perm]
        return Graph(sub, self.directed, node_labels=labels, allow_loops=self.allow_loops)

    def __repr__(self):
        kind = "directed" if self.directed else "undirected"
        return f"<Graph {kind} n={self.n} edges={self.edge_count}>"
