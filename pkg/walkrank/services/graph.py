from pathlib import Path
from typing import IO, List, Optional, Tuple, Union
import io
import logging

import numpy as np
import scipy.sparse as sp
from scipy.io import mmread

from walkrank.core.exceptions import (
    DisconnectedGraphError,
    FormatError,
    GraphValidationError,
    ParseError,
    UnsupportedOperationError,
)
from walkrank.models.graph import DegreeSide, Edge, Graph
from walkrank.schemas.run_config import GraphFormat

logger = logging.getLogger(__name__)

TextSource = Union[str, IO[str]]

MM_FIELDS = {"pattern", "real", "integer"}
MM_SYMMETRIES = {"general", "symmetric"}


def _read_text(source: TextSource) -> str:
    return source if isinstance(source, str) else source.read()


class GraphService:

    @staticmethod
    def load_edge_list(
        source: TextSource,
        directed: bool = False,
        weighted: Optional[bool] = None,
        index_base: int = 1,
        allow_loops: bool = False,
    ) -> Graph:
        """
        Parse whitespace separated "u v" or "u v w" lines.

        ``#`` starts a comment line. With ``weighted=False`` a third column is
        ignored; otherwise it is the edge weight (default 1). Duplicate edges sum.
        """
        edges: List[Edge] = []
        max_id = -1
        for line_number, raw in enumerate(_read_text(source).splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) not in (2, 3):
                raise ParseError(f"expected 'u v' or 'u v w', got {line!r}", line_number)
            try:
                u = int(parts[0]) - index_base
                v = int(parts[1]) - index_base
            except ValueError:
                raise ParseError(f"node ids must be integers, got {line!r}", line_number)
            w = 1.0
            if len(parts) == 3 and weighted is not False:
                try:
                    w = float(parts[2])
                except ValueError:
                    raise ParseError(f"weight must be numeric, got {parts[2]!r}", line_number)
            if u < 0 or v < 0:
                raise GraphValidationError(
                    f"line {line_number}: node id below index base {index_base}"
                )
            if not np.isfinite(w) or w <= 0:
                raise GraphValidationError(
                    f"line {line_number}: edge weight must be positive, got {parts[2]}"
                )
            if u == v and not allow_loops:
                raise GraphValidationError(
                    f"line {line_number}: loop at node {parts[0]} (loops not allowed)"
                )
            edges.append((u, v, w))
            max_id = max(max_id, u, v)

        n = max_id + 1
        labels = [i + index_base for i in range(n)]
        graph = Graph.from_edges(n, edges, directed=directed, allow_loops=allow_loops, node_labels=labels)
        logger.debug("Loaded edge list: %r", graph)
        return graph

    @staticmethod
    def load_matrix_market(source: TextSource, allow_loops: bool = False) -> Graph:
        """Read a MatrixMarket coordinate file; ``symmetric`` means undirected."""
        text = _read_text(source)
        lines = text.splitlines()
        if not lines or not lines[0].startswith("%%MatrixMarket"):
            raise FormatError("missing %%MatrixMarket header")

        header = lines[0].split()
        if len(header) != 5:
            raise FormatError(f"malformed MatrixMarket header: {lines[0]!r}")
        _, obj, fmt, field, symmetry = (h.lower() for h in header)
        if obj != "matrix" or fmt != "coordinate":
            raise FormatError(f"only 'matrix coordinate' files are supported, got {obj} {fmt}")
        if field not in MM_FIELDS:
            raise FormatError(f"unsupported MatrixMarket field {field!r}")
        if symmetry not in MM_SYMMETRIES:
            raise FormatError(f"unsupported MatrixMarket symmetry {symmetry!r}")

        size_line = next(
            (ln for ln in lines[1:] if ln.strip() and not ln.lstrip().startswith("%")), None
        )
        if size_line is None:
            raise FormatError("missing size line")
        try:
            rows, cols, _ = (int(tok) for tok in size_line.split())
        except ValueError:
            raise FormatError(f"malformed size line: {size_line!r}")
        if rows != cols:
            raise FormatError(f"adjacency must be square, size line gives {rows}x{cols}")

        try:
            matrix = mmread(io.BytesIO(text.encode()))
        except ValueError as e:
            raise FormatError(f"unreadable MatrixMarket body: {e}")
        a = sp.csr_matrix(matrix, dtype=float)
        a.sum_duplicates()
        a.eliminate_zeros()
        if a.nnz and a.data.min() < 0:
            raise GraphValidationError("MatrixMarket entries must be nonnegative weights")

        graph = Graph(
            a,
            directed=(symmetry == "general"),
            node_labels=list(range(1, rows + 1)),
            allow_loops=allow_loops,
        )
        logger.debug("Loaded MatrixMarket file: %r", graph)
        return graph

    @staticmethod
    def read_graph(
        path: Union[str, Path],
        format: GraphFormat = GraphFormat.EDGELIST,
        directed: bool = False,
        index_base: int = 1,
        allow_loops: bool = False,
    ) -> Graph:
        text = Path(path).read_text()
        if GraphFormat(format) == GraphFormat.MTX:
            return GraphService.load_matrix_market(text, allow_loops=allow_loops)
        return GraphService.load_edge_list(
            text, directed=directed, index_base=index_base, allow_loops=allow_loops
        )

    @staticmethod
    def dump_edge_list(g: Graph, index_base: int = 1) -> str:
        """One ``u v w`` line per stored edge (u <= v when undirected)."""
        return "".join(
            f"{u + index_base} {v + index_base} {w:.17g}\n" for u, v, w in g.edges
        )

    @staticmethod
    def degrees(g: Graph, side: DegreeSide = DegreeSide.OUT) -> np.ndarray:
        axis = 1 if DegreeSide(side) == DegreeSide.OUT else 0
        return np.asarray(g.adjacency.sum(axis=axis)).ravel()

    @staticmethod
    def largest_scc(g: Graph) -> Tuple[Graph, np.ndarray]:
        """
        Induced subgraph on the largest strongly connected component.

        Undirected graphs use connected components. Among equally large
        components the one holding the smallest node id wins. The returned
        mapping sends new ids to original ids.
        """
        if g.n == 0:
            raise DisconnectedGraphError("graph is empty")
        _, labels = g.components()
        sizes = np.bincount(labels)
        biggest = sizes.max()
        # first node (smallest id) sitting in a component of maximal size
        winner = labels[np.flatnonzero(sizes[labels] == biggest)[0]]
        mapping = np.flatnonzero(labels == winner)
        logger.debug("Largest component: %d of %d nodes", mapping.size, g.n)
        return g.subgraph(mapping), mapping

    @staticmethod
    def walk_diagonal(g: Graph, k: int) -> np.ndarray:
        """diag(A^k): weighted closed walks of length k at each node."""
        if k < 0:
            raise GraphValidationError("walk length must be nonnegative")
        if k == 0:
            return np.ones(g.n)
        a = g.adjacency
        power = sp.identity(g.n, format="csr")
        for _ in range(k - 1):
            power = power @ a
        return np.asarray(power.multiply(g.adjacency_t).sum(axis=1)).ravel()

    @staticmethod
    def triangle_counts(g: Graph) -> np.ndarray:
        if g.directed:
            raise UnsupportedOperationError("triangle counts require an undirected graph")
        return 0.5 * GraphService.walk_diagonal(g, 3)

    @staticmethod
    def clustering_coefficient(g: Graph) -> Tuple[np.ndarray, float]:
        """
        Local clustering 2*T_i / (d_i (d_i - 1)) on the unweighted pattern.

        Nodes of degree < 2 are undefined (NaN) and left out of the average.
        """
        if g.directed:
            raise UnsupportedOperationError("clustering coefficient requires an undirected graph")
        if g.is_weighted:
            logger.warning("Clustering coefficient ignores edge weights")
        pattern = sp.csr_matrix(g.adjacency - sp.diags(g.adjacency.diagonal()))
        pattern.eliminate_zeros()
        pattern.data = np.ones_like(pattern.data)
        binary = Graph(pattern, directed=False)

        d = GraphService.degrees(binary)
        triangles = GraphService.triangle_counts(binary)
        cc = np.full(g.n, np.nan)
        defined = d >= 2
        cc[defined] = 2.0 * triangles[defined] / (d[defined] * (d[defined] - 1.0))
        average = float(cc[defined].mean()) if defined.any() else float("nan")
        return cc, average
