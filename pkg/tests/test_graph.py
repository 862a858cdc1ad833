import io

import numpy as np
import pytest

from walkrank.core.exceptions import (
    DisconnectedGraphError,
    FormatError,
    GraphValidationError,
    ParseError,
)
from walkrank.models.graph import DegreeSide, Graph
from walkrank.services.generators import GraphGenerator
from walkrank.services.graph import GraphService


def test_undirected_edges_listed_once(path3):
    """Test undirected edges are reported once with u <= v"""
    assert path3.edges == [(0, 1, 1.0), (1, 2, 1.0)]
    assert path3.edge_count == 2
    assert (path3.adjacency != path3.adjacency.T).nnz == 0


def test_duplicate_edges_sum():
    g = GraphService.load_edge_list("1 2\n2 1\n2 3 2.5\n", directed=False)
    assert g.n == 3
    assert g.adjacency[0, 1] == 2.0
    assert g.adjacency[2, 1] == 2.5
    assert g.is_weighted


def test_edge_list_comments_and_index_base():
    text = "# comment\n0 1\n\n1 2\n"
    g = GraphService.load_edge_list(text, directed=True, index_base=0)
    assert g.node_labels == (0, 1, 2)
    assert g.edges == [(0, 1, 1.0), (1, 2, 1.0)]


def test_edge_list_parse_error_names_line():
    with pytest.raises(ParseError) as exc:
        GraphService.load_edge_list("1 2\n1 x\n")
    assert "line 2" in str(exc.value)
    assert exc.value.exit_code == 2


def test_edge_list_rejects_bad_weights_and_loops():
    with pytest.raises(GraphValidationError, match="line 1"):
        GraphService.load_edge_list("1 2 -1\n")
    with pytest.raises(GraphValidationError, match="loop"):
        GraphService.load_edge_list("1 2\n3 3\n")
    g = GraphService.load_edge_list("1 2\n2 2\n", allow_loops=True)
    assert g.has_loops


def test_unweighted_read_ignores_third_column():
    g = GraphService.load_edge_list("1 2 7\n", weighted=False)
    assert g.adjacency[0, 1] == 1.0


def test_dump_edge_list_reloads_same_graph(generator):
    g = generator.erdos_renyi(12, 0.3, weighted=True)
    text = GraphService.dump_edge_list(g)
    again = GraphService.load_edge_list(text)
    assert again.n == g.n
    assert abs(again.adjacency - g.adjacency).max() == 0


def test_matrix_market_symmetric_is_undirected():
    text = (
        "%%MatrixMarket matrix coordinate pattern symmetric\n"
        "% comment\n"
        "3 3 2\n"
        "2 1\n"
        "3 2\n"
    )
    g = GraphService.load_matrix_market(io.StringIO(text))
    assert not g.directed
    assert g.edges == [(0, 1, 1.0), (1, 2, 1.0)]
    assert g.node_labels == (1, 2, 3)


def test_matrix_market_general_weighted():
    text = "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 2 0.5\n2 1 3\n"
    g = GraphService.load_matrix_market(text)
    assert g.directed
    assert g.adjacency[0, 1] == 0.5
    assert g.adjacency[1, 0] == 3.0


@pytest.mark.parametrize(
    "text",
    [
        "1 2\n",
        "%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n4\n",
        "%%MatrixMarket matrix coordinate complex general\n2 2 1\n1 2 1 0\n",
        "%%MatrixMarket matrix coordinate real skew-symmetric\n2 2 1\n2 1 1\n",
        "%%MatrixMarket matrix coordinate real general\n2 3 1\n1 2 1\n",
    ],
)
def test_matrix_market_rejects_unsupported(text):
    with pytest.raises(FormatError):
        GraphService.load_matrix_market(text)


def test_matrix_market_rejects_negative_entries():
    text = "%%MatrixMarket matrix coordinate real general\n2 2 1\n1 2 -1\n"
    with pytest.raises(GraphValidationError):
        GraphService.load_matrix_market(text)


def test_read_graph_from_file(tmp_path):
    path = tmp_path / "g.txt"
    path.write_text("1 2\n2 3\n3 1\n")
    g = GraphService.read_graph(path, directed=True)
    assert g.directed
    assert g.is_connected()


def test_graph_is_immutable(path3):
    with pytest.raises(ValueError):
        path3.adjacency.data[0] = 5.0


def test_asymmetric_undirected_rejected():
    a = np.array([[0.0, 1.0], [0.0, 0.0]])
    with pytest.raises(GraphValidationError):
        Graph(a, directed=False)


def test_degrees(six_node):
    out = GraphService.degrees(six_node, DegreeSide.OUT)
    inn = GraphService.degrees(six_node, DegreeSide.IN)
    np.testing.assert_array_equal(out, [2, 0, 3, 2, 2, 1])
    np.testing.assert_array_equal(inn, [1, 2, 1, 2, 2, 2])


def test_six_node_components(six_node):
    count, _ = six_node.components()
    assert count == 3
    assert not six_node.is_connected()
    assert six_node.is_weakly_connected()


def test_largest_scc(six_node):
    sub, mapping = GraphService.largest_scc(six_node)
    np.testing.assert_array_equal(mapping, [3, 4, 5])
    assert sub.node_labels == (4, 5, 6)
    assert sub.is_connected()


def test_largest_scc_prefers_smallest_id_on_ties():
    g = Graph.from_edges(4, [(0, 1, 1.0), (1, 0, 1.0), (2, 3, 1.0), (3, 2, 1.0)], directed=True)
    _, mapping = GraphService.largest_scc(g)
    np.testing.assert_array_equal(mapping, [0, 1])


def test_largest_scc_empty_graph():
    with pytest.raises(DisconnectedGraphError):
        GraphService.largest_scc(Graph.from_edges(0, [], directed=True))


def test_triangles_and_clustering(karate):
    triangles = GraphService.triangle_counts(karate)
    assert triangles.sum() / 3 == pytest.approx(45)
    _, average = GraphService.clustering_coefficient(karate)
    # node 12 has degree 1 and is left out of the average
    assert average == pytest.approx(0.58793, abs=1e-5)


def test_clustering_undefined_for_low_degree(path3, triangle):
    cc, average = GraphService.clustering_coefficient(path3)
    assert np.isnan(cc[0]) and np.isnan(cc[2])
    assert cc[1] == 0.0
    assert average == 0.0
    cc, average = GraphService.clustering_coefficient(triangle)
    np.testing.assert_allclose(cc, 1.0)


def test_clustering_ignores_weights():
    g = Graph.from_edges(3, [(0, 1, 2.0), (1, 2, 3.0), (0, 2, 0.5)], directed=False)
    cc, _ = GraphService.clustering_coefficient(g)
    np.testing.assert_allclose(cc, 1.0)


def test_walk_diagonal(triangle):
    np.testing.assert_allclose(GraphService.walk_diagonal(triangle, 2), [2, 2, 2])
    np.testing.assert_allclose(GraphService.walk_diagonal(triangle, 3), [2, 2, 2])
    np.testing.assert_allclose(GraphService.walk_diagonal(triangle, 0), [1, 1, 1])


def test_generator_is_seeded_and_connected():
    a = GraphGenerator(3).erdos_renyi(20, 0.1)
    b = GraphGenerator(3).erdos_renyi(20, 0.1)
    assert a.edges == b.edges
    assert a.is_connected()
    d = GraphGenerator(3).erdos_renyi(15, 0.05, directed=True)
    assert d.is_connected()


def test_relabeled_and_scaled(path3):
    g = path3.relabeled([2, 1, 0])
    assert g.node_labels == (2, 1, 0)
    assert g.scaled(3.0).adjacency[0, 1] == 3.0


def test_largest_scc_is_maximal():
    generator = GraphGenerator(seed=61)
    for _ in range(10):
        g = generator.erdos_renyi(25, 0.06, directed=True, connected=False)
        sub, mapping = GraphService.largest_scc(g)
        assert sub.components()[0] == 1
        inside = set(mapping.tolist())
        for v in range(g.n):
            if v not in inside:
                assert g.subgraph(sorted(inside | {v})).components()[0] > 1
        _, labels = g.components()
        assert mapping.size == np.bincount(labels).max()
