"""
Rankings at extreme parameters against their limiting references.
"""
import logging
from collections import Counter

import pytest

from walkrank.models.graph import Graph
from walkrank.models.measure import Family, Side
from walkrank.services.generators import GraphGenerator
from walkrank.services.ranking import RankingService

pytestmark = pytest.mark.slow

logger = logging.getLogger(__name__)


@pytest.mark.parametrize(
    "family", [Family.EXP_SUBGRAPH, Family.TOTAL_COMMUNICABILITY, Family.RESOLVENT_SUBGRAPH, Family.KATZ]
)
@pytest.mark.parametrize("end", ["small", "large"])
def test_karate_limits(karate, family, end):
    check = RankingService.verify_limit(karate, family, end, tol=1e-12)
    assert check.matched, check
    assert check.isim == pytest.approx(0.0, abs=1e-12)
    assert check.reference == ("degree" if end == "small" else "q1")


def test_resolvent_large_end_reports_relative_parameter(karate):
    check = RankingService.verify_limit(karate, Family.KATZ, "large", tol=1e-12)
    assert check.relative_parameter >= 0.9999 - 1e-9
    assert check.relative_parameter < 1.0


def test_random_graphs_small_end():
    generator = GraphGenerator(seed=21)
    for _ in range(5):
        g = generator.random_connected(n_range=(10, 40))
        for family in (Family.EXP_SUBGRAPH, Family.KATZ):
            check = RankingService.verify_limit(g, family, "small", tol=1e-12)
            assert check.matched, (g, family)


def test_weighted_graph_small_end_uses_walk_diagonal():
    g = GraphGenerator(seed=4).erdos_renyi(15, 0.3, weighted=True)
    check = RankingService.verify_limit(g, Family.EXP_SUBGRAPH, "small", tol=1e-12)
    assert check.reference == "diag(A^2)"
    assert check.matched


def test_graph_with_loops_small_end():
    edges = [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 0, 1.0), (0, 2, 1.0), (1, 1, 2.0), (3, 3, 0.5)]
    g = Graph.from_edges(4, edges, directed=False, allow_loops=True)
    check = RankingService.verify_limit(g, Family.EXP_SUBGRAPH, "small", tol=1e-12)
    assert check.reference == "loop weights"
    assert check.matched


def test_digraph_sides():
    g = GraphGenerator(seed=9).erdos_renyi(20, 0.15, directed=True)
    broadcast = RankingService.verify_limit(g, Family.KATZ, "small", Side.BROADCAST, tol=1e-12)
    receive = RankingService.verify_limit(g, Family.KATZ, "small", Side.RECEIVE, tol=1e-12)
    assert broadcast.reference == "out-degree"
    assert receive.reference == "in-degree"
    assert broadcast.matched and receive.matched
    large = RankingService.verify_limit(g, Family.TOTAL_COMMUNICABILITY, "large", Side.RECEIVE, tol=1e-12)
    assert large.reference == "y1"
    assert large.matched


def test_pagerank_limits(six_node):
    small = RankingService.verify_limit(six_node, Family.PAGERANK, "small")
    assert small.reference == "row sums of H"
    assert small.matched
    large = RankingService.verify_limit(six_node, Family.PAGERANK, "large")
    assert large.reference == "stationary vector of S"
    assert large.matched
    assert large.escalations == 0


def _run_checks(graphs, cases, record_property):
    escalations = Counter()
    failures = []
    for index, g in enumerate(graphs):
        for family, end, side in cases:
            check = RankingService.verify_limit(g, family, end, side, tol=1e-12)
            escalations[(family.value, end, check.side.value)] += check.escalations
            if not check.matched:
                failures.append((index, g.n, family.value, end, check.side.value, check.isim))
    for key, count in sorted(escalations.items()):
        logger.info("escalations %s: %d", "/".join(key), count)
        record_property("escalations " + "/".join(key), count)
    return failures


def test_random_undirected_limits(record_property):
    """Test 200 seeded connected graphs reach both limiting rankings"""
    generator = GraphGenerator(seed=2024)
    graphs = [generator.random_connected(n_range=(5, 50)) for _ in range(200)]
    cases = [(Family.EXP_SUBGRAPH, "small", Side.SYMMETRIC), (Family.TOTAL_COMMUNICABILITY, "small", Side.SYMMETRIC)]
    cases += [
        (family, "large", Side.SYMMETRIC)
        for family in (
            Family.EXP_SUBGRAPH, Family.TOTAL_COMMUNICABILITY, Family.RESOLVENT_SUBGRAPH, Family.KATZ
        )
    ]
    failures = _run_checks(graphs, cases, record_property)
    assert not failures, failures


def test_random_digraph_limits(record_property):
    """Test 100 strongly connected digraphs on both sides and at both ends"""
    generator = GraphGenerator(seed=2025)
    graphs = [generator.random_connected(n_range=(5, 50), directed=True) for _ in range(100)]
    assert all(g.components()[0] == 1 for g in graphs)
    cases = [
        (family, end, side)
        for family in (Family.KATZ, Family.TOTAL_COMMUNICABILITY)
        for end in ("small", "large")
        for side in (Side.BROADCAST, Side.RECEIVE)
    ]
    failures = _run_checks(graphs, cases, record_property)
    assert not failures, failures
