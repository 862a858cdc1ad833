import numpy as np
import pytest

from walkrank.core.exceptions import (
    ConvergenceError,
    DisconnectedGraphError,
    GraphValidationError,
    UnsupportedOperationError,
)
from walkrank.models.graph import Graph
from walkrank.models.measure import EigenSide
from walkrank.services.fixtures import KARATE_LAMBDA1, KARATE_LAMBDA2
from walkrank.services.generators import GraphGenerator
from walkrank.services.spectral import SpectralService, spectral_service


def test_karate_spectrum(karate):
    """Test karate club lambda1, lambda2 and gap against published values"""
    info = spectral_service.analyze(karate, tol=1e-12)
    assert info.lambda1 == pytest.approx(KARATE_LAMBDA1, abs=5e-4)
    assert info.lambda2 == pytest.approx(KARATE_LAMBDA2, abs=5e-4)
    assert info.gap == pytest.approx(KARATE_LAMBDA1 - KARATE_LAMBDA2, abs=1e-3)
    assert info.relative_gap == pytest.approx(info.gap / info.lambda1)


def test_dominant_vector_is_positive_unit(karate):
    info = spectral_service.dominant_eigenpair(karate, tol=1e-12)
    x = info.dominant_vector
    assert np.all(x > 0)
    assert np.linalg.norm(x) == pytest.approx(1.0)
    lam, q = np.linalg.eigh(karate.adjacency.toarray())
    np.testing.assert_allclose(x, np.abs(q[:, -1]), atol=1e-9)
    assert info.residual <= 1e-12 * info.lambda1


def test_bipartite_graph_converges():
    # spectrum of a path is symmetric about zero
    g = GraphGenerator.path(6)
    info = spectral_service.dominant_eigenpair(g, tol=1e-12)
    assert info.lambda1 == pytest.approx(2 * np.cos(np.pi / 7), abs=1e-10)


def test_left_and_right_vectors_of_digraph():
    g = Graph.from_edges(
        3, [(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0), (0, 2, 1.0)], directed=True
    )
    a = g.adjacency.toarray()
    right = spectral_service.dominant_eigenpair(g, EigenSide.RIGHT, tol=1e-12)
    left = spectral_service.dominant_eigenpair(g, EigenSide.LEFT, tol=1e-12)
    assert right.lambda1 == pytest.approx(left.lambda1, rel=1e-10)
    np.testing.assert_allclose(a @ right.dominant_vector, right.lambda1 * right.dominant_vector, atol=1e-9)
    np.testing.assert_allclose(a.T @ left.dominant_vector, left.lambda1 * left.dominant_vector, atol=1e-9)


def test_spectral_radius_of_disconnected_graph(six_node):
    # components {1,3}, {2}, {4,5,6}
    sub = np.array([[0, 1, 1], [1, 0, 1], [1, 0, 0]], dtype=float)
    expected = max(abs(np.linalg.eigvals(sub)).max(), 1.0)
    assert spectral_service.spectral_radius(six_node, tol=1e-12) == pytest.approx(expected, rel=1e-9)


def test_spectral_radius_empty_graph():
    assert spectral_service.spectral_radius(Graph.from_edges(3, [], directed=False)) == 0.0


def test_dominant_pair_rejects_disconnected(six_node):
    with pytest.raises(DisconnectedGraphError):
        spectral_service.dominant_eigenpair(six_node)
    with pytest.raises(GraphValidationError):
        spectral_service.dominant_eigenpair(Graph.from_edges(2, [], directed=False))


def test_second_eigenvalue_random_graphs():
    generator = GraphGenerator(seed=11)
    for _ in range(5):
        g = generator.random_connected(n_range=(8, 30), weighted=True)
        lam = np.linalg.eigvalsh(g.adjacency.toarray())
        info = spectral_service.analyze(g, tol=1e-11)
        assert info.lambda1 == pytest.approx(lam[-1], rel=1e-9)
        assert info.lambda2 == pytest.approx(lam[-2], abs=1e-6 * lam[-1])


def test_second_eigenvalue_rejects_directed(cycle3):
    with pytest.raises(UnsupportedOperationError):
        spectral_service.second_eigenvalue(cycle3)


def test_iteration_cap_reports_best_iterate(karate):
    service = SpectralService(max_iter=3)
    with pytest.raises(ConvergenceError) as exc:
        service.dominant_eigenpair(karate, tol=1e-14)
    assert exc.value.iterations == 3
    assert exc.value.best is not None
    assert exc.value.estimate > 0
