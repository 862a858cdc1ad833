import numpy as np
import pytest

from walkrank.core.config import reload_settings
from walkrank.models.graph import Graph
from walkrank.services.fixtures import karate_club, six_node_digraph
from walkrank.services.generators import GraphGenerator


@pytest.fixture(autouse=True)
def fresh_settings():
    yield
    reload_settings()


@pytest.fixture
def path3():
    """P3: 0 - 1 - 2."""
    return Graph.from_edges(3, [(0, 1, 1.0), (1, 2, 1.0)], directed=False)


@pytest.fixture
def triangle():
    return Graph.from_edges(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)], directed=False)


@pytest.fixture
def star4():
    """Star with center 0 and three leaves."""
    return GraphGenerator.star(3)


@pytest.fixture
def cycle3():
    return Graph.from_edges(3, [(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0)], directed=True)


@pytest.fixture
def karate():
    return karate_club()


@pytest.fixture
def six_node():
    return six_node_digraph()


@pytest.fixture
def generator():
    return GraphGenerator(seed=7)


def dense_exp(a: np.ndarray, beta: float) -> np.ndarray:
    """e^{beta A} from the eigendecomposition of a symmetric matrix."""
    lam, q = np.linalg.eigh(a)
    return (q * np.exp(beta * lam)) @ q.T


def dense_resolvent(a: np.ndarray, alpha: float) -> np.ndarray:
    return np.linalg.inv(np.eye(a.shape[0]) - alpha * a)
