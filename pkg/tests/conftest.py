import pytest

from hyperspectra.graphs import all_connected_graphs
from hyperspectra.verify import full_corpus, quick_corpus


@pytest.fixture(scope="session")
def small_corpus():
    """All connected graphs on at most 4 vertices, up to isomorphism."""
    graphs = []
    for n in range(1, 5):
        graphs.extend(all_connected_graphs(n))
    return graphs


@pytest.fixture(scope="session")
def desk_corpus():
    """All connected graphs on at most 5 vertices, up to isomorphism."""
    return full_corpus()


@pytest.fixture(scope="session")
def builtin_corpus():
    """K2, P3, P4, C3, C4, C5, K4 minus an edge, K4."""
    return quick_corpus()
