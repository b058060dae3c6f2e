import numpy as np
import pytest

from auctiongraph.graph import BipartiteProblem


def complete_bipartite(weights):
    """BipartiteProblem over a dense weight matrix."""
    W = np.asarray(weights, dtype=np.float64)
    nb, no = W.shape
    bb, oo = np.meshgrid(np.arange(nb), np.arange(no), indexing="ij")
    return BipartiteProblem(nb, no, bb.ravel(), oo.ravel(), W.ravel())


def integer_bipartite(n, seed, low=1, high=101):
    """Complete n x n problem with integer weights drawn from [low, high)."""
    rng = np.random.default_rng(seed)
    return complete_bipartite(rng.integers(low, high, size=(n, n)).astype(float))


@pytest.fixture
def triangle_graph():
    from auctiongraph.graph import WeightedGraph
    return WeightedGraph.from_edges(3, [(0, 1, 3.0), (0, 2, 2.0), (1, 2, 1.0)])
