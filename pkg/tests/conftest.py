import numpy as np
import pytest

from dpmatch import Graph


@pytest.fixture
def p3() -> Graph:
    """Path on three vertices: edges 0-1 and 1-2, degrees (1, 2, 1)."""
    return Graph(3, [(0, 1), (1, 2)])


def random_graph(n: int, p: float, seed: int) -> Graph:
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(iu.size) < p
    return Graph(n, np.stack([iu[keep], ju[keep]], axis=1))
