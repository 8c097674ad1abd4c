import random

import pytest

from hsftest.genverify import HsfParams, generate_hsf
from hsftest.multigraph import Multigraph


def random_multigraph(n, m, rng, max_mult=3):
    """Seeded random multigraph with n vertices and up to m edges."""
    edges = []
    mult = {}
    for _ in range(4 * m):
        if len(edges) >= m:
            break
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v:
            continue
        key = (min(u, v), max(u, v))
        if mult.get(key, 0) >= max_mult:
            continue
        mult[key] = mult.get(key, 0) + 1
        edges.append(key)
    return Multigraph(n, edges)


@pytest.fixture(scope="session")
def small_instance():
    """A verified hierarchical instance on ~1800 vertices (main branch)."""
    params = HsfParams(8.0, 3.0, 16, 1.0)
    return generate_hsf(params, 1800, seed=7), params


@pytest.fixture(scope="session")
def hub_instance():
    """A verified instance with a hub component (degree > delta)."""
    params = HsfParams(8.0, 3.0, 128, 1.0)
    return generate_hsf(params, 10_000, seed=8), params
