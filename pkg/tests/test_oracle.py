import random

from hsftest.genverify import HsfParams, generate_hsf
from hsftest.hierarchy import global_partition
from hsftest.multigraph import Multigraph
from hsftest.oracle import QuerySession, oracle_query, query_bound


def test_hub_answered_with_one_degree_query():
    params = HsfParams(8.0, 3.0, 16, 1.0)
    hub = Multigraph(27, [(0, i) for i in range(1, 26)] + [(26, 1)])
    assert hub.degree(0) == params.delta + 1
    session = QuerySession(hub)
    comp = oracle_query(session, 0, params)
    assert comp == (0,)
    assert session.query_count == 1


def test_disjoint_triangle_component():
    params = HsfParams(8.0, 3.0, 2, 0.9)
    g = Multigraph(7, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    part = global_partition(g, params)
    session = QuerySession(g)
    for v in range(7):
        comp = oracle_query(session, v, params)
        assert comp == part.components[part.assignment[v]].members


def test_query_bound_values():
    class P:
        pass

    p = P()
    p.delta, p.t = 1, 3
    assert query_bound(p) == 2 * 3 + 2
    p.delta, p.t = 2, 3
    assert query_bound(p) == 255


def _oracle_matches_global(g, params, shuffles=2, seed=0):
    part = global_partition(g, params)
    baseline = None
    rng = random.Random(seed)
    bound = query_bound(params)
    for _ in range(shuffles):
        order = list(range(g.n))
        rng.shuffle(order)
        session = QuerySession(g)
        answers = {}
        for v in order:
            before = session.query_count
            comp = oracle_query(session, v, params)
            assert session.query_count - before <= bound
            answers[v] = comp
            assert comp == part.components[part.assignment[v]].members
        if baseline is None:
            baseline = answers
        else:
            assert answers == baseline
    return True


def test_oracle_equals_global_small_instances():
    params = HsfParams(8.0, 3.0, 16, 1.0)
    for seed in (1, 2):
        g = generate_hsf(params, 900, seed=seed)
        assert _oracle_matches_global(g, params, seed=seed)


def test_oracle_consistency(small_instance):
    g, params = small_instance
    session = QuerySession(g)
    rng = random.Random(4)
    for _ in range(60):
        v = rng.randrange(g.n)
        comp = oracle_query(session, v, params)
        assert v in comp
        u = comp[rng.randrange(len(comp))]
        assert oracle_query(QuerySession(g), u, params) == comp


def test_component_size_and_connectivity(small_instance):
    g, params = small_instance
    session = QuerySession(g)
    rng = random.Random(13)
    for _ in range(40):
        v = rng.randrange(g.n)
        comp = oracle_query(session, v, params)
        assert len(comp) <= params.t
        sub, _ = g.induced(comp)
        assert len(sub.connected_components()) == 1


def test_cache_is_invisible(small_instance):
    g, params = small_instance
    warm = QuerySession(g)
    for v in range(0, g.n, 37):
        oracle_query(warm, v, params)
    for v in range(0, g.n, 37):
        cold = QuerySession(g)
        assert oracle_query(cold, v, params) == oracle_query(warm, v, params)
