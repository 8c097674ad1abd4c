import itertools
import random

import pytest

from hsftest.disks import (FreqVector, RootedMultigraph, canonical_code, canonical_form,
                           count_rooted_classes, disk, disk_distribution, l1_distance,
                           sampled_freq)
from hsftest.errors import IncompatibleVectors, InvalidInput
from hsftest.multigraph import Multigraph
from hsftest.oracle import QuerySession


def brute_rooted_isomorphic(r1, r2):
    g1, g2 = r1.graph, r2.graph
    if g1.n != g2.n or g1.m != g2.m:
        return False
    m1 = [[0] * g1.n for _ in range(g1.n)]
    m2 = [[0] * g2.n for _ in range(g2.n)]
    for u, v in g1.edges:
        m1[u][v] += 1
        m1[v][u] += 1
    for u, v in g2.edges:
        m2[u][v] += 1
        m2[v][u] += 1
    rest = [v for v in range(g1.n) if v != r1.root]
    targets = [v for v in range(g2.n) if v != r2.root]
    for perm in itertools.permutations(targets):
        phi = {r1.root: r2.root, **dict(zip(rest, perm))}
        if all(m1[u][v] == m2[phi[u]][phi[v]]
               for u in range(g1.n) for v in range(g1.n)):
            return True
    return False


def all_connected_rooted(n_max, max_mult):
    out = []
    for n in range(1, n_max + 1):
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        for assign in itertools.product(range(max_mult + 1), repeat=len(pairs)):
            edges = []
            for (u, v), k in zip(pairs, assign):
                edges.extend([(u, v)] * k)
            g = Multigraph(n, edges)
            if n > 1 and len(g.connected_components()) != 1:
                continue
            for root in range(n):
                out.append(RootedMultigraph(g, root))
    return out


def test_code_examples():
    tri = Multigraph(3, [(0, 1), (1, 2), (0, 2)])
    relabeled = tri.relabeled([2, 0, 1])
    assert canonical_code(RootedMultigraph(tri, 0)) == canonical_code(
        RootedMultigraph(relabeled, 2))
    p3 = Multigraph(3, [(0, 1), (1, 2)])
    assert canonical_code(RootedMultigraph(p3, 0)) != canonical_code(
        RootedMultigraph(p3, 1))
    single = Multigraph(2, [(0, 1)])
    double = Multigraph(2, [(0, 1), (0, 1)])
    assert canonical_code(RootedMultigraph(single, 0)) != canonical_code(
        RootedMultigraph(double, 0))


def test_rooted_graph_must_be_connected():
    with pytest.raises(InvalidInput):
        RootedMultigraph(Multigraph(2, []), 0)


def test_code_soundness_exhaustive_small():
    graphs = all_connected_rooted(4, 2)
    buckets = {}
    for r in graphs:
        buckets.setdefault(canonical_code(r), []).append(r)
    for rs in buckets.values():
        for other in rs[1:]:
            assert brute_rooted_isomorphic(rs[0], other)
    keys = list(buckets)
    rng = random.Random(0)
    for _ in range(200):
        a, b = rng.sample(keys, 2)
        assert not brute_rooted_isomorphic(buckets[a][0], buckets[b][0])


def test_disk_examples():
    star = Multigraph(6, [(0, i) for i in range(1, 6)])
    assert disk(star, 0, 4, 1).graph.n == 1
    path = Multigraph(3, [(0, 1), (1, 2)])
    mid = disk(path, 1, 2, 1)
    assert mid.graph.n == 3 and mid.graph.m == 2
    assert disk(path, 0, 2, 0).graph.n == 1


def test_distribution_examples():
    lone = Multigraph(5, [])
    fv = disk_distribution(lone, 2, 1)
    assert len(fv.entries) == 1 and fv.total() == 1.0
    c6 = Multigraph(6, [(i, (i + 1) % 6) for i in range(6)])
    assert len(disk_distribution(c6, 2, 1).entries) == 1
    tri_iso = Multigraph(4, [(0, 1), (1, 2), (0, 2)])
    fv = disk_distribution(tri_iso, 2, 1)
    assert sorted(fv.entries.values()) == [0.25, 0.75]
    assert abs(fv.total() - 1.0) < 1e-12


def test_sampled_freq_modes():
    g = Multigraph(4, [(0, 1), (1, 2), (0, 2)])
    exact = disk_distribution(g, 2, 1)
    without = sampled_freq(QuerySession(g), 2, 1, 4, seed=3, replace=False)
    assert without.entries == exact.entries
    a = sampled_freq(QuerySession(g), 2, 1, 9, seed=42)
    b = sampled_freq(QuerySession(g), 2, 1, 9, seed=42)
    assert a.entries == b.entries
    cyc = Multigraph(8, [(i, (i + 1) % 8) for i in range(8)])
    ref = disk_distribution(cyc, 2, 1)
    for seed in (1, 2, 3):
        sv = sampled_freq(QuerySession(cyc), 2, 1, 5, seed=seed)
        assert l1_distance(sv, ref) == 0.0


def test_sampled_expectation_within_3_sigma():
    g = Multigraph(4, [(0, 1), (1, 2), (0, 2)])
    exact = disk_distribution(g, 2, 1)
    code = max(exact.entries, key=exact.entries.get)  # the 3/4 entry
    s, runs = 25, 200
    total = 0.0
    for seed in range(runs):
        sv = sampled_freq(QuerySession(g), 2, 1, s, seed=seed)
        total += sv.entries.get(code, 0.0)
    mean = total / runs
    p = exact.entries[code]
    sigma = (p * (1 - p) / (s * runs)) ** 0.5
    assert abs(mean - p) <= 3 * sigma


def test_l1_distance():
    g = Multigraph(4, [(0, 1), (1, 2), (0, 2)])
    fv = disk_distribution(g, 2, 1)
    assert l1_distance(fv, fv) == 0.0
    lone = disk_distribution(Multigraph(4, []), 2, 1)
    # overlapping support: {3/4, 1/4} vs {1} on the isolated-vertex code
    assert abs(l1_distance(fv, lone) - 1.5) < 1e-12
    k2 = disk_distribution(Multigraph(2, [(0, 1)]), 2, 1)
    tri = disk_distribution(Multigraph(3, [(0, 1), (1, 2), (0, 2)]), 2, 1)
    assert l1_distance(k2, tri) == 2.0  # disjoint supports
    other = disk_distribution(g, 2, 2)
    with pytest.raises(IncompatibleVectors):
        l1_distance(fv, other)


def test_distinct_codes_never_exceed_class_count():
    bound = count_rooted_classes(2, 1)
    assert bound == 5  # frozen regression constant
    rng = random.Random(5)
    for _ in range(20):
        n = rng.randrange(2, 12)
        edges = [(rng.randrange(n), rng.randrange(n)) for _ in range(2 * n)]
        edges = [(u, v) for u, v in edges if u != v]
        fv = disk_distribution(Multigraph(n, edges), 2, 1)
        assert len(fv.entries) <= bound


def test_freq_json_roundtrip():
    g = Multigraph(4, [(0, 1), (1, 2), (0, 2)])
    fv = disk_distribution(g, 2, 1)
    back = FreqVector.from_json(fv.to_json())
    assert back.entries == fv.entries and (back.d, back.t) == (2, 1)
