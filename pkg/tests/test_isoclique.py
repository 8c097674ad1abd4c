import random

from hsftest.disks import canonical_form
from hsftest.isoclique import (contract_all, enumerate_isolated_cliques,
                               enumerate_isolated_cliques_bruteforce,
                               is_c_isolated_clique)
from hsftest.multigraph import Multigraph

from conftest import random_multigraph


def test_membership_examples():
    tri_pendant = Multigraph(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
    assert is_c_isolated_clique(tri_pendant, [0, 1, 2], 1.0)
    edge_two_out = Multigraph(4, [(0, 1), (0, 2), (0, 3)])
    assert not is_c_isolated_clique(edge_two_out, [0, 1], 1.0)
    # strictness: c = 0 never holds
    assert not is_c_isolated_clique(tri_pendant, [0, 1, 2], 0.0)


def test_enumeration_examples():
    two_tris = Multigraph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    units = enumerate_isolated_cliques(two_tris)
    assert [u.members for u in units] == [(0, 1, 2), (3, 4, 5)]
    assert all(u.kind == "plain" for u in units)
    k4 = Multigraph(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])
    units = enumerate_isolated_cliques(k4)
    assert units[0].members == (0, 1, 2, 3) and units[0].out_degree == 0


def test_double_isolated_clique():
    # K4 minus one edge with no outgoing: two triangles sharing 2 vertices
    dbl = Multigraph(4, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)])
    units = enumerate_isolated_cliques(dbl)
    assert len(units) == 1 and units[0].kind == "double"
    assert units[0].members == (0, 1, 2, 3) and units[0].out_degree == 0
    # with an outgoing edge at one tip it stops being a double
    tipped = Multigraph(5, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 4)])
    units = enumerate_isolated_cliques(tipped)
    assert [u.members for u in units] == [(0, 1, 3)]
    assert units[0].kind == "plain"


def test_contract_all_examples():
    joined = Multigraph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)])
    res = contract_all(joined)
    assert res.graph.n == 2 and res.graph.edges == [(0, 1)]
    c5 = Multigraph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
    assert contract_all(c5).graph.edges == c5.edges
    k5 = Multigraph(5, [(i, j) for i in range(5) for j in range(i + 1, 5)])
    assert contract_all(k5).graph.n == 1


def test_brute_force_equivalence_sweep():
    rng = random.Random(101)
    for trial in range(120):
        n = rng.randrange(2, 11)
        density = rng.choice([0.5, 1.0, 1.7, 2.5])
        g = random_multigraph(n, int(density * n) + 1, rng)
        fast = enumerate_isolated_cliques(g)
        brute = enumerate_isolated_cliques_bruteforce(g)
        assert fast == brute, f"trial {trial}: {g.edges}"


def test_enumeration_disjoint_and_shrinks():
    rng = random.Random(55)
    for _ in range(60):
        g = random_multigraph(9, rng.randrange(3, 20), rng)
        units = enumerate_isolated_cliques(g)
        seen = set()
        for u in units:
            assert not (seen & set(u.members))
            seen.update(u.members)
        res = contract_all(g)
        if any(len(u.members) >= 2 for u in units):
            assert res.graph.n < g.n
        else:
            assert res.graph.n == g.n


def test_contract_all_label_invariant():
    rng = random.Random(7)
    for _ in range(25):
        g = random_multigraph(8, rng.randrange(4, 16), rng)
        perm = list(range(8))
        rng.shuffle(perm)
        a = contract_all(g).graph
        b = contract_all(g.relabeled(perm)).graph
        assert canonical_form(a) == canonical_form(b)


def test_provenance_maps():
    g = Multigraph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)])
    res = contract_all(g)
    assert res.edge_origin == [6]
    assert res.vertex_map == [0, 0, 0, 1, 1, 1]
