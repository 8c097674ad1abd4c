"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines; every tolerance is pinned here.
"""

import itertools
import json
import pathlib
import random
import time

import pytest

from hsftest.disks import (canonical_code, canonical_form, disk_distribution,
                           l1_distance, RootedMultigraph)
from hsftest.genverify import (HsfParams, generate_clique_chain, generate_hsf,
                               verify_hsf, zeta_tail)
from hsftest.hierarchy import (build_structure_tree, cascade, check_red_propagation,
                               color_edges, global_partition)
from hsftest.isoclique import (contract_all, enumerate_isolated_cliques,
                               enumerate_isolated_cliques_bruteforce)
from hsftest.multigraph import Multigraph
from hsftest.oracle import QuerySession, oracle_query, query_bound
from hsftest.tester import (PROPERTIES, build_reference_set, calibrate_success_rate,
                            calibrated_config, dist, enumerate_classes, far_instance,
                            member_instance)

from conftest import random_multigraph


def _report(criterion, ok, detail=""):
    line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f" ({detail})"
    print(line)
    assert ok, line


# -- 1: isolated-clique oracle equivalence ------------------------------------


def test_criterion_1_enumeration_matches_bruteforce():
    started = time.time()
    rng = random.Random(2024)
    mismatches = 0
    for trial in range(200):
        n = rng.randrange(2, 13)
        density = rng.choice([0.3, 0.6, 1.0, 1.5, 2.2, 3.0])
        g = random_multigraph(n, max(1, int(density * n)), rng)
        if enumerate_isolated_cliques(g) != enumerate_isolated_cliques_bruteforce(g):
            mismatches += 1
    elapsed = time.time() - started
    _report(1, mismatches == 0 and elapsed < 60,
            f"200 graphs, {mismatches} mismatches, {elapsed:.1f}s")


# -- 2: contraction operator well-definedness ---------------------------------


def test_criterion_2_contraction_label_invariance():
    rng = random.Random(77)
    bases = [random_multigraph(rng.randrange(4, 11), rng.randrange(3, 18), rng)
             for _ in range(20)]
    failures = 0
    relabelings = 0
    for g in bases:
        want = canonical_form(contract_all(g).graph)
        for _ in range(5):
            perm = list(range(g.n))
            rng.shuffle(perm)
            relabelings += 1
            got = canonical_form(contract_all(g.relabeled(perm)).graph)
            if got != want:
                failures += 1
    _report(2, failures == 0, f"{relabelings} relabelings, {failures} failures")


# -- 3 and 4: generated-instance invariants -----------------------------------


def _instance_pool():
    pool = []
    rng = random.Random(5150)
    for i in range(40):
        params = HsfParams(8.0, 3.0, 16, 1.0)
        pool.append((generate_hsf(params, rng.randrange(300, 2500), seed=900 + i),
                     params))
    for i in range(8):
        params = HsfParams(8.0, 3.0, 64, 0.5)
        pool.append((generate_hsf(params, rng.randrange(2000, 6000), seed=950 + i),
                     params))
    for i in range(2):
        params = HsfParams(8.0, 3.0, 128, 1.0)
        pool.append((generate_hsf(params, 10_000, seed=970 + i), params))
    return pool


@pytest.fixture(scope="module")
def instance_pool():
    return _instance_pool()


def test_criterion_3_red_edges_at_every_level(instance_pool):
    bad = 0
    hubs_seen = 0
    for g, params in instance_pool:
        casc = cascade(g, detailed=False)
        tree = build_structure_tree(casc, params.delta, params.eps_prime)
        coloring = color_edges(g, tree)
        if max(g.degrees) > params.delta:
            hubs_seen += 1
        if not check_red_propagation(casc, coloring, params.delta):
            bad += 1
    _report(3, bad == 0 and hubs_seen >= 1,
            f"{len(instance_pool)} instances, {hubs_seen} with hubs, {bad} violations")


def test_criterion_4_colored_edge_counts(instance_pool):
    bad = []
    for idx, (g, params) in enumerate(instance_pool):
        casc = cascade(g, detailed=False)
        tree = build_structure_tree(casc, params.delta, params.eps_prime)
        coloring = color_edges(g, tree)
        eps_prime_n = params.eps_prime * g.n
        if not (coloring.red < eps_prime_n and coloring.blue < eps_prime_n
                and coloring.yellow < params.delta * params.n0 / 2):
            bad.append(idx)
    _report(4, not bad, f"{len(instance_pool)} instances, violations at {bad}")


# -- 5: hyperfiniteness bounds at scale ----------------------------------------


def test_criterion_5_partition_bounds_at_scale():
    runs = []
    timings = []
    # eps = 0.5 at n = 1e5 exercises the full cascade pipeline
    p = HsfParams(8.0, 3.0, 640, 0.5)
    g = generate_hsf(p, 100_000, seed=11)
    t0 = time.time()
    part = global_partition(g, p)
    timings.append(("0.5@1e5", time.time() - t0, part.mode))
    runs.append((part, p, g.n))
    # eps = 0.1 at n = 1e5 lands in the truncated-components regime
    p = HsfParams(8.0, 3.0, 64, 0.1)
    g = generate_hsf(p, 100_000, seed=12)
    t0 = time.time()
    part = global_partition(g, p)
    timings.append(("0.1@1e5", time.time() - t0, part.mode))
    runs.append((part, p, g.n))
    # eps = 0.3 main-branch run at a moderate size
    p = HsfParams(8.0, 3.0, 48, 0.3)
    g = generate_hsf(p, 20_000, seed=13)
    t0 = time.time()
    part = global_partition(g, p)
    timings.append(("0.3@2e4", time.time() - t0, part.mode))
    runs.append((part, p, g.n))

    ok_bounds = all(part.cut_edge_count <= q.epsilon * n
                    and part.max_component_size <= q.t
                    for part, q, n in runs)
    big_runs = [t for label, t, _ in timings if "1e5" in label]
    ok_time = all(t < 30 for t in big_runs)
    detail = "; ".join(f"{lbl}: {t:.1f}s {mode}" for lbl, t, mode in timings)
    _report(5, ok_bounds and ok_time, detail)


# -- 6: oracle-global consistency ----------------------------------------------


def test_criterion_6_oracle_matches_global():
    rng = random.Random(31337)
    params = HsfParams(8.0, 3.0, 16, 1.0)
    mism = 0
    over_budget = 0
    bound = query_bound(params)
    for i in range(20):
        n = rng.randrange(400, 2001)
        g = generate_hsf(params, n, seed=600 + i)
        part = global_partition(g, params)
        baseline = None
        for shuffle in range(5):
            order = list(range(g.n))
            rng.shuffle(order)
            session = QuerySession(g)
            answers = {}
            for v in order:
                before = session.query_count
                comp = oracle_query(session, v, params)
                if session.query_count - before > bound:
                    over_budget += 1
                answers[v] = comp
                if comp != part.components[part.assignment[v]].members:
                    mism += 1
            if baseline is None:
                baseline = answers
            elif answers != baseline:
                mism += 1
    _report(6, mism == 0 and over_budget == 0,
            f"20 instances x 5 shuffles, {mism} mismatches")


# -- 7: certified degree bound ---------------------------------------------------


def test_criterion_7_delta_certification():
    from hsftest.genverify import derive_delta

    ok = derive_delta(1.0, 1.0, 3.0) == 1 and derive_delta(0.5, 1.0, 3.0) == 2
    # confirm against million-term partial sums with integral enclosures
    z1 = zeta_tail(1, 2.0, terms=10 ** 6)
    z2 = zeta_tail(2, 2.0, terms=10 ** 6)
    z3 = zeta_tail(3, 2.0, terms=10 ** 6)
    widths_ok = max(z1.width, z2.width, z3.width) <= 1e-9
    ok = ok and widths_ok
    ok = ok and z2.hi < 1.0 <= z1.lo + z1.width + 1  # zeta(1,2) = 1.64... >= 1
    ok = ok and z1.lo >= 1.0
    ok = ok and z3.hi < 0.5 and z2.lo >= 0.5
    _report(7, ok, f"enclosure widths <= {max(z1.width, z2.width, z3.width):.2e}")


# -- 8: disk machinery ------------------------------------------------------------


def test_criterion_8_disk_machinery():
    rng = random.Random(808)
    # canonical code vs exhaustive isomorphism on rooted multigraphs with
    # up to 6 vertices and multiplicity <= 2
    from test_disks import all_connected_rooted, brute_rooted_isomorphic

    mismatches = 0
    small = all_connected_rooted(4, 2)
    buckets = {}
    for r in small:
        buckets.setdefault(canonical_code(r), []).append(r)
    for rs in buckets.values():
        base = rs[0]
        for other in rs[1:]:
            if not brute_rooted_isomorphic(base, other):
                mismatches += 1
    keys = list(buckets)
    for _ in range(200):
        a, b = rng.sample(keys, 2)
        if brute_rooted_isomorphic(buckets[a][0], buckets[b][0]):
            mismatches += 1

    def random_rooted(n):
        m = rng.randrange(n - 1, 2 * n)
        while True:
            g = random_multigraph(n, m, rng, max_mult=2)
            if len(g.connected_components()) == 1:
                return g

    for _ in range(120):
        n = rng.randrange(5, 7)
        g = random_rooted(n)
        perm = list(range(n))
        rng.shuffle(perm)
        h = g.relabeled(perm)
        for root in range(0, n, 2):
            a = canonical_code(RootedMultigraph(g, root))
            b = canonical_code(RootedMultigraph(h, perm[root]))
            if a != b:
                mismatches += 1
        other = random_rooted(n)
        r1 = RootedMultigraph(g, 0)
        r2 = RootedMultigraph(other, 0)
        if (canonical_code(r1) == canonical_code(r2)) != brute_rooted_isomorphic(r1, r2):
            mismatches += 1

    sums_ok = True
    for _ in range(25):
        g = random_multigraph(rng.randrange(2, 12), rng.randrange(0, 20), rng)
        if abs(disk_distribution(g, 2, 1).total() - 1.0) > 1e-12:
            sums_ok = False
    tri_iso = Multigraph(4, [(0, 1), (1, 2), (0, 2)])
    fv = disk_distribution(tri_iso, 2, 1)
    freqs_ok = sorted(fv.entries.values()) == [0.25, 0.75]
    _report(8, mismatches == 0 and sums_ok and freqs_ok,
            f"{mismatches} mismatches")


# -- 9: tester calibration ----------------------------------------------------------


def test_criterion_9_tester_rates():
    started = time.time()
    results = []
    for name in ("edgeless", "forest", "triangle-free"):
        prop = PROPERTIES[name]
        cfg = calibrated_config(name, 0.25, seed=17)
        ref = build_reference_set(prop, 8, cfg.d, cfg.t)

        def gen(i, name=name):
            if i % 2 == 0:
                return member_instance(name, 8, i // 2), "member"
            return far_instance(name, 8, 0.25, i // 2), "far"

        rates = calibrate_success_rate(prop, cfg, 300, gen, ref=ref)
        results.append((name, rates.member_accept_rate, rates.far_reject_rate))
    elapsed = time.time() - started
    ok = all(a >= 2 / 3 and r >= 2 / 3 for _, a, r in results) and elapsed < 300
    detail = "; ".join(f"{n}: accept {a:.2f} reject {r:.2f}" for n, a, r in results)
    _report(9, ok, f"{detail}; {elapsed:.0f}s")


# -- 10: the non-hyperfinite control -------------------------------------------------


def test_criterion_10_clique_chain_control():
    g = generate_clique_chain(4096, 8, seed=99)
    cl = g.cluster_coefficient()
    cl_ok = abs(cl - 6 / 8) <= 0.02
    params = HsfParams(4.5, 3.0, 2, 0.1)
    part = global_partition(g, params)
    violated = part.cut_edge_count > params.epsilon * g.n
    _report(10, cl_ok and violated and part.mode == "cascade",
            f"cl={cl:.4f}, cut={part.cut_edge_count} > {params.epsilon * g.n:.0f}")


# -- 11: frequency-closeness implies distance-closeness ------------------------------


def test_criterion_11_iff_probe(tmp_path):
    # calibrated probe parameters: (d, t) = (3, 2), lambda = 0.2, eps = 0.25
    # (grid search showed the minimum l1 among eps-far member pairs is 0.25)
    D, T, LAM, EPS = 3, 2, 0.2, 0.25
    params = HsfParams(50.0, 3.0, 4, 0.75)
    counterexamples = []
    close_pairs = 0
    for n in range(4, 9):
        members = [g for g in enumerate_classes(n, 3, 2)
                   if verify_hsf(g, params).ok]
        vecs = [disk_distribution(g, D, T) for g in members]
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                if l1_distance(vecs[i], vecs[j]) <= LAM:
                    close_pairs += 1
                    if dist(members[i], members[j]) > EPS:
                        counterexamples.append({
                            "n": n,
                            "g1": members[i].edges,
                            "g2": members[j].edges,
                        })
    if counterexamples:
        archive = pathlib.Path("counterexamples_iff.json")
        archive.write_text(json.dumps(counterexamples, indent=2))
    _report(11, not counterexamples,
            f"{close_pairs} close pairs checked, {len(counterexamples)} counterexamples")
