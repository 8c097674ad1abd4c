"""The deterministic partitioning oracle: local answers, global agreement.

Each query explores a bounded ball (never expanding high-degree vertices,
but reading their true degrees) and reruns the global pipeline on it; the
answer is the querying vertex's component of the one global partition.
"""

import random

from hsftest import (HsfParams, QuerySession, generate_hsf, global_partition,
                     oracle_query, query_bound)

params = HsfParams(c=8.0, gamma=3.0, n0=16, epsilon=1.0)
g = generate_hsf(params, 1500, seed=5)
print(f"instance: n={g.n}, m={g.m}, delta={params.delta}, t={params.t}")

part = global_partition(g, params)
session = QuerySession(g)

rng = random.Random(0)
sample = [rng.randrange(g.n) for _ in range(8)]
print("\nper-query results (fresh session):")
agree = True
for v in sample:
    fresh = QuerySession(g)
    comp = oracle_query(fresh, v, params)
    want = part.components[part.assignment[v]].members
    agree &= comp == want
    print(f"  v={v:5d}: |component|={len(comp):3d} queries={fresh.query_count:4d} "
          f"matches global: {comp == want}")
print("all sampled queries agree with the global partition:", agree)

# the cache is pure memoization: a warm session answers repeats for free
warm = QuerySession(g)
for v in sample:
    oracle_query(warm, v, params)
before = warm.query_count
for v in sample:
    oracle_query(warm, v, params)
print("warm repeat cost:", warm.query_count - before, "queries")

print("query budget per call (never exceeded):", str(query_bound(params))[:40], "...")
