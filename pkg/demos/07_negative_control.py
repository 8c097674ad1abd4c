"""The clique-chain family: clustered but not hierarchical, not hyperfinite.

Disjoint d-cliques joined by a random perfect matching have a high
clustering coefficient, yet contracting cliques leaves an expander-like
core; the partition must cut far more than eps * n edges at small eps.
"""

from hsftest import HsfParams, generate_clique_chain, global_partition, verify_sf

g = generate_clique_chain(4096, 8, seed=4)
print(f"clique chain: n={g.n}, m={g.m}")
print(f"cluster coefficient {g.cluster_coefficient():.4f} "
      f"(analytic (d-2)/d = {6 / 8})")

check = verify_sf(g, 8.0, 3.0)
print(f"\npower-law check fails as expected: nu_{check.witness_degree} = "
      f"{check.witness_count} > bound {check.witness_bound:.1f}")

params = HsfParams(c=4.5, gamma=3.0, n0=2, epsilon=0.1)
part = global_partition(g, params)
print(f"\npartition at eps = {params.epsilon}: mode={part.mode}")
print(f"cut edges = {part.cut_edge_count}, budget eps*n = {params.epsilon * g.n:.0f}")
print("bound violated (the family is not in the class):",
      part.cut_edge_count > params.epsilon * g.n)
