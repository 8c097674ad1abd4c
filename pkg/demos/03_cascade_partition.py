"""The contraction cascade, structure tree, coloring, and global partition.

Contracting all isolated cliques repeatedly shrinks a hierarchical graph
level by level; coloring the merge tree yields a partition into small
components whose cut edges number at most eps * n on class members.
"""

from hsftest import (HsfParams, Multigraph, build_structure_tree, cascade,
                     color_edges, generate_hsf, global_partition)

two_tris = Multigraph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)])
casc = cascade(two_tris)
print("level sizes:", casc.level_sizes)

# the walkthrough ratio delta/eps = 4.5: single triangles (w = 3) stay
# uncolored, the merged pair (w = 6) turns blue
tree = build_structure_tree(casc, 9, 2.0)
print("\nstructure tree at blue threshold", tree.threshold)
print(tree.to_text())

coloring = color_edges(two_tris, tree)
print("\nedge tallies: red", coloring.red, "blue", coloring.blue,
      "yellow", coloring.yellow)

params = HsfParams(c=8.0, gamma=3.0, n0=16, epsilon=0.5)
print("\nclass parameters:", params.derivation)
g = generate_hsf(params, 3000, seed=21)
part = global_partition(g, params)
print(f"generated n={g.n}, partition mode={part.mode}")
print(f"cut edges: {part.cut_edge_count} <= eps*n = {params.epsilon * g.n:.0f}")
print(f"max component: {part.max_component_size} <= t = {params.t}")
kinds = {}
for comp in part.components:
    kinds[comp.kind] = kinds.get(comp.kind, 0) + 1
print("component kinds:", kinds)
