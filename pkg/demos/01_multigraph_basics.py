"""Multigraph basics: queries, contraction, truncation, clustering.

Everything downstream builds on an immutable multigraph whose adjacency
order is the i-th-neighbor oracle order.
"""

from hsftest import Multigraph

# a triangle with one pendant edge, plus a parallel pair elsewhere
g = Multigraph(6, [(0, 1), (1, 2), (0, 2), (2, 3), (4, 5), (4, 5)])
print("graph:", g)
print("degrees:", [g.degree(v) for v in range(g.n)])
print("neighbors of 2, in query order:", [g.neighbor(2, i) for i in range(1, g.degree(2) + 1)])

print("\ncut degree of the triangle {0,1,2}:", g.cut_degree([0, 1, 2]))
sub, relabel = g.induced([0, 1, 2])
print("induced triangle:", sub.edges, "relabeling:", relabel)

res = g.contract([0, 1])
print("\ncontracting {0,1}: new edges", res.graph.edges)
print("edge provenance (new id -> old id):", res.edge_origin)
print("the contracted vertex keeps the cut degree:",
      res.graph.degree(res.graph.n - 1), "==", g.cut_degree([0, 1]))

star = Multigraph(6, [(0, i) for i in range(1, 6)])
print("\nstar K(1,5) truncated at degree 4 has", star.truncate(4).m, "edges left")

print("\ncluster coefficient of the example:", round(g.cluster_coefficient(), 4))
print("cluster coefficient of a triangle:",
      Multigraph(3, [(0, 1), (1, 2), (0, 2)]).cluster_coefficient())
