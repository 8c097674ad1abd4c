"""Isolated cliques, the double special case, and the contraction operator.

A 1-isolated clique has fewer outgoing edges than vertices.  Distinct ones
never overlap except as a "double": two size-k cliques sharing k-1
vertices with no edges leaving the union, contracted as one unit.
"""

from hsftest import (Multigraph, contract_all, enumerate_isolated_cliques,
                     enumerate_isolated_cliques_bruteforce, is_c_isolated_clique)

tri_pendant = Multigraph(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
print("triangle with a pendant: is {0,1,2} a 1-isolated clique?",
      is_c_isolated_clique(tri_pendant, [0, 1, 2], 1.0))

two_tris = Multigraph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)])
print("\ntwo joined triangles enumerate as:")
for unit in enumerate_isolated_cliques(two_tris):
    print("  ", unit)
print("after contracting all:", contract_all(two_tris).graph.edges)

# the double: K4 minus one edge with nothing attached
double = Multigraph(4, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)])
print("\nK4 minus an edge (two triangles sharing two vertices):")
print("  ", enumerate_isolated_cliques(double)[0])

# a path on three vertices is the k = 2 double
p3 = Multigraph(3, [(0, 1), (1, 2)])
print("P3 is a double too:", enumerate_isolated_cliques(p3)[0])

# the subset-search oracle agrees with the fast enumerator
print("\nbrute force agrees:",
      enumerate_isolated_cliques(two_tris) == enumerate_isolated_cliques_bruteforce(two_tris))

c5 = Multigraph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
print("a 5-cycle has no isolated cliques:", enumerate_isolated_cliques(c5))
