"""Disks, canonical codes, and frequency vectors.

A (d,t)-disk is the radius-t ball around a vertex in the degree-truncated
graph, as a rooted multigraph.  Canonical byte codes make isomorphism
classes hashable, so a graph becomes a probability vector over classes.
"""

from hsftest import (Multigraph, QuerySession, RootedMultigraph, canonical_code,
                     count_rooted_classes, disk, disk_distribution, l1_distance,
                     sampled_freq)

tri_iso = Multigraph(4, [(0, 1), (1, 2), (0, 2)])
print("triangle + isolated vertex, (d,t) = (2,1):")
fv = disk_distribution(tri_iso, 2, 1)
for code, freq in sorted(fv.entries.items()):
    print(f"  code {code.hex()[:16]:16s} freq {freq}")

# the same rooted shape always gets the same code
p3 = Multigraph(3, [(0, 1), (1, 2)])
end = canonical_code(RootedMultigraph(p3, 0))
mid = canonical_code(RootedMultigraph(p3, 1))
print("\npath rooted at end vs middle differ:", end != mid)
single = canonical_code(RootedMultigraph(Multigraph(2, [(0, 1)]), 0))
double = canonical_code(RootedMultigraph(Multigraph(2, [(0, 1), (0, 1)]), 0))
print("multiplicity matters:", single != double)

star = Multigraph(6, [(0, i) for i in range(1, 6)])
print("\na degree-5 hub at (d,t) = (4,1) truncates to a bare root:",
      disk(star, 0, 4, 1).graph.n == 1)

print("\nnumber of rooted classes N(2,1):", count_rooted_classes(2, 1))

c6 = Multigraph(6, [(i, (i + 1) % 6) for i in range(6)])
exact = disk_distribution(c6, 2, 1)
sample = sampled_freq(QuerySession(c6), 2, 1, s=4, seed=123)
print("vertex-transitive cycle: sampling is exact regardless of seed:",
      l1_distance(exact, sample) == 0.0)
