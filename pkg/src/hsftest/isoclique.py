"""Isolated-clique detection, enumeration, and the contraction operator.

A c-isolated clique is a vertex set that is a clique in the support graph
and has fewer than c * |Q| outgoing edges (counted with multiplicity).
For c = 1 the enumeration is complete via a neighborhood-candidate scan:
every 1-isolated clique contains a vertex with zero outgoing edges, and
the clique equals that vertex's closed support neighborhood.  A separate
brute-force enumerator over all subsets stays available as the test
oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .errors import InvalidInput, TooLarge
from .multigraph import ContractionResult, Multigraph

PLAIN = "plain"
DOUBLE = "double"


@dataclass(frozen=True)
class IsolatedClique:
    """One enumerated contraction unit.

    kind "plain" is a 1-isolated clique; kind "double" is the union of two
    size-k isolated cliques sharing k-1 vertices (always with zero
    outgoing edges), which contracts as a single unit.
    """

    members: tuple[int, ...]
    out_degree: int
    kind: str


def _outgoing(
    g: Multigraph, members: set[int], degree_override: Optional[Sequence[int]] = None
) -> int:
    """d_G(Q) with multiplicity; override supplies true degrees when the
    graph at hand is a partially observed ball."""
    degs = degree_override if degree_override is not None else g.degrees
    total = sum(degs[q] for q in members)
    internal = sum(1 for q in members for w, _ in g.adj[q] if w in members)
    return total - internal


def _is_support_clique(g: Multigraph, members: set[int]) -> bool:
    support = g.support
    k = len(members)
    for q in members:
        if len(support[q] & members) < k - 1:
            return False
    return True


def is_c_isolated_clique(
    g: Multigraph,
    members: Iterable[int],
    c: float,
    degree_override: Optional[Sequence[int]] = None,
) -> bool:
    """Check the definition directly: clique plus d_G(Q) < c * |Q|."""
    mset = set(members)
    if not mset:
        raise InvalidInput("empty candidate set")
    for q in mset:
        g._check_vertex(q)
    if not _is_support_clique(g, mset):
        return False
    return _outgoing(g, mset, degree_override) < c * len(mset)


def _merge_doubles(
    g: Multigraph,
    found: dict[frozenset, int],
    degree_override: Optional[Sequence[int]] = None,
) -> list[IsolatedClique]:
    """Merge overlapping isolated cliques into double units.

    Distinct 1-isolated cliques can only overlap as two size-k cliques
    sharing k-1 vertices with an edgeless boundary; anything else
    signals a broken invariant and raises.
    """
    owner: dict[int, list[frozenset]] = {}
    for q in found:
        for v in q:
            owner.setdefault(v, []).append(q)
    merged_from: set[frozenset] = set()
    units: list[IsolatedClique] = []
    for q1 in found:
        if q1 in merged_from:
            continue
        partners = {q2 for v in q1 for q2 in owner[v] if q2 != q1}
        if not partners:
            units.append(IsolatedClique(tuple(sorted(q1)), found[q1], PLAIN))
            continue
        if len(partners) != 1:
            raise RuntimeError(f"more than two isolated cliques overlap at {sorted(q1)}")
        q2 = partners.pop()
        k = len(q1)
        union = q1 | q2
        if len(q2) != k or len(q1 & q2) != k - 1:
            raise RuntimeError("overlapping isolated cliques are not a double pair")
        out = _outgoing(g, set(union), degree_override)
        if out != 0:
            raise RuntimeError("double-isolated-clique with outgoing edges")
        merged_from.update((q1, q2))
        units.append(IsolatedClique(tuple(sorted(union)), 0, DOUBLE))
    return units


def enumerate_isolated_cliques(
    g: Multigraph,
    degree_override: Optional[Sequence[int]] = None,
    candidate_vertices: Optional[Iterable[int]] = None,
) -> list[IsolatedClique]:
    """All 1-isolated cliques of size >= 2, doubles merged, disjoint.

    Candidates are the closed support neighborhoods {v} u N(v); this is
    complete for c = 1.  When degree_override is given (local oracle use),
    candidates are only generated from the listed vertices, whose
    adjacency is fully visible.
    """
    support = g.support
    degs = degree_override if degree_override is not None else g.degrees
    found: dict[frozenset, int] = {}
    verts = range(g.n) if candidate_vertices is None else candidate_vertices
    for v in verts:
        nbrs = support[v]
        if not nbrs:
            continue
        members = frozenset(nbrs | {v})
        if members in found:
            continue
        k = len(members)
        # clique test: every member adjacent to the other k-1
        ok = True
        for q in members:
            s = support[q]
            if len(s) < k - 1 or not members - {q} <= s:
                ok = False
                break
        if not ok:
            continue
        out = _outgoing(g, set(members), degs)
        if out < k:
            found[members] = out
    units = _merge_doubles(g, found, degs)
    units.sort(key=lambda u: u.members[0])
    return units


def enumerate_isolated_cliques_bruteforce(g: Multigraph, cap: int = 14) -> list[IsolatedClique]:
    """Test oracle: apply the definition to every subset of size >= 2.

    Uses adjacency bitmasks; intended for n <= 14 or so.
    """
    if g.n > cap:
        raise TooLarge(f"brute force capped at n={cap}")
    masks = [0] * g.n
    for v in range(g.n):
        for u in g.support[v]:
            masks[v] |= 1 << u
    degs = g.degrees
    # multiplicity matrix for outgoing counts
    mult = [[0] * g.n for _ in range(g.n)]
    for u, v in g.edges:
        mult[u][v] += 1
        mult[v][u] += 1
    found: dict[frozenset, int] = {}
    for k in range(2, g.n + 1):
        for combo in combinations(range(g.n), k):
            cm = 0
            for v in combo:
                cm |= 1 << v
            if any((cm & ~(1 << v)) & ~masks[v] for v in combo):
                continue
            internal = sum(mult[u][v] for u, v in combinations(combo, 2))
            out = sum(degs[v] for v in combo) - 2 * internal
            if out < k:
                found[frozenset(combo)] = out
    return sorted(_merge_doubles(g, found), key=lambda u: u.members[0])


def contract_all(g: Multigraph) -> ContractionResult:
    """The operator E(G): contract every enumerated unit simultaneously.

    Units are pairwise disjoint, so the result is independent of order.
    New vertex ids follow ascending minimum original member, interleaving
    contracted units with untouched vertices.
    """
    units = enumerate_isolated_cliques(g)
    return contract_units(g, units)


def contract_units(g: Multigraph, units: Sequence[IsolatedClique]) -> ContractionResult:
    group_of = [-1] * g.n
    for gid, unit in enumerate(units):
        for v in unit.members:
            if group_of[v] != -1:
                raise InvalidInput("contraction units overlap")
            group_of[v] = gid
    # order groups and loose vertices together by minimum member
    keys = []
    seen_groups = set()
    for v in range(g.n):
        gid = group_of[v]
        if gid == -1:
            keys.append(("v", v))
        elif gid not in seen_groups:
            seen_groups.add(gid)
            keys.append(("g", gid))
    new_id_of_vertex = {}
    new_id_of_group = {}
    for i, (kind, ident) in enumerate(keys):
        if kind == "v":
            new_id_of_vertex[ident] = i
        else:
            new_id_of_group[ident] = i
    vertex_map = [
        new_id_of_vertex[v] if group_of[v] == -1 else new_id_of_group[group_of[v]]
        for v in range(g.n)
    ]
    new_edges, edge_origin = [], []
    for eid, (u, v) in enumerate(g.edges):
        nu, nv = vertex_map[u], vertex_map[v]
        if nu == nv:
            continue
        new_edges.append((nu, nv))
        edge_origin.append(eid)
    return ContractionResult(Multigraph(len(keys), new_edges), vertex_map, edge_origin)
