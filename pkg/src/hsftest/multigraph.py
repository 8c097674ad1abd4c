"""Immutable undirected multigraph with the general-model query surface.

Vertices are integers 0..n-1.  Parallel edges are allowed, self-loops are
not.  Every edge carries a stable integer id (its position in the edge
list), and each vertex's adjacency sequence lists incident edge endpoints
in edge-insertion order; that ordering IS the i-th-neighbor oracle order,
so a graph loaded from a file answers neighbor queries deterministically.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import EdgeListFormatError, InvalidIndex, InvalidInput, InvalidVertex


@dataclass
class ContractionResult:
    """Outcome of contracting a vertex set, with full provenance.

    vertex_map[old] gives the new id of every original vertex; members of
    the contracted set all map to the same new vertex.  edge_origin[new]
    gives the id of the original edge each surviving edge came from.
    """

    graph: "Multigraph"
    vertex_map: list[int]
    edge_origin: list[int]


class Multigraph:
    """Undirected multigraph without self-loops, immutable after build."""

    __slots__ = ("n", "m", "edges", "adj", "_support", "_degrees")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise InvalidInput("vertex count must be nonnegative")
        self.n = n
        self.edges: list[tuple[int, int]] = []
        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for eid, (u, v) in enumerate(edges):
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidVertex(f"edge {eid}: endpoint out of range")
            if u == v:
                raise InvalidInput(f"edge {eid}: self-loop at {u}")
            self.edges.append((u, v))
            adj[u].append((v, eid))
            adj[v].append((u, eid))
        self.m = len(self.edges)
        self.adj = adj
        self._support = None
        self._degrees = None

    # -- query oracle surface -------------------------------------------

    def degree(self, v: int) -> int:
        """Number of incident edges, counting parallel edges."""
        self._check_vertex(v)
        return len(self.adj[v])

    def neighbor(self, v: int, i: int) -> int:
        """The i-th neighbor of v, 1-based, in adjacency order."""
        self._check_vertex(v)
        if not 1 <= i <= len(self.adj[v]):
            raise InvalidIndex(f"neighbor index {i} out of 1..{len(self.adj[v])}")
        return self.adj[v][i - 1][0]

    def neighbors(self, v: int) -> list[int]:
        """All incident edge endpoints of v (multiplicity repeats them)."""
        self._check_vertex(v)
        return [u for u, _ in self.adj[v]]

    # -- derived structure ----------------------------------------------

    @property
    def degrees(self) -> list[int]:
        if self._degrees is None:
            self._degrees = [len(a) for a in self.adj]
        return self._degrees

    @property
    def support(self) -> list[set[int]]:
        """Per-vertex set of distinct neighbors (parallel edges collapsed)."""
        if self._support is None:
            self._support = [set(u for u, _ in a) for a in self.adj]
        return self._support

    def multiplicity(self, u: int, v: int) -> int:
        self._check_vertex(u)
        self._check_vertex(v)
        return sum(1 for w, _ in self.adj[u] if w == v)

    def cut_degree(self, members: Iterable[int]) -> int:
        """|E(X, V-X)| counting multiplicities."""
        inside = self._as_set(members)
        return sum(1 for u, v in self.edges if (u in inside) != (v in inside))

    def induced(self, members: Iterable[int]) -> tuple["Multigraph", dict[int, int]]:
        """Subgraph induced by X, vertices relabeled 0..|X|-1 ascending.

        Returns the new graph and the old->new relabeling map.
        """
        ordered = sorted(self._as_set(members))
        relabel = {v: i for i, v in enumerate(ordered)}
        kept = [
            (relabel[u], relabel[v])
            for u, v in self.edges
            if u in relabel and v in relabel
        ]
        return Multigraph(len(ordered), kept), relabel

    def contract(self, members: Iterable[int]) -> ContractionResult:
        """Contract X into a single new vertex v_X, placed last.

        Surviving original vertices keep their relative order and occupy
        ids 0..n-|X|-1; v_X gets the final id.  Internal edges of X are
        deleted; each crossing edge is retained with its origin recorded,
        so parallel edges arising from distinct origins stay distinct.
        """
        inside = self._as_set(members)
        if not inside:
            raise InvalidInput("cannot contract an empty vertex set")
        survivors = [v for v in range(self.n) if v not in inside]
        vx = len(survivors)
        vertex_map = [0] * self.n
        for i, v in enumerate(survivors):
            vertex_map[v] = i
        for v in inside:
            vertex_map[v] = vx
        new_edges = []
        edge_origin = []
        for eid, (u, v) in enumerate(self.edges):
            nu, nv = vertex_map[u], vertex_map[v]
            if nu == nv:
                continue
            new_edges.append((nu, nv))
            edge_origin.append(eid)
        return ContractionResult(Multigraph(vx + 1, new_edges), vertex_map, edge_origin)

    def truncate(self, d: int) -> "Multigraph":
        """G|d: delete every edge incident to a vertex of degree > d."""
        if d < 0:
            raise InvalidInput("degree bound must be nonnegative")
        degs = self.degrees
        kept = [(u, v) for u, v in self.edges if degs[u] <= d and degs[v] <= d]
        return Multigraph(self.n, kept)

    def truncate_with_origin(self, d: int) -> tuple["Multigraph", list[int]]:
        """G|d plus the map from surviving edge ids to original ids."""
        if d < 0:
            raise InvalidInput("degree bound must be nonnegative")
        degs = self.degrees
        kept, origin = [], []
        for eid, (u, v) in enumerate(self.edges):
            if degs[u] <= d and degs[v] <= d:
                kept.append((u, v))
                origin.append(eid)
        return Multigraph(self.n, kept), origin

    def cluster_coefficient(self) -> float:
        """Mean local cluster coefficient over all vertices.

        Both the numerator (edges among neighbors) and the neighborhood
        size use the support graph, keeping each local value in [0, 1];
        vertices with fewer than two distinct neighbors contribute 0.
        """
        if self.n == 0:
            raise InvalidInput("cluster coefficient undefined on empty graph")
        support = self.support
        total = 0.0
        for v in range(self.n):
            nbrs = support[v]
            k = len(nbrs)
            if k < 2:
                continue
            closed = sum(len(support[u] & nbrs) for u in nbrs) // 2
            total += closed / (k * (k - 1) / 2)
        return total / self.n

    def connected_components(self) -> list[list[int]]:
        """Components as sorted member lists, ordered by minimum member."""
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y, _ in self.adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        comp.append(y)
                        queue.append(y)
            comp.sort()
            out.append(comp)
        return out

    # -- helpers ----------------------------------------------------------

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise InvalidVertex(f"vertex {v} out of range 0..{self.n - 1}")

    def _as_set(self, members: Iterable[int]) -> set[int]:
        s = set(members)
        for v in s:
            self._check_vertex(v)
        return s

    def relabeled(self, perm: Sequence[int]) -> "Multigraph":
        """Copy with vertex v renamed perm[v]; edge order preserved."""
        if sorted(perm) != list(range(self.n)):
            raise InvalidInput("relabeling must be a permutation of 0..n-1")
        return Multigraph(self.n, [(perm[u], perm[v]) for u, v in self.edges])

    def __eq__(self, other):
        return (
            isinstance(other, Multigraph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.n, tuple(self.edges)))

    def __repr__(self):
        return f"Multigraph(n={self.n}, m={self.m})"


# -- edge-list file format -------------------------------------------------
#
# First line "n m", then m lines "u v" (0-based, u != v); a repeated line
# denotes one more parallel edge.  Rejected on self-loops, bad ids, or a
# line count that disagrees with the header.


def parse_edge_list(text: str) -> Multigraph:
    lines = text.splitlines()
    rows = [(i + 1, ln.strip()) for i, ln in enumerate(lines)]
    rows = [(no, ln) for no, ln in rows if ln and not ln.startswith("#")]
    if not rows:
        raise EdgeListFormatError(1, "missing header line 'n m'")
    no, header = rows[0]
    parts = header.split()
    if len(parts) != 2:
        raise EdgeListFormatError(no, f"expected 'n m', got {header!r}")
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise EdgeListFormatError(no, f"non-integer header {header!r}") from None
    if n < 0 or m < 0:
        raise EdgeListFormatError(no, "negative n or m")
    edges = []
    for no, ln in rows[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise EdgeListFormatError(no, f"expected 'u v', got {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListFormatError(no, f"non-integer endpoints {ln!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise EdgeListFormatError(no, f"vertex id out of range in {ln!r}")
        if u == v:
            raise EdgeListFormatError(no, f"self-loop {u} {v}")
        edges.append((u, v))
    if len(edges) != m:
        raise EdgeListFormatError(
            rows[0][0], f"header declares {m} edges, file has {len(edges)}"
        )
    return Multigraph(n, edges)


def load_edge_list(path) -> Multigraph:
    with open(path, "r", encoding="ascii") as fh:
        return parse_edge_list(fh.read())


def format_edge_list(g: Multigraph) -> str:
    out = [f"{g.n} {g.m}"]
    out.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(out) + "\n"


def save_edge_list(g: Multigraph, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_edge_list(g))
