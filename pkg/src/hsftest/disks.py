"""Bounded disks, canonical forms for small rooted multigraphs, and
frequency vectors of disk isomorphism classes.

A (d,t)-disk around v is the subgraph of G|d induced by the vertices
within distance t of v, rooted at v.  Disks are keyed by a canonical byte
code: the lexicographically smallest adjacency-multiplicity matrix over a
refinement-pruned family of root-fixing vertex orderings.  Two rooted
multigraphs receive equal codes exactly when a root-preserving isomorphism
exists, which is what the frequency machinery needs.
"""

from __future__ import annotations

import base64
import json
import random
from collections import Counter, deque
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement, permutations, product
from typing import Iterable, Optional

from .errors import DiskTooLarge, IncompatibleVectors, InvalidInput, TooLarge
from .multigraph import Multigraph

_ORDERING_LIMIT = 500_000  # candidate orderings tried before giving up


@dataclass(frozen=True)
class RootedMultigraph:
    """A connected multigraph with a marked root vertex."""

    graph: Multigraph
    root: int

    def __post_init__(self):
        g = self.graph
        g._check_vertex(self.root)
        if g.n:
            seen = {self.root}
            queue = deque([self.root])
            while queue:
                x = queue.popleft()
                for y, _ in g.adj[x]:
                    if y not in seen:
                        seen.add(y)
                        queue.append(y)
            if len(seen) != g.n:
                raise InvalidInput("rooted multigraph must be connected")


def _mult_matrix(g: Multigraph) -> list[list[int]]:
    m = [[0] * g.n for _ in range(g.n)]
    for u, v in g.edges:
        m[u][v] += 1
        m[v][u] += 1
    return m


def _refine(g: Multigraph, mult, root: Optional[int]) -> list[int]:
    """Iterated neighborhood refinement; returns canonical color ranks."""
    n = g.n
    sig = [
        (v == root, len(g.adj[v]), tuple(sorted(mult[v][u] for u in g.support[v])))
        for v in range(n)
    ]
    ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
    colors = [ranks[s] for s in sig]
    while True:
        sig2 = [
            (colors[v], tuple(sorted((mult[v][u], colors[u]) for u in g.support[v])))
            for v in range(n)
        ]
        ranks2 = {s: i for i, s in enumerate(sorted(set(sig2)))}
        new_colors = [ranks2[s] for s in sig2]
        if len(set(new_colors)) == len(set(colors)):
            return new_colors
        colors = new_colors


def _interchangeable(cls: list[int], others: Iterable[int], mult) -> bool:
    """True when any ordering of cls leaves the matrix unchanged."""
    first = cls[0]
    for v in cls[1:]:
        if any(mult[first][w] != mult[v][w] for w in others):
            return False
    inner = {mult[u][v] for u, v in combinations(cls, 2)}
    return len(inner) <= 1


def _min_code(g: Multigraph, root: Optional[int], cap: int) -> bytes:
    if g.n > cap:
        raise DiskTooLarge(f"{g.n} vertices exceeds the cap of {cap}")
    if g.n == 0:
        return b"\x00"
    mult = _mult_matrix(g)
    if any(x > 255 for row in mult for x in row):
        raise DiskTooLarge("edge multiplicity beyond byte range")
    colors = _refine(g, mult, root)
    classes: dict[int, list[int]] = {}
    for v in range(g.n):
        classes.setdefault(colors[v], []).append(v)
    ordered = [classes[c] for c in sorted(classes)]
    pools = []
    total = 1
    for cls in ordered:
        others = [w for w in range(g.n) if w not in cls]
        if len(cls) == 1 or _interchangeable(cls, others, mult):
            pools.append([tuple(cls)])
        else:
            perms = list(permutations(cls))
            pools.append(perms)
            total *= len(perms)
            if total > _ORDERING_LIMIT:
                raise DiskTooLarge("too many candidate orderings")
    best = None
    n = g.n
    for combo in product(*pools):
        order = [v for grp in combo for v in grp]
        buf = bytearray([n])
        for u in order:
            row = mult[u]
            buf.extend(row[v] for v in order)
        code = bytes(buf)
        if best is None or code < best:
            best = code
    return best


def canonical_code(r: RootedMultigraph, cap: int = 64) -> bytes:
    """Canonical byte string of a rooted multigraph; equal codes iff
    isomorphic with roots identified."""
    return _min_code(r.graph, r.root, cap)


def canonical_form(g: Multigraph, cap: int = 64) -> bytes:
    """Unrooted canonical form (used for whole-graph comparisons)."""
    return _min_code(g, None, cap)


# -- disk extraction ---------------------------------------------------------


def disk(g: Multigraph, v: int, d: int, t: int) -> RootedMultigraph:
    """B(v, d, t): the subgraph of G|d induced by vertices at distance at
    most t from v, rooted at v; a high-degree root yields a bare vertex."""
    g._check_vertex(v)
    degs = g.degrees
    if degs[v] > d or t == 0:
        return RootedMultigraph(Multigraph(1, []), 0)
    dist = {v: 0}
    order = [v]
    queue = deque([v])
    while queue:
        x = queue.popleft()
        if dist[x] >= t:
            continue
        for y, _ in g.adj[x]:
            if y not in dist and degs[y] <= d:
                dist[y] = dist[x] + 1
                order.append(y)
                queue.append(y)
    local = {u: i for i, u in enumerate(order)}
    edges = []
    for u in order:
        for w, _ in g.adj[u]:
            if w in local and degs[w] <= d and u <= w:
                edges.append((local[u], local[w]))
    return RootedMultigraph(Multigraph(len(order), edges), 0)


def _disk_via_queries(session, v: int, d: int, t: int) -> RootedMultigraph:
    deg_v = session.degree(v)
    if deg_v > d or t == 0:
        return RootedMultigraph(Multigraph(1, []), 0)
    dist = {v: 0}
    order = [v]
    degs = {v: deg_v}
    lists: dict[int, list[int]] = {}
    queue = deque([v])
    while queue:
        x = queue.popleft()
        nbrs = [session.neighbor(x, i) for i in range(1, degs[x] + 1)]
        lists[x] = nbrs
        if dist[x] >= t:
            continue
        for y in nbrs:
            if y not in degs:
                degs[y] = session.degree(y)
            if y not in dist and degs[y] <= d:
                dist[y] = dist[x] + 1
                order.append(y)
                queue.append(y)
    local = {u: i for i, u in enumerate(order)}
    edges = []
    for u in order:
        for w in lists.get(u, ()):
            if w in local and degs[w] <= d and u <= w:
                edges.append((local[u], local[w]))
    return RootedMultigraph(Multigraph(len(order), edges), 0)


# -- frequency vectors -------------------------------------------------------


@dataclass
class FreqVector:
    """Distribution of disk isomorphism classes; exact when sample_size=0."""

    d: int
    t: int
    sample_size: int
    entries: dict[bytes, float] = field(default_factory=dict)

    def total(self) -> float:
        return sum(self.entries.values())

    def to_json(self) -> str:
        items = sorted(self.entries.items())
        return json.dumps({
            "d": self.d, "t": self.t, "sampleSize": self.sample_size,
            "entries": [
                {"code": base64.b64encode(code).decode("ascii"), "freq": freq}
                for code, freq in items
            ],
        })

    @classmethod
    def from_json(cls, text: str) -> "FreqVector":
        raw = json.loads(text)
        entries = {
            base64.b64decode(e["code"]): float(e["freq"]) for e in raw["entries"]
        }
        return cls(int(raw["d"]), int(raw["t"]), int(raw["sampleSize"]), entries)


class _CodeMemo:
    """Hash-consing cache: identical labeled disks share one code call."""

    def __init__(self, cap: int = 64):
        self.cap = cap
        self._store: dict[tuple, bytes] = {}

    def code(self, r: RootedMultigraph) -> bytes:
        key = (r.graph.n, tuple(r.graph.edges))
        got = self._store.get(key)
        if got is None:
            got = canonical_code(r, self.cap)
            self._store[key] = got
        return got


def disk_distribution(g: Multigraph, d: int, t: int) -> FreqVector:
    """Exact frequency vector over all n roots of G|d."""
    if g.n == 0:
        raise InvalidInput("empty graph has no disk distribution")
    memo = _CodeMemo()
    counts: Counter = Counter()
    for v in range(g.n):
        counts[memo.code(disk(g, v, d, t))] += 1
    return FreqVector(d, t, 0, {c: k / g.n for c, k in counts.items()})


def sampled_freq(
    session, d: int, t: int, s: int, seed: int, replace: bool = True
) -> FreqVector:
    """Empirical frequency over s seeded root draws via query access.

    The seeded generator fixes the full root list up front, so results are
    independent of evaluation order; without replacement and s = n this
    reproduces the exact distribution.
    """
    if s < 1:
        raise InvalidInput("sample count must be positive")
    rng = random.Random(seed)
    if replace:
        roots = [rng.randrange(session.n) for _ in range(s)]
    else:
        if s > session.n:
            raise InvalidInput("cannot sample more roots than vertices")
        roots = rng.sample(range(session.n), s)
    memo = _CodeMemo()
    counts: Counter = Counter()
    for v in roots:
        counts[memo.code(_disk_via_queries(session, v, d, t))] += 1
    return FreqVector(d, t, s, {c: k / s for c, k in counts.items()})


def l1_distance(a: FreqVector, b: FreqVector) -> float:
    if (a.d, a.t) != (b.d, b.t):
        raise IncompatibleVectors(f"({a.d},{a.t}) vs ({b.d},{b.t})")
    keys = set(a.entries) | set(b.entries)
    return sum(abs(a.entries.get(k, 0.0) - b.entries.get(k, 0.0)) for k in keys)


# -- brute enumeration of rooted classes (N(d,t)) ----------------------------


def count_rooted_classes(d: int, t: int, max_mult: Optional[int] = None, max_n: int = 8) -> int:
    """N(d,t): rooted multigraphs with max degree d and radius at most t,
    per-pair multiplicity capped at d (the degree bound forces that
    anyway), counted up to root-preserving isomorphism."""
    mm = d if max_mult is None else max_mult
    # radius-t balls with degree bound d cannot exceed this order
    if d <= 1:
        ball = 2
    elif d == 2:
        ball = 2 * t + 1
    else:
        ball = 1 + d * ((d - 1) ** t - 1) // (d - 2)
    codes = set()
    for n in range(1, min(max_n, ball) + 1):
        pairs = list(combinations_with_replacement(range(n), 2))
        pairs = [(u, v) for u, v in pairs if u != v]
        if (mm + 1) ** len(pairs) > 2_000_000:
            raise TooLarge("rooted-class enumeration beyond desk scale")
        for assignment in product(range(mm + 1), repeat=len(pairs)):
            deg = [0] * n
            edges = []
            ok = True
            for (u, v), k in zip(pairs, assignment):
                deg[u] += k
                deg[v] += k
                if deg[u] > d or deg[v] > d:
                    ok = False
                    break
                edges.extend([(u, v)] * k)
            if not ok:
                continue
            g = Multigraph(n, edges)
            dist = {0: 0}
            queue = deque([0])
            while queue:
                x = queue.popleft()
                for y, _ in g.adj[x]:
                    if y not in dist:
                        dist[y] = dist[x] + 1
                        queue.append(y)
            if len(dist) != n or any(val > t for val in dist.values()):
                continue
            codes.add(canonical_code(RootedMultigraph(g, 0)))
    return len(codes)
