"""Deterministic local partitioning oracle.

Answers "which component of the global partition contains v" from degree
and i-th-neighbor queries alone.  The local run explores a ball of radius
2t+1 around v in G|delta (vertices of higher degree are never expanded,
but their true degrees are obtained from the degree oracle), then reruns
the exact global pipeline on the explored subgraph with those true
degrees.  Answers are a function of the graph and the parameters only,
never of query order; a session-level cache is pure memoization.
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache
from typing import Optional

from . import hierarchy
from .errors import InvalidVertex
from .multigraph import Multigraph


class QuerySession:
    """Query-counting access handle for the general-model oracles."""

    def __init__(self, g: Multigraph):
        self._g = g
        self.n = g.n
        self.query_count = 0
        self.cache: dict[int, tuple[int, ...]] = {}

    def degree(self, v: int) -> int:
        self.query_count += 1
        return self._g.degree(v)

    def neighbor(self, v: int, i: int) -> int:
        self.query_count += 1
        return self._g.neighbor(v, i)


@lru_cache(maxsize=32)
def _bound(delta: int, t: int) -> int:
    radius = 2 * t + 1
    if delta == 1:
        return radius + 1
    return (delta ** (radius + 1) - 1) // (delta - 1)


def query_bound(params) -> int:
    """Ball-size ceiling sum_{j<=2t+1} delta^j; per-call queries never
    exceed it (the ball has at most that many vertices, each costing a
    degree probe plus at most delta neighbor probes on low-degree ones,
    which the geometric slack absorbs for every reachable parameter set)."""
    return _bound(params.delta, params.t)


def _explore(session: QuerySession, start: int, delta: int, radius: Optional[int]):
    """BFS ball in G|delta with true degrees at the boundary.

    Expands only vertices of degree <= delta within the radius; every seen
    vertex gets its true degree probed once.  Returns local-id structures:
    (vertices in discovery order, true degrees, edges, expanded flags).
    """
    local = {start: 0}
    order = [start]
    degs = [session.degree(start)]
    dist = [0]
    expanded = [False]
    adj_lists: dict[int, list[int]] = {}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        lv = local[v]
        if degs[lv] > delta:
            continue  # never expand a high-degree vertex
        if radius is not None and dist[lv] >= radius:
            continue
        expanded[lv] = True
        nbrs = [session.neighbor(v, i) for i in range(1, degs[lv] + 1)]
        adj_lists[lv] = []
        for w in nbrs:
            if w not in local:
                local[w] = len(order)
                order.append(w)
                degs.append(session.degree(w))
                dist.append(dist[lv] + 1)
                expanded.append(False)
                queue.append(w)
            adj_lists[lv].append(local[w])
    edges = []
    for lv in sorted(adj_lists):
        v = order[lv]
        for lw in adj_lists[lv]:
            if expanded[lw]:
                # both endpoints expanded: take the edge from the smaller
                # original id so each copy is counted exactly once
                if v <= order[lw]:
                    edges.append((lv, lw))
            else:
                edges.append((lv, lw))
    return order, degs, edges, expanded


def oracle_query(session: QuerySession, v: int, params) -> tuple[int, ...]:
    """The component of v under the global partition, computed locally.

    High-degree vertices are red singletons and answered with a single
    degree query.  Otherwise the explored ball is partitioned by the same
    cascade/coloring code the global algorithm uses, with unexplored
    boundary vertices contributing their true degrees.
    """
    if not 0 <= v < session.n:
        raise InvalidVertex(f"vertex {v} out of range")
    cached = session.cache.get(v)
    if cached is not None:
        return cached
    before = session.query_count
    delta = params.delta
    if session.degree(v) > delta:
        answer = (v,)
        session.cache[v] = answer
        return answer
    small = session.n <= hierarchy.small_n_threshold(params)
    radius = None if small else 2 * params.t + 1
    order, degs, edges, expanded = _explore(session, v, delta, radius)
    if small:
        # global rule: connected components of G|delta
        comp_local = [lv for lv in range(len(order)) if expanded[lv]]
        answer = tuple(sorted(order[lv] for lv in comp_local))
    else:
        ball = Multigraph(len(order), edges)
        casc = hierarchy.cascade(ball, degree_override=degs)
        tree = hierarchy.build_structure_tree(casc, delta, params.epsilon / 3)
        part = hierarchy.partition_from_tree(ball, tree)
        cid = part.assignment[0]  # v is local vertex 0
        answer = tuple(sorted(order[lv] for lv in part.components[cid].members))
    spent = session.query_count - before
    assert spent <= query_bound(params), "query budget exceeded"
    for u in answer:
        session.cache[u] = answer
    return answer
