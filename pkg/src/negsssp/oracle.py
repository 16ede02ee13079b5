"""Textbook Bellman-Ford, kept deliberately independent of the fast path.

O(nm); meant for cross-checking at test scale.
"""
from __future__ import annotations

import numpy as np

from .certificate import NegCycleCertificate, make_certificate
from .driver import UNREACHABLE, ShortestPathTree
from .graph import Graph


def oracle_bellman_ford(g: Graph, source: int | None = None):
    """Distances from ``source`` (or from an implicit source joined to every
    vertex by a zero edge when ``source`` is None), or a negative cycle
    reachable from it."""
    n = g.n
    edges = list(g.edges())
    INF = None
    dist = [INF] * n
    parent = [-1] * n
    if source is None:
        dist = [0] * n
    else:
        dist[source] = 0
    last = -1
    for _ in range(n):
        last = -1
        for e, (u, v, w) in enumerate(edges):
            if dist[u] is None:
                continue
            nd = dist[u] + w
            if dist[v] is None or nd < dist[v]:
                dist[v] = nd
                parent[v] = e
                last = v
        if last == -1:
            break
    if last != -1:
        # walk back n steps to land on the cycle, then collect it
        v = last
        for _ in range(n):
            v = edges[parent[v]][0]
        cycle = []
        x = v
        while True:
            e = parent[x]
            cycle.append(e)
            x = edges[e][0]
            if x == v:
                break
        cycle.reverse()
        return make_certificate(g, cycle, simplify=False)
    arr = np.array([UNREACHABLE if d is None else d for d in dist], dtype=np.int64)
    par = np.array(parent, dtype=np.int64)
    if source is not None:
        par[source] = -1
    return ShortestPathTree(-1 if source is None else source, arr, par)


def has_negative_cycle(g: Graph) -> bool:
    return isinstance(oracle_bellman_ford(g), NegCycleCertificate)
