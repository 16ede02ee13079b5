"""Checkable outputs: negative-cycle certificates and potential bounds."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InternalError
from .graph import Graph, WeightView, as_view


@dataclass(frozen=True)
class NegCycleCertificate:
    """A closed walk (edge ids) whose total original weight is negative."""

    edges: tuple[int, ...]
    weight: int

    def __len__(self):
        return len(self.edges)

    def vertices(self, g: Graph) -> list[int]:
        return [int(g.src[e]) for e in self.edges]


def walk_weight(g: Graph, edges) -> int:
    if len(edges) == 0:
        return 0
    return int(g.w[np.asarray(edges, dtype=np.int64)].sum())


def is_closed_walk(g: Graph, edges) -> bool:
    if len(edges) == 0:
        return False
    idx = np.asarray(edges, dtype=np.int64)
    if idx.min() < 0 or idx.max() >= g.m:
        return False
    heads = g.dst[idx]
    tails = np.roll(g.src[idx], -1)
    return bool(np.all(heads == tails))


def find_negative_cycle(g: Graph, edges, start: int | None = None) -> list[int] | None:
    """First simple negative cycle met while scanning the walk ``edges``.

    Each time the walk returns to a vertex still on the stack, the closed
    segment is tested and then dropped.  On a closed walk of negative total
    one of these segments is negative, so the result is never ``None`` there.
    """
    if not edges:
        return None
    cur = int(g.src[edges[0]]) if start is None else start
    stack: list[int] = []
    pos = {cur: 0}
    for e in edges:
        e = int(e)
        stack.append(e)
        cur = int(g.dst[e])
        k = pos.get(cur)
        if k is None:
            pos[cur] = len(stack)
            continue
        cycle = stack[k:]
        if walk_weight(g, cycle) < 0:
            return cycle
        for x in cycle[:-1]:
            pos.pop(int(g.dst[x]), None)
        del stack[k:]
    return None


def make_certificate(g: Graph, edges, simplify: bool = True) -> NegCycleCertificate:
    """Certificate for a closed walk, checked before it is returned.

    With ``simplify`` the walk is reduced to one of its simple negative cycles.
    """
    edges = [int(e) for e in edges]
    if not is_closed_walk(g, edges):
        raise InternalError("certificate edges do not form a closed walk")
    total = walk_weight(g, edges)
    if total >= 0:
        raise InternalError(f"certificate walk has weight {total} >= 0")
    if simplify:
        edges = find_negative_cycle(g, edges)
        total = walk_weight(g, edges)
    cert = NegCycleCertificate(tuple(edges), total)
    if not verify_cycle(g, cert):
        raise InternalError("certificate failed verification")
    return cert


def verify_cycle(g: Graph, cert) -> bool:
    """Edges exist, chain head-to-tail into a closed walk, and sum below 0."""
    edges = cert.edges if isinstance(cert, NegCycleCertificate) else tuple(cert)
    if not is_closed_walk(g, edges):
        return False
    total = walk_weight(g, edges)
    if isinstance(cert, NegCycleCertificate) and cert.weight != total:
        return False
    return total < 0


def verify_potential(g: Graph | WeightView, phi, bound: int) -> bool:
    """Every edge weighs at least ``bound`` after reweighting by ``phi``."""
    view = as_view(g)
    phi = np.asarray(phi, dtype=np.int64)
    if phi.shape != (view.graph.n,):
        return False
    gr = view.graph
    w = view.weights() + phi[gr.src] - phi[gr.dst]
    return bool(gr.m == 0 or int(w.min()) >= bound)
