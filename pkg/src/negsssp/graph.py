"""Graph substrate: immutable edge lists, weight views, SCCs and Dijkstra."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import _kernels
from .errors import ContractError, LoadError

INF = int(_kernels.INF)
_INT64_MAX = np.iinfo(np.int64).max


class OpCounter:
    """Deterministic work meter shared by one solve.

    Raises ``BudgetExceeded`` from :meth:`add` once ``limit`` is passed.
    """

    def __init__(self, limit: int | None = None):
        self.ops = 0
        self.limit = limit

    def add(self, k: int) -> None:
        self.ops += int(k)
        if self.limit is not None and self.ops > self.limit:
            from .errors import BudgetExceeded

            raise BudgetExceeded(f"{self.ops} operations > budget {self.limit}")


def _as_i64(a) -> np.ndarray:
    arr = np.ascontiguousarray(a, dtype=np.int64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Graph:
    """Directed multigraph on vertices ``0..n-1`` with int64 weights.

    Edge ``i`` is ``src[i] -> dst[i]`` with weight ``w[i]``; edge ids are the
    positions in these arrays.  Self-loops and parallel edges are allowed.
    """

    n: int
    src: np.ndarray
    dst: np.ndarray
    w: np.ndarray
    check_overflow: bool = field(default=True, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "src", _as_i64(self.src))
        object.__setattr__(self, "dst", _as_i64(self.dst))
        object.__setattr__(self, "w", _as_i64(self.w))
        if self.n < 1:
            raise LoadError("graph needs at least one vertex")
        if not (self.src.shape == self.dst.shape == self.w.shape) or self.src.ndim != 1:
            raise LoadError("src, dst and w must be 1-d arrays of equal length")
        if self.m and (min(self.src.min(), self.dst.min()) < 0
                       or max(self.src.max(), self.dst.max()) >= self.n):
            raise LoadError("edge endpoint out of range")
        if self.check_overflow and self.m:
            bound = int(np.abs(self.w).max()) * 2 * self.n * (self.n + 1)
            if bound > _INT64_MAX // 8:
                raise LoadError(
                    f"weights too large for n={self.n}: max|w|*2n(n+1) = {bound} overflows int64")

    @classmethod
    def from_edges(cls, n: int, edges, **kw) -> "Graph":
        """Build from an iterable of ``(u, v, w)`` triples."""
        arr = np.array(list(edges), dtype=np.int64).reshape(-1, 3)
        return cls(n, arr[:, 0], arr[:, 1], arr[:, 2], **kw)

    @property
    def m(self) -> int:
        return int(self.src.size)

    def edges(self):
        return zip(self.src.tolist(), self.dst.tolist(), self.w.tolist())

    @cached_property
    def out_csr(self) -> tuple[np.ndarray, np.ndarray]:
        return _csr(self.n, self.src)

    @cached_property
    def in_csr(self) -> tuple[np.ndarray, np.ndarray]:
        return _csr(self.n, self.dst)

    def out_edges(self, v: int) -> np.ndarray:
        ptr, eids = self.out_csr
        return eids[ptr[v]:ptr[v + 1]]

    def in_edges(self, v: int) -> np.ndarray:
        ptr, eids = self.in_csr
        return eids[ptr[v]:ptr[v + 1]]

    def with_weights(self, w) -> "Graph":
        """Same topology, new weights.  CSR indices are shared."""
        g = Graph(self.n, self.src, self.dst, w, check_overflow=False)
        for name in ("out_csr", "in_csr"):
            if name in self.__dict__:
                g.__dict__[name] = self.__dict__[name]
        return g

    def induced(self, vertices: np.ndarray, edge_ok: np.ndarray | None = None):
        """Subgraph on ``vertices`` (sorted global ids).

        Returns ``(sub, edge_ids)`` where ``sub`` uses local ids (position in
        ``vertices``) and ``edge_ids[i]`` is the global id of local edge ``i``.
        ``edge_ok`` optionally masks out edges of this graph.
        """
        vertices = np.asarray(vertices, dtype=np.int64)
        local = np.full(self.n, -1, np.int64)
        local[vertices] = np.arange(vertices.size)
        keep = (local[self.src] >= 0) & (local[self.dst] >= 0)
        if edge_ok is not None:
            keep &= edge_ok
        eids = np.flatnonzero(keep)
        sub = Graph(vertices.size, local[self.src[eids]], local[self.dst[eids]],
                    self.w[eids], check_overflow=False)
        return sub, eids


def _csr(n: int, key: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    order = np.argsort(key, kind="stable").astype(np.int64)
    ptr = np.zeros(n + 1, np.int64)
    np.cumsum(np.bincount(key, minlength=n), out=ptr[1:])
    order.setflags(write=False)
    ptr.setflags(write=False)
    return ptr, order


# ---------------------------------------------------------------- weight views


@dataclass(frozen=True, eq=False)
class WeightView:
    """Lazy weight function over a graph's edges.

    Applied in the order shift, reweight, clamp:
    ``max(w + shift + phi[src] - phi[dst], 0)`` when every part is present.
    """

    graph: Graph
    shift: int = 0
    phi: np.ndarray | None = None
    clamp: bool = False

    def weight(self, e: int) -> int:
        g = self.graph
        val = int(g.w[e]) + self.shift
        if self.phi is not None:
            val += int(self.phi[g.src[e]]) - int(self.phi[g.dst[e]])
        return max(val, 0) if self.clamp else val

    def weights(self) -> np.ndarray:
        """Materialize all edge weights as an int64 array."""
        g = self.graph
        out = g.w + np.int64(self.shift) if self.shift else g.w.copy()
        if self.phi is not None:
            out = out + self.phi[g.src] - self.phi[g.dst]
        if self.clamp:
            out = np.maximum(out, 0)
        return out

    def path_weight(self, edges) -> int:
        return int(sum(self.weight(int(e)) for e in edges))

    def materialize(self) -> Graph:
        return self.graph.with_weights(self.weights())


def as_view(g: Graph | WeightView) -> WeightView:
    return g if isinstance(g, WeightView) else WeightView(g)


def reweight(g: Graph | WeightView, phi) -> WeightView:
    """``w(uv) + phi(u) - phi(v)`` on every edge."""
    view = as_view(g)
    phi = np.asarray(phi, dtype=np.int64)
    if phi.shape != (view.graph.n,):
        raise ContractError(f"potential must have length {view.graph.n}")
    if view.clamp:
        raise ContractError("cannot reweight a clamped view")
    if view.phi is not None:
        phi = view.phi + phi
    return WeightView(view.graph, view.shift, phi, False)


def nonneg_view(g: Graph | WeightView) -> WeightView:
    """Negative weights read as 0."""
    view = as_view(g)
    return WeightView(view.graph, view.shift, view.phi, True)


def shift_weights(g: Graph | WeightView, delta: int) -> WeightView:
    """``w + delta`` on every edge; rejected if any shifted weight overflows."""
    view = as_view(g)
    if view.phi is not None or view.clamp:
        raise ContractError("shift must be applied to the raw weights")
    total = view.shift + int(delta)
    g = view.graph
    if g.m and (int(g.w.max()) + total > _INT64_MAX or int(g.w.min()) + total < -_INT64_MAX):
        raise LoadError("shifted weights overflow int64")
    return WeightView(g, total)


# --------------------------------------------------------------------- SCC


def scc(g: Graph, vertices=None, removed=None) -> list[list[int]]:
    """Strongly connected components of ``g`` restricted to ``vertices`` with
    the edge ids in ``removed`` deleted.

    Components come back in topological order of the condensation, each as a
    sorted list of (global) vertex ids.
    """
    mask = np.zeros(g.m, np.bool_)
    if removed is not None:
        mask[np.asarray(list(removed), dtype=np.int64)] = True
    if vertices is None:
        sub, eids, vmap = g, np.arange(g.m), np.arange(g.n)
    else:
        vmap = np.unique(np.asarray(list(vertices), dtype=np.int64))
        sub, eids = g.induced(vmap)
    ptr, order = sub.out_csr
    comp, ncomp, _ = _kernels.tarjan(ptr, order, sub.dst, mask[eids])
    groups: list[list[int]] = [[] for _ in range(ncomp)]
    for v, c in enumerate(comp.tolist()):
        groups[c].append(int(vmap[v]))
    return groups


def scc_labels(g: Graph, removed_mask: np.ndarray | None = None,
               counter: OpCounter | None = None) -> tuple[np.ndarray, int]:
    """Array form of :func:`scc`: topological component label per vertex."""
    if removed_mask is None:
        removed_mask = np.zeros(g.m, np.bool_)
    ptr, order = g.out_csr
    comp, ncomp, ops = _kernels.tarjan(ptr, order, g.dst, removed_mask)
    if counter is not None:
        counter.add(ops)
    return comp, int(ncomp)


# ---------------------------------------------------------------- Dijkstra


def dijkstra(view: Graph | WeightView, sources, target: int | None = None,
             radius: int | None = None, reverse: bool = False,
             weights: np.ndarray | None = None, counter: OpCounter | None = None):
    """Shortest distances from a source set under nonnegative weights.

    ``sources`` is an iterable of vertices or a ``{vertex: initial label}``
    mapping.  Vertices farther than ``radius`` are left at ``INF``; with
    ``target`` the search stops once the target is settled (other labels may
    then be partial).  ``reverse=True`` searches along in-edges, giving
    distances *to* the sources.

    Returns ``(dist, parent_edge)``; unreached vertices have ``INF`` / ``-1``.
    """
    view = as_view(view)
    g = view.graph
    wt = view.weights() if weights is None else weights
    if g.m and int(wt.min()) < 0:
        raise ContractError("dijkstra needs nonnegative weights")
    init = np.full(g.n, INF, np.int64)
    if isinstance(sources, dict):
        for v, lab in sources.items():
            init[v] = lab
    else:
        init[np.asarray(list(sources), dtype=np.int64)] = 0
    ptr, eids = g.in_csr if reverse else g.out_csr
    other = g.src if reverse else g.dst
    cap = -1 if radius is None else int(radius)
    tgt = -1 if target is None else int(target)
    dist, pedge, _, ops = _kernels.dijkstra(ptr, eids, other, wt, init, cap, tgt)
    if counter is not None:
        counter.add(ops)
    return dist, pedge


def path_to(g: Graph, pedge: np.ndarray, v: int, reverse: bool = False) -> list[int]:
    """Edge ids of the search-tree path ending at ``v`` (starting at ``v`` when
    the tree came from a reversed search)."""
    path = []
    seen = 0
    while pedge[v] >= 0:
        e = int(pedge[v])
        path.append(e)
        v = int(g.dst[e]) if reverse else int(g.src[e])
        seen += 1
        if seen > g.n:
            raise ContractError("parent pointers contain a cycle")
    if not reverse:
        path.reverse()
    return path
