"""Bellman-Ford/Dijkstra hybrid with auxiliary path weights.

There is no explicit source: every vertex may start a path, so the answer
for ``v`` is the minimum weight of any path ending at ``v`` (the empty path
gives 0).  Iteration ``i`` is a Dijkstra pass over the edges that are
nonnegative under the potential followed by one synchronous Bellman-Ford
round over the negative ones; after the ``i``-th Dijkstra pass each label is
the best weight over paths with fewer than ``i`` negative edges.

Alongside each label the hybrid keeps the auxiliary weight of the very path
that realises it, and can stop at the first iteration where some recorded
path's auxiliary weight exceeds a threshold.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import ContractError, InternalError, NegativeCycleSuspected
from .graph import Graph, OpCounter, WeightView


_NO_CAP = 2**62


@dataclass(frozen=True)
class PathWitness:
    edges: tuple[int, ...]
    start: int
    end: int
    weight: int
    aux_weight: int

    def __len__(self):
        return len(self.edges)


@dataclass(frozen=True)
class Violation:
    vertex: int
    witness: PathWitness
    iteration: int


@dataclass
class HybridResult:
    """Outcome of :func:`bellman_ford_dijkstra`.

    ``dist`` holds plain (not reweighted) path weights, so it does not depend
    on the potential the run was guided by.  ``trace[i - 1]`` is the label
    vector after iteration ``i`` when tracing was requested.
    """

    status: str  # "completed" | "violated" | "exhausted"
    dist: np.ndarray
    aux: np.ndarray
    iterations: int
    violation: Violation | None = None
    trace: np.ndarray | None = None
    _graph: Graph = field(default=None, repr=False)
    _auxw: np.ndarray = field(default=None, repr=False)
    _rec: np.ndarray = field(default=None, repr=False)
    _rec_edge: np.ndarray = field(default=None, repr=False)
    _rec_prev: np.ndarray = field(default=None, repr=False)

    @property
    def completed(self) -> bool:
        return self.status == "completed"

    @property
    def parent(self) -> np.ndarray:
        """Last edge of each vertex's recorded path, -1 for the empty path."""
        out = np.full(self.dist.size, -1, np.int64)
        has = self._rec >= 0
        out[has] = self._rec_edge[self._rec[has]]
        return out

    def path(self, v: int) -> PathWitness:
        return recover_path(self, v)


def recover_path(state: HybridResult, v: int) -> PathWitness:
    """Rebuild the recorded path ending at ``v`` and check its totals."""
    g = state._graph
    edges = []
    r = int(state._rec[v])
    while r >= 0:
        edges.append(int(state._rec_edge[r]))
        prev = int(state._rec_prev[r])
        if prev >= r:
            raise InternalError("path records are not acyclic")
        r = prev
    edges.reverse()
    start = int(g.src[edges[0]]) if edges else int(v)
    if edges and int(g.dst[edges[-1]]) != v:
        raise InternalError("recorded path does not end at its vertex")
    idx = np.asarray(edges, dtype=np.int64)
    weight = int(g.w[idx].sum()) if edges else 0
    aux = int(state._auxw[idx].sum()) if edges else 0
    if weight != int(state.dist[v]) or aux != int(state.aux[v]):
        raise InternalError(
            f"witness totals ({weight}, {aux}) differ from labels "
            f"({int(state.dist[v])}, {int(state.aux[v])}) at vertex {v}")
    return PathWitness(tuple(edges), start, int(v), weight, aux)


def bellman_ford_dijkstra(g: Graph, phi=None, aux=None, threshold: int | None = None,
                          max_iters: int | None = None, trace: bool = False,
                          counter: OpCounter | None = None) -> HybridResult:
    """Shortest path ending at each vertex of ``g``, guided by potential ``phi``.

    ``aux`` gives per-edge auxiliary weights (array or view; zeros by default).
    With ``threshold`` set, the run stops with status ``"violated"`` at the
    first iteration in which a recorded path has auxiliary weight above it.

    Without ``max_iters`` and without ``threshold`` the run is capped at
    ``n + 1`` iterations, enough for any graph without negative cycles;
    hitting that cap raises :class:`NegativeCycleSuspected`.  With a
    threshold, every negative cycle should carry positive auxiliary weight
    so that laps around it eventually trip the threshold; a safety cap of
    ``n * (threshold + 2) + 1`` iterations raises the same error if that
    assumption is broken.  An explicit ``max_iters`` returns status
    ``"exhausted"`` instead.
    """
    n = g.n
    phi = np.zeros(n, np.int64) if phi is None else np.asarray(phi, dtype=np.int64)
    if phi.shape != (n,):
        raise ContractError(f"potential must have length {n}")
    if aux is None:
        auxw = np.zeros(g.m, np.int64)
    elif isinstance(aux, WeightView):
        auxw = aux.weights()
    else:
        auxw = np.asarray(aux, dtype=np.int64)
    if auxw.shape != (g.m,):
        raise ContractError("auxiliary weights must cover every edge")
    backstop = max_iters is None
    if max_iters is not None:
        iters = int(max_iters)
    elif threshold is None:
        iters = n + 1
    else:
        iters = min(_NO_CAP, n * (max(int(threshold), 0) + 2) + 1)
    if iters < 1:
        raise ContractError("max_iters must be at least 1")
    if trace and iters > n + 1:
        raise ContractError("tracing needs max_iters <= n + 1")
    wphi = g.w + phi[g.src] - phi[g.dst]
    ptr, eids = g.out_csr
    thr = -1 if threshold is None else int(threshold)
    if threshold is not None and thr < 0:
        raise ContractError("threshold must be nonnegative")
    (status, it, violator, d, auxd, rec, rec_edge, rec_prev, snaps, ops) = _kernels.hybrid(
        ptr, eids, g.dst, wphi, auxw, -phi, thr, iters, trace)
    if counter is not None:
        counter.add(ops)
    result = HybridResult(
        status=("completed", "violated", "exhausted")[status],
        dist=d + phi,
        aux=auxd,
        iterations=int(it),
        trace=(snaps + phi) if trace else None,
        _graph=g, _auxw=auxw, _rec=rec, _rec_edge=rec_edge, _rec_prev=rec_prev,
    )
    if status == 1:
        result.violation = Violation(int(violator), recover_path(result, int(violator)), int(it))
    elif status == 2 and backstop:
        raise NegativeCycleSuspected(f"no convergence after {iters} iterations")
    return result
