"""Single-source shortest paths with negative weights.

Weights are multiplied by 2n, then Scale is applied with W halving from the
first power of two covering the most negative weight down to 2.  The summed
potentials leave every scaled weight at least -1, so adding 1 per edge gives
nonnegative weights whose shortest paths are shortest in the original graph
(path weights are multiples of 2n while a simple path picks up fewer than
2n units).  Dijkstra on those weights builds the tree, which is then checked
edge by edge.

Each Scale call is a Las Vegas attempt with its own seed and an operation
budget of ``2T``; attempts that run over, or whose output fails its check,
are restarted with the next seed.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .certificate import NegCycleCertificate, make_certificate, verify_cycle, verify_potential
from .errors import BudgetExceeded, ContractError, InternalError, ScaleFailure
from .graph import INF, Graph, OpCounter, dijkstra
from .scale import ScaleConfig, ScaleResult, scale

UNREACHABLE = INF


@dataclass(frozen=True)
class ShortestPathTree:
    source: int
    dist: np.ndarray  # UNREACHABLE where no path exists
    parent: np.ndarray  # edge id into each vertex, -1 at the source / unreachable

    def path(self, g: Graph, v: int) -> list[int]:
        edges = []
        while self.parent[v] >= 0:
            e = int(self.parent[v])
            edges.append(e)
            v = int(g.src[e])
        edges.reverse()
        return edges


SsspOutcome = ShortestPathTree | NegCycleCertificate


@dataclass
class RunBudget:
    """Per-attempt operation budget ``T``; attempts may use up to ``2T``."""

    T: int
    multiplier: int = 2
    max_attempts: int = 50
    master_seed: int = 0

    @classmethod
    def for_graph(cls, n: int, m: int, constant: float = 64.0, **kw) -> "RunBudget":
        logn = max(1.0, math.log2(max(n, 2)))
        T = int(constant * (m + n * logn) * logn * logn)
        return cls(T=max(T, 1), **kw)

    def seed(self, *key: int) -> np.random.SeedSequence:
        return np.random.SeedSequence(entropy=self.master_seed, spawn_key=tuple(key))


@dataclass
class SolveStats:
    ops: int = 0
    attempts: list = field(default_factory=list)  # attempts per Scale call
    scale_calls: int = 0
    decompose_attempts: list = field(default_factory=list)
    hybrid_iterations: int = 0
    timings: dict = field(default_factory=dict)

    @property
    def total_attempts(self) -> int:
        return int(sum(self.attempts))


@dataclass
class AttemptLog:
    seeds: list = field(default_factory=list)
    outcomes: list = field(default_factory=list)  # "ok" | "budget" | "failed"


def las_vegas_run(attempt: Callable[[np.random.Generator, OpCounter], ScaleResult],
                  budget: RunBudget, key: tuple = (), log: AttemptLog | None = None,
                  counter: OpCounter | None = None):
    """Run ``attempt`` with fresh seeds until one finishes within ``2T``
    operations and passes its own checks.

    Returns ``(result, attempts)``.  Work done by abandoned attempts is still
    charged to ``counter``.
    """
    limit = budget.multiplier * budget.T
    for a in range(budget.max_attempts):
        ss = budget.seed(*key, a)
        if log is not None:
            log.seeds.append(ss)
        meter = OpCounter(limit)
        try:
            result = attempt(np.random.default_rng(ss), meter)
        except BudgetExceeded:
            if log is not None:
                log.outcomes.append("budget")
            continue
        except ScaleFailure:
            if log is not None:
                log.outcomes.append("failed")
            continue
        finally:
            if counter is not None:
                counter.ops += meter.ops
        if log is not None:
            log.outcomes.append("ok")
        return result, a + 1
    raise InternalError(f"no Scale attempt succeeded in {budget.max_attempts} tries")


def scaled_weights(g: Graph) -> np.ndarray:
    return g.w * np.int64(2 * g.n)


def initial_bound(g: Graph) -> int:
    """Smallest power of two covering the most negative scaled weight (0 if
    nothing is negative)."""
    if g.m == 0:
        return 0
    low = int(g.w.min()) * 2 * g.n
    if low >= 0:
        return 0
    return max(2, 1 << (-low - 1).bit_length())


def scaling_loop(g: Graph, seed: int = 0, config: ScaleConfig | None = None,
                 budget: RunBudget | None = None, stats: SolveStats | None = None,
                 counter: OpCounter | None = None) -> np.ndarray | NegCycleCertificate:
    """Potential leaving every 2n-scaled weight at least -1, or a cycle of ``g``."""
    config = config or ScaleConfig()
    budget = budget or RunBudget.for_graph(g.n, g.m, master_seed=seed)
    stats = stats if stats is not None else SolveStats()
    counter = counter if counter is not None else OpCounter()
    ghat = g.with_weights(scaled_weights(g))
    phi = np.zeros(g.n, np.int64)
    W = initial_bound(g)
    t = 0
    while W >= 2:
        current = ghat.with_weights(ghat.w + phi[g.src] - phi[g.dst])

        def attempt(rng, meter, current=current, W=W):
            res = scale(current, W, rng, config, meter)
            if res.certificate is None and not verify_potential(current, res.potential, -(W // 2)):
                raise ScaleFailure("Scale potential misses its bound")
            return res

        res, tries = las_vegas_run(attempt, budget, key=(t,), counter=counter)
        stats.attempts.append(tries)
        stats.scale_calls += 1
        stats.decompose_attempts.extend(res.stats.decompose_attempts)
        stats.hybrid_iterations += res.stats.hybrid_iterations
        if res.certificate is not None:
            # cycle weights scale by 2n > 0, so the same edges are negative in g
            return make_certificate(g, res.certificate.edges, config.simplify_cycles)
        phi = phi + res.potential
        W //= 2
        t += 1
    return phi


def johnson_finish(g: Graph, phi: np.ndarray, source: int,
                   counter: OpCounter | None = None) -> ShortestPathTree:
    """Dijkstra from ``source`` on ``2n*w + phi(u) - phi(v) + 1`` and exact
    distances along the resulting tree."""
    wt = scaled_weights(g) + phi[g.src] - phi[g.dst] + 1
    if g.m and int(wt.min()) < 0:
        raise ContractError("potential does not bring scaled weights to >= -1")
    _, pedge = dijkstra(g, [source], weights=wt, counter=counter)
    dist = _tree_distances(g, pedge, source)
    tree = ShortestPathTree(source, dist, pedge)
    if not verify_tree(g, tree):
        raise InternalError("shortest path tree failed the triangle check")
    return tree


def _tree_distances(g: Graph, pedge: np.ndarray, source: int) -> np.ndarray:
    dist = np.full(g.n, UNREACHABLE, np.int64)
    dist[source] = 0
    children: dict[int, list[int]] = {}
    for v in np.flatnonzero(pedge >= 0).tolist():
        children.setdefault(int(g.src[pedge[v]]), []).append(v)
    stack = [source]
    while stack:
        u = stack.pop()
        for v in children.get(u, ()):
            dist[v] = dist[u] + g.w[pedge[v]]
            stack.append(v)
    return dist


def verify_tree(g: Graph, tree: ShortestPathTree) -> bool:
    """Source at 0, tree edges tight, and no edge out of a reached vertex can
    improve its head."""
    dist, parent = tree.dist, tree.parent
    if dist[tree.source] != 0 or parent[tree.source] != -1:
        return False
    reached = dist < UNREACHABLE
    has_parent = parent >= 0
    if np.any(has_parent & ~reached) or np.any(reached & ~has_parent & (np.arange(g.n) != tree.source)):
        return False
    pe = parent[has_parent]
    if np.any(g.dst[pe] != np.flatnonzero(has_parent)):
        return False
    if np.any(dist[g.src[pe]] + g.w[pe] != dist[has_parent]):
        return False
    live = reached[g.src]
    if np.any(~reached[g.dst[live]]):
        return False
    e = np.flatnonzero(live)
    return bool(np.all(dist[g.dst[e]] <= dist[g.src[e]] + g.w[e]))


def sssp(g: Graph, source: int, seed: int = 0, config: ScaleConfig | None = None,
         budget: RunBudget | None = None, stats: SolveStats | None = None) -> SsspOutcome:
    """Shortest path tree from ``source`` or a negative-cycle certificate.

    The answer is always checked before it is returned; only the running
    time depends on ``seed``.
    """
    if not 0 <= source < g.n:
        raise ContractError(f"source {source} out of range")
    stats = stats if stats is not None else SolveStats()
    counter = OpCounter()
    t0 = time.perf_counter()
    out = scaling_loop(g, seed, config, budget, stats, counter)
    t1 = time.perf_counter()
    stats.timings["scaling"] = t1 - t0
    if isinstance(out, NegCycleCertificate):
        if not verify_cycle(g, out):
            raise InternalError("emitted certificate failed verification")
        stats.ops = counter.ops
        return out
    tree = johnson_finish(g, out, source, counter)
    stats.timings["finish"] = time.perf_counter() - t1
    stats.ops = counter.ops
    return tree
