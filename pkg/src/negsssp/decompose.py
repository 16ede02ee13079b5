"""Low-diameter decomposition by random ball carving.

``decompose(H, d)`` returns a set of positive-weight edges whose removal
leaves strongly connected components that are either small (at most 3/4 of
the vertices) or made of vertices whose in- and out-balls of radius ``d/4``
in ``H>=0`` each hold more than half of the vertices.

Vertices failing the second condition ("light" vertices) get a ball of
geometrically distributed radius carved around them.  Out-balls cut the
edges leaving them and in-balls the edges entering them, so every surviving
component sits inside one carved ball or inside the heavy remainder.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import ContractError, InternalError
from .graph import INF, Graph, OpCounter, WeightView, as_view, dijkstra, nonneg_view, scc_labels


@dataclass(frozen=True)
class DecomposeConfig:
    radius_constant: float = 20.0
    # Light/heavy classification is exact up to this many vertices and
    # sampled above it.
    exact_limit: int = 256
    sample_constant: float = 3.0
    light_fraction: float = 5 / 8
    # Progress is re-checked exactly (and the carve retried) up to this size.
    verify_limit: int = 256
    max_retries: int = 100
    certificate_centers: int = 2


@dataclass(frozen=True)
class EdgeCut:
    """Cut edges of one decomposition, as a boolean mask over ``H``'s edges."""

    mask: np.ndarray
    attempts: int = 1
    verified: bool = True

    @property
    def edges(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def __len__(self):
        return int(self.mask.sum())


def ball(view: Graph | WeightView, center: int, radius: int, direction: str = "out") -> list[int]:
    """Vertices within ``radius`` of ``center`` (out) or reaching it (in),
    with negative weights read as 0."""
    if radius < 0:
        raise ContractError("radius must be nonnegative")
    if direction not in ("in", "out"):
        raise ContractError("direction is 'in' or 'out'")
    dist, _ = dijkstra(nonneg_view(view), [center], radius=radius, reverse=direction == "in")
    return np.flatnonzero(dist < INF).tolist()


def quarter(d: int) -> int:
    """Largest integer radius r with 4r <= d."""
    return int(d) // 4


def _certify_heavy(H, wt, cap, centers, counter):
    """Exact certificate: v is out-heavy when dist(v -> c) + t <= cap, where
    c's out-ball of radius t already holds more than half of the vertices."""
    n = H.n
    half = n // 2
    out_heavy = np.zeros(n, np.bool_)
    in_heavy = np.zeros(n, np.bool_)
    optr, oeid = H.out_csr
    iptr, ieid = H.in_csr
    for c in centers:
        init = np.full(n, INF, np.int64)
        init[c] = 0
        dout, _, _, ops1 = _kernels.dijkstra(optr, oeid, H.dst, wt, init, -1, -1)
        din, _, _, ops2 = _kernels.dijkstra(iptr, ieid, H.src, wt, init, -1, -1)
        counter.add(ops1 + ops2)
        t_out = int(np.partition(dout, half)[half])
        t_in = int(np.partition(din, half)[half])
        if t_out <= cap:
            out_heavy |= din <= cap - t_out
        if t_in <= cap:
            in_heavy |= dout <= cap - t_in
        if out_heavy.all() and in_heavy.all():
            break
    return out_heavy, in_heavy


def classify(H: Graph, wt: np.ndarray, cap: int, rng, config: DecomposeConfig,
             counter: OpCounter, exact: bool | None = None):
    """Out-heavy / in-heavy flags for every vertex of ``H`` under ``wt``."""
    n = H.n
    half = n // 2
    centers = rng.integers(n, size=config.certificate_centers).tolist()
    out_heavy, in_heavy = _certify_heavy(H, wt, cap, centers, counter)
    if out_heavy.all() and in_heavy.all():
        return out_heavy, in_heavy
    optr, oeid = H.out_csr
    iptr, ieid = H.in_csr
    if exact is None:
        exact = n <= config.exact_limit
    if exact:
        todo = np.flatnonzero(~out_heavy)
        flags, ops = _kernels.heavy_flags(optr, oeid, H.dst, wt, todo, cap, half)
        counter.add(ops)
        out_heavy[todo] = flags
        todo = np.flatnonzero(~in_heavy)
        flags, ops = _kernels.heavy_flags(iptr, ieid, H.src, wt, todo, cap, half)
        counter.add(ops)
        in_heavy[todo] = flags
        return out_heavy, in_heavy
    k = max(1, math.ceil(config.sample_constant * math.log(n)))
    out_hits = np.zeros(n, np.int64)
    in_hits = np.zeros(n, np.int64)
    for s in rng.integers(n, size=k):
        init = np.full(n, INF, np.int64)
        init[s] = 0
        to_s, _, _, ops1 = _kernels.dijkstra(iptr, ieid, H.src, wt, init, cap, -1)
        from_s, _, _, ops2 = _kernels.dijkstra(optr, oeid, H.dst, wt, init, cap, -1)
        counter.add(ops1 + ops2)
        out_hits += to_s < INF
        in_hits += from_s < INF
    limit = config.light_fraction * k
    out_heavy |= out_hits > limit
    in_heavy |= in_hits > limit
    return out_heavy, in_heavy


def _carve(H, wt, cap, out_heavy, in_heavy, d, rng, config, counter):
    n = H.n
    out_light = ~out_heavy
    in_light = ~in_heavy
    light = np.flatnonzero(out_light | in_light)
    if light.size == 0:
        return np.zeros(H.m, np.bool_)
    order = rng.permutation(light)
    coin = rng.random(order.size) < 0.5
    outward = out_light[order] & (~in_light[order] | coin)
    p = min(1.0, config.radius_constant * math.log(max(n, 2)) / max(d, 1))
    radius = np.minimum(rng.geometric(p, size=order.size), cap).astype(np.int64)
    optr, oeid = H.out_csr
    iptr, ieid = H.in_csr
    cut, _, ops = _kernels.carve(optr, oeid, iptr, ieid, H.src, H.dst, wt,
                                 order.astype(np.int64), outward, radius)
    counter.add(ops)
    return cut


def decompose(H: Graph | WeightView, d: int, rng: np.random.Generator,
              config: DecomposeConfig | None = None,
              counter: OpCounter | None = None) -> EdgeCut:
    """Cut a set of positive-weight edges of ``H`` (see module docstring).

    ``H``'s own weights are the working weights; negative ones count as 0 for
    every distance computed here.  The result is checked with
    :func:`verify_progress` when ``H`` has at most ``config.verify_limit``
    vertices, and recomputed with fresh randomness if the check fails.
    """
    if d <= 0:
        raise ContractError("diameter parameter must be positive")
    config = config or DecomposeConfig()
    counter = counter if counter is not None else OpCounter()
    view = as_view(H)
    g = view.graph if view.shift == 0 and view.phi is None and not view.clamp else view.materialize()
    if g.n == 1 or g.m == 0:
        return EdgeCut(np.zeros(g.m, np.bool_))
    wt = np.maximum(g.w, 0)
    cap = quarter(d)
    checked = g.n <= config.verify_limit
    for attempt in range(1, config.max_retries + 1):
        out_heavy, in_heavy = classify(g, wt, cap, rng, config, counter)
        cut = _carve(g, wt, cap, out_heavy, in_heavy, d, rng, config, counter)
        if np.any(g.w[cut] <= 0):
            raise InternalError("decompose cut a non-positive edge")
        if not checked or verify_progress(g, d, cut, counter=counter):
            return EdgeCut(cut, attempts=attempt, verified=checked)
    raise InternalError(f"decompose failed progress verification {config.max_retries} times")


def verify_progress(H: Graph | WeightView, d: int, cut, counter: OpCounter | None = None) -> bool:
    """Every SCC of ``H`` minus ``cut`` has at most 3/4 of the vertices, or all
    its vertices have in- and out-balls of radius ``d/4`` in ``H>=0`` holding
    more than half of the vertices.  ``cut`` is an edge mask or id list."""
    view = as_view(H)
    g = view.materialize() if (view.shift or view.phi is not None or view.clamp) else view.graph
    counter = counter if counter is not None else OpCounter()
    mask = np.zeros(g.m, np.bool_)
    cut = np.asarray(cut)
    if cut.dtype == np.bool_:
        mask |= cut
    elif cut.size:
        mask[cut.astype(np.int64)] = True
    comp, ncomp = scc_labels(g, mask, counter)
    sizes = np.bincount(comp, minlength=ncomp)
    big = np.flatnonzero(4 * sizes > 3 * g.n)
    if big.size == 0:
        return True
    wt = np.maximum(g.w, 0)
    cap = quarter(d)
    half = g.n // 2
    optr, oeid = g.out_csr
    iptr, ieid = g.in_csr
    for c in big.tolist():
        members = np.flatnonzero(comp == c)
        out_ok, in_ok = _certify_heavy(g, wt, cap, [int(members[0])], counter)
        todo = members[~out_ok[members]]
        flags, ops = _kernels.heavy_flags(optr, oeid, g.dst, wt, todo, cap, half)
        counter.add(ops)
        if not flags.all():
            return False
        todo = members[~in_ok[members]]
        flags, ops = _kernels.heavy_flags(iptr, ieid, g.src, wt, todo, cap, half)
        counter.add(ops)
        if not flags.all():
            return False
    return True


# ------------------------------------------------------------ sparse hitting


def random_short_paths(H: Graph, d: int, rng: np.random.Generator, count: int,
                       max_len: int | None = None) -> list[list[int]]:
    """Random walks whose ``H>=0`` weight stays at most ``d``.

    Each walk starts at a uniform vertex and follows uniform out-edges until
    the next step would exceed ``d``, no out-edge exists, or ``max_len``
    (default ``4n``) edges were taken.
    """
    max_len = 4 * H.n if max_len is None else max_len
    wt = np.maximum(H.w, 0)
    ptr, eids = H.out_csr
    paths = []
    for _ in range(count):
        v = int(rng.integers(H.n))
        total = 0
        path = []
        while ptr[v + 1] > ptr[v] and len(path) < max_len:
            e = int(eids[rng.integers(ptr[v], ptr[v + 1])])
            if total + wt[e] > d:
                break
            total += int(wt[e])
            path.append(e)
            v = int(H.dst[e])
        paths.append(path)
    return paths


def crossings(path, cut_mask: np.ndarray) -> int:
    """Number of edges of ``path`` inside the cut, counting repeats."""
    if not path:
        return 0
    return int(cut_mask[np.asarray(path, dtype=np.int64)].sum())
