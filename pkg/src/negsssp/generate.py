"""Seeded random instances."""
from __future__ import annotations

import numpy as np

from .errors import ContractError
from .graph import Graph

MODES = ("any", "acyclic-negative-free", "planted-negative-cycle")


def gen_random(n: int, m: int, wmin: int = -32, wmax: int = 32, seed: int = 0,
               mode: str = "any", cycle_length: int = 3, self_loops: bool = False) -> Graph:
    """Random multigraph with ``m`` edges and weights in ``[wmin, wmax]``.

    ``acyclic-negative-free``: a hidden potential ``p`` in ``[0, -wmin]`` is
    drawn per vertex and every edge gets a weight of at least
    ``p(u) - p(v)``.  Negative edges therefore only run forward in the order
    of ``p``, and no cycle can be negative.

    ``planted-negative-cycle``: as above, plus a cycle through
    ``cycle_length`` distinct vertices whose weights sum to a negative value.
    The planted edges count towards ``m``.
    """
    if mode not in MODES:
        raise ContractError(f"mode must be one of {MODES}")
    if n < 1 or m < 0 or wmin > wmax:
        raise ContractError("need n >= 1, m >= 0 and wmin <= wmax")
    if not self_loops and n == 1 and m > 0:
        raise ContractError("a single vertex without self-loops has no edges")
    rng = np.random.default_rng(seed)
    planted = []
    if mode == "planted-negative-cycle":
        if not 1 <= cycle_length <= n or (cycle_length == 1 and not self_loops):
            raise ContractError("cycle length must fit in the vertex set")
        if cycle_length > m:
            raise ContractError("m too small for the planted cycle")
        if wmin >= 0:
            raise ContractError("a negative cycle needs wmin < 0")
        planted = _plant(rng, n, cycle_length, wmin, wmax)
    src = rng.integers(n, size=m - len(planted))
    dst = rng.integers(n, size=m - len(planted))
    if not self_loops:
        loops = src == dst
        while loops.any():
            dst[loops] = rng.integers(n, size=int(loops.sum()))
            loops = src == dst
    if mode == "any":
        w = rng.integers(wmin, wmax + 1, size=src.size)
    else:
        pot = rng.integers(0, max(0, -wmin) + 1, size=n)
        low = np.maximum(wmin, pot[src] - pot[dst])
        high = np.full(src.size, wmax)
        # pot[u] - pot[v] <= -wmin, so only wmax < -wmin can make this empty
        bad = low > high
        if bad.any():
            src[bad], dst[bad] = dst[bad].copy(), src[bad].copy()
            low = np.maximum(wmin, pot[src] - pot[dst])
            if (low > high).any():
                raise ContractError("weight range too narrow for a hidden potential")
        w = low + (rng.random(src.size) * (high - low + 1)).astype(np.int64)
    if planted:
        ps, pd, pw = zip(*planted)
        src = np.concatenate([src, ps])
        dst = np.concatenate([dst, pd])
        w = np.concatenate([w, pw])
        perm = rng.permutation(src.size)
        src, dst, w = src[perm], dst[perm], w[perm]
    return Graph(n, src, dst, w)


def _plant(rng, n, length, wmin, wmax):
    verts = rng.choice(n, size=length, replace=False)
    # spread a total in [length*wmin, -1] over the edges
    total = int(rng.integers(length * wmin, 0))
    weights = np.full(length, total // length)
    weights[: total - weights.sum()] += 1
    weights = np.clip(weights, wmin, wmax)
    return [(int(verts[i]), int(verts[(i + 1) % length]), int(weights[i])) for i in range(length)]
