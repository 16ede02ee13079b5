"""Slow, obviously-correct reference computations used by the tests."""
import itertools

import numpy as np

BIG = float("inf")


def floyd_warshall(n, edges):
    d = [[BIG] * n for _ in range(n)]
    for v in range(n):
        d[v][v] = 0
    for u, v, w in edges:
        d[u][v] = min(d[u][v], w)
    for k, i, j in itertools.product(range(n), repeat=3):
        if d[i][k] + d[k][j] < d[i][j]:
            d[i][j] = d[i][k] + d[k][j]
    return d


def reachable(n, edges):
    r = [[i == j for j in range(n)] for i in range(n)]
    for u, v, _ in edges:
        r[u][v] = True
    for k, i, j in itertools.product(range(n), repeat=3):
        r[i][j] = r[i][j] or (r[i][k] and r[k][j])
    return r


def brute_sccs(n, edges):
    """Set of frozensets; order is checked separately."""
    r = reachable(n, edges)
    return {frozenset(j for j in range(n) if r[i][j] and r[j][i]) for i in range(n)}


def layered_dp(n, edges, phi, layers):
    """``out[i - 1][v]``: least plain weight of a path ending at ``v`` that
    uses fewer than ``i`` edges negative under ``phi`` (empty path allowed).

    Within a layer the nonnegative edges are closed with plain relaxation,
    which is safe because those edges form no negative cycle.
    """
    neg = [(u, v, w) for u, v, w in edges if w + phi[u] - phi[v] < 0]
    pos = [(u, v, w) for u, v, w in edges if w + phi[u] - phi[v] >= 0]

    def close(d):
        d = list(d)
        for _ in range(n + 1):
            changed = False
            for u, v, w in pos:
                if d[u] + w < d[v]:
                    d[v] = d[u] + w
                    changed = True
            if not changed:
                return d
        raise AssertionError("nonnegative edges formed a negative cycle")

    cur = close([0] * n)
    out = [cur]
    for _ in range(layers - 1):
        nxt = list(cur)
        for u, v, w in neg:
            nxt[v] = min(nxt[v], cur[u] + w)
        cur = close(nxt)
        out.append(cur)
    return out


def capped_ball(n, edges, center, radius, reverse=False):
    """Vertices within ``radius`` of ``center`` under max(w, 0), by brute force."""
    d = floyd_warshall(n, [(v, u, max(w, 0)) if reverse else (u, v, max(w, 0)) for u, v, w in edges])
    return {v for v in range(n) if d[center][v] <= radius}


def progress_ok(n, edges, d, cut):
    """Brute-force version of the decomposition progress condition."""
    kept = [e for i, e in enumerate(edges) if i not in set(cut)]
    for comp in brute_sccs(n, kept):
        if 4 * len(comp) <= 3 * n:
            continue
        for v in comp:
            if len(capped_ball(n, edges, v, d // 4)) <= n // 2:
                return False
            if len(capped_ball(n, edges, v, d // 4, reverse=True)) <= n // 2:
                return False
    return True


def random_edges(rng, n, m, wmin, wmax):
    src = rng.integers(n, size=m)
    dst = rng.integers(n, size=m)
    w = rng.integers(wmin, wmax + 1, size=m)
    return [(int(a), int(b), int(c)) for a, b, c in zip(src, dst, w)]


def as_int(x):
    return None if x == BIG else int(x)


def np_dist(d, inf):
    return np.array([inf if x == BIG else x for x in d], dtype=np.int64)
