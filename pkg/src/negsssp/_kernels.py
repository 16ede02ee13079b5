"""Compiled inner loops.

Every kernel works on local CSR arrays: ``ptr`` has one slot per vertex plus
one, ``eids`` lists edge ids grouped by the owning vertex, and ``other`` maps
an edge id to the endpoint on the far side (``dst`` for out-adjacency, ``src``
for in-adjacency).  Weights are indexed by edge id.  Distances are int64 with
``INF`` as the unreached sentinel.

Each kernel returns an operation count (heap pushes, heap pops and edge
relaxations) so callers can meter work deterministically.
"""
from __future__ import annotations

import heapq

import numpy as np
from numba import njit

INF = np.int64(2**62)


@njit(cache=True)
def _empty_heap():
    heap = [(np.int64(0), np.int64(0))]
    heap.pop()
    return heap


@njit(cache=True)
def dijkstra(ptr, eids, other, wt, init, cap, target):
    """Multi-source Dijkstra with initial labels.

    Vertices with ``init < INF`` are sources.  ``cap >= 0`` drops labels above
    the cap; ``target >= 0`` stops once that vertex is settled.
    """
    n = ptr.size - 1
    dist = init.copy()
    pedge = np.full(n, -1, np.int64)
    done = np.zeros(n, np.bool_)
    order = np.empty(n, np.int64)
    nsettled = 0
    ops = 0
    heap = _empty_heap()
    for v in range(n):
        if dist[v] < INF:
            heapq.heappush(heap, (dist[v], np.int64(v)))
            ops += 1
    while len(heap) > 0:
        dv, v = heapq.heappop(heap)
        ops += 1
        if done[v] or dv > dist[v]:
            continue
        done[v] = True
        order[nsettled] = v
        nsettled += 1
        if v == target:
            break
        for p in range(ptr[v], ptr[v + 1]):
            e = eids[p]
            x = other[e]
            nd = dv + wt[e]
            ops += 1
            if cap >= 0 and nd > cap:
                continue
            if nd < dist[x]:
                dist[x] = nd
                pedge[x] = e
                heapq.heappush(heap, (nd, x))
                ops += 1
    for v in range(n):
        if not done[v]:
            dist[v] = INF
            pedge[v] = -1
    return dist, pedge, order[:nsettled], ops


@njit(cache=True)
def heavy_flags(ptr, eids, other, wt, check, cap, half):
    """For each vertex in ``check``: does its ball of radius ``cap`` hold more
    than ``half`` vertices?  Each search stops as soon as the answer is known."""
    n = ptr.size - 1
    dist = np.full(n, INF, np.int64)
    done = np.zeros(n, np.bool_)
    touched = np.empty(n, np.int64)
    out = np.zeros(check.size, np.bool_)
    ops = 0
    heap = _empty_heap()
    for k in range(check.size):
        s = check[k]
        ntouched = 0
        dist[s] = 0
        touched[ntouched] = s
        ntouched += 1
        heap.clear()
        heapq.heappush(heap, (np.int64(0), s))
        count = 0
        while len(heap) > 0:
            dv, v = heapq.heappop(heap)
            ops += 1
            if done[v] or dv > dist[v]:
                continue
            done[v] = True
            count += 1
            if count > half:
                out[k] = True
                break
            for p in range(ptr[v], ptr[v + 1]):
                e = eids[p]
                x = other[e]
                nd = dv + wt[e]
                ops += 1
                if nd > cap:
                    continue
                if nd < dist[x]:
                    if dist[x] == INF:
                        touched[ntouched] = x
                        ntouched += 1
                    dist[x] = nd
                    heapq.heappush(heap, (nd, x))
                    ops += 1
        for t in range(ntouched):
            dist[touched[t]] = INF
            done[touched[t]] = False
    return out, ops


@njit(cache=True)
def carve(out_ptr, out_eids, in_ptr, in_eids, src, dst, wt, order, outward, radius):
    """Carve balls around ``order`` in sequence, skipping already carved centres.

    Out-balls cut the edges leaving them, in-balls the edges entering them; only
    edges towards still-uncarved vertices are cut.  Returns the cut mask and the
    index (into ``order``) of the ball that took each vertex, -1 if none did.
    """
    n = out_ptr.size - 1
    m = src.size
    cut = np.zeros(m, np.bool_)
    piece = np.full(n, -1, np.int64)
    carved = np.zeros(n, np.bool_)
    dist = np.full(n, INF, np.int64)
    done = np.zeros(n, np.bool_)
    touched = np.empty(n, np.int64)
    ball = np.empty(n, np.int64)
    ops = 0
    heap = _empty_heap()
    for k in range(order.size):
        c = order[k]
        if carved[c]:
            continue
        if outward[k]:
            ptr, eids, other = out_ptr, out_eids, dst
        else:
            ptr, eids, other = in_ptr, in_eids, src
        r = radius[k]
        ntouched = 0
        nball = 0
        dist[c] = 0
        touched[ntouched] = c
        ntouched += 1
        heap.clear()
        heapq.heappush(heap, (np.int64(0), c))
        while len(heap) > 0:
            dv, v = heapq.heappop(heap)
            ops += 1
            if done[v] or dv > dist[v]:
                continue
            done[v] = True
            ball[nball] = v
            nball += 1
            for p in range(ptr[v], ptr[v + 1]):
                e = eids[p]
                x = other[e]
                ops += 1
                if carved[x]:
                    continue
                nd = dv + wt[e]
                if nd > r:
                    continue
                if nd < dist[x]:
                    if dist[x] == INF:
                        touched[ntouched] = x
                        ntouched += 1
                    dist[x] = nd
                    heapq.heappush(heap, (nd, x))
                    ops += 1
        for t in range(ntouched):
            dist[touched[t]] = INF
            done[touched[t]] = False
        for t in range(nball):
            carved[ball[t]] = True
            piece[ball[t]] = k
        for t in range(nball):
            v = ball[t]
            for p in range(ptr[v], ptr[v + 1]):
                e = eids[p]
                ops += 1
                if not carved[other[e]]:
                    cut[e] = True
    return cut, piece, ops


@njit(cache=True)
def tarjan(ptr, eids, dst, removed):
    """Strongly connected components, labelled by topological position.

    Label 0 is a source component of the condensation.  Roots are tried in
    vertex order, so the labelling is deterministic.
    """
    n = ptr.size - 1
    index = np.full(n, -1, np.int64)
    low = np.zeros(n, np.int64)
    onstack = np.zeros(n, np.bool_)
    stack = np.empty(n, np.int64)
    cs_v = np.empty(n, np.int64)
    cs_p = np.empty(n, np.int64)
    comp = np.full(n, -1, np.int64)
    sp = 0
    top = 0
    counter = 0
    ncomp = 0
    ops = 0
    for r in range(n):
        if index[r] != -1:
            continue
        index[r] = counter
        low[r] = counter
        counter += 1
        stack[sp] = r
        sp += 1
        onstack[r] = True
        cs_v[0] = r
        cs_p[0] = ptr[r]
        top = 1
        while top > 0:
            v = cs_v[top - 1]
            p = cs_p[top - 1]
            if p < ptr[v + 1]:
                cs_p[top - 1] = p + 1
                e = eids[p]
                ops += 1
                if removed[e]:
                    continue
                w = dst[e]
                if index[w] == -1:
                    index[w] = counter
                    low[w] = counter
                    counter += 1
                    stack[sp] = w
                    sp += 1
                    onstack[w] = True
                    cs_v[top] = w
                    cs_p[top] = ptr[w]
                    top += 1
                elif onstack[w] and index[w] < low[v]:
                    low[v] = index[w]
            else:
                top -= 1
                if low[v] == index[v]:
                    while True:
                        sp -= 1
                        w = stack[sp]
                        onstack[w] = False
                        comp[w] = ncomp
                        if w == v:
                            break
                    ncomp += 1
                if top > 0:
                    u = cs_v[top - 1]
                    if low[v] < low[u]:
                        low[u] = low[v]
    for v in range(n):
        comp[v] = ncomp - 1 - comp[v]
    return comp, ncomp, ops


@njit(cache=True)
def dag_offsets(src, dst, wphi, removed, comp, ncomp, order):
    """Per-component offsets making every inter-component edge nonnegative.

    ``order`` must list edge ids sorted by the topological label of their head.
    """
    mu = np.zeros(ncomp, np.int64)
    for k in range(order.size):
        e = order[k]
        if removed[e]:
            continue
        cu = comp[src[e]]
        cv = comp[dst[e]]
        if cu == cv:
            continue
        val = wphi[e] + mu[cu]
        if val < mu[cv]:
            mu[cv] = val
    return mu


@njit(cache=True)
def hybrid(out_ptr, out_eids, dst, wphi, auxw, init, threshold, max_iters, trace):
    """Alternate Dijkstra passes over nonnegative edges with single
    Bellman-Ford rounds over negative edges.

    Paths are stored as persistent records ``(edge, previous record)`` so each
    vertex's label always matches the exact walk its record chain spells out.

    Status codes: 0 converged, 1 auxiliary threshold exceeded, 2 ran out of
    iterations.
    """
    n = out_ptr.size - 1
    d = init.copy()
    aux = np.zeros(n, np.int64)
    rec = np.full(n, -1, np.int64)
    cap = 2 * n + 16
    rec_edge = np.empty(cap, np.int64)
    rec_prev = np.empty(cap, np.int64)
    nrec = 0

    best = np.full(n, INF, np.int64)
    best_e = np.empty(n, np.int64)
    best_aux = np.empty(n, np.int64)
    best_prev = np.empty(n, np.int64)

    in_touched = np.zeros(n, np.bool_)
    touched = np.empty(n, np.int64)
    ntouched = 0
    changed = np.empty(n, np.int64)
    settled_at = np.zeros(n, np.int64)

    if trace:
        snaps = np.empty((max_iters, n), np.int64)
    else:
        snaps = np.empty((0, n), np.int64)

    ops = 0
    heap = _empty_heap()
    for v in range(n):
        touched[ntouched] = v
        ntouched += 1
        in_touched[v] = True
        heapq.heappush(heap, (d[v], np.int64(v)))
        ops += 1

    status = 2
    violator = -1
    it = 0
    while it < max_iters:
        it += 1
        # Dijkstra pass over nonnegative edges
        while len(heap) > 0:
            dv, v = heapq.heappop(heap)
            ops += 1
            if settled_at[v] == it or dv > d[v]:
                continue
            settled_at[v] = it
            for p in range(out_ptr[v], out_ptr[v + 1]):
                e = out_eids[p]
                if wphi[e] < 0:
                    continue
                ops += 1
                x = dst[e]
                nd = dv + wphi[e]
                if nd < d[x]:
                    d[x] = nd
                    aux[x] = aux[v] + auxw[e]
                    if nrec == cap:
                        cap *= 2
                        tmp = np.empty(cap, np.int64)
                        tmp[:nrec] = rec_edge[:nrec]
                        rec_edge = tmp
                        tmp = np.empty(cap, np.int64)
                        tmp[:nrec] = rec_prev[:nrec]
                        rec_prev = tmp
                    rec_edge[nrec] = e
                    rec_prev[nrec] = rec[v]
                    rec[x] = nrec
                    nrec += 1
                    if not in_touched[x]:
                        in_touched[x] = True
                        touched[ntouched] = x
                        ntouched += 1
                    heapq.heappush(heap, (nd, x))
                    ops += 1
        if trace:
            snaps[it - 1, :] = d
        if threshold >= 0:
            for t in range(ntouched):
                v = touched[t]
                if aux[v] > threshold:
                    violator = v
                    break
            if violator >= 0:
                status = 1
                break
        # one synchronous Bellman-Ford round over negative edges
        nchanged = 0
        for t in range(ntouched):
            v = touched[t]
            for p in range(out_ptr[v], out_ptr[v + 1]):
                e = out_eids[p]
                if wphi[e] >= 0:
                    continue
                ops += 1
                x = dst[e]
                nd = d[v] + wphi[e]
                if nd < d[x] and nd < best[x]:
                    if best[x] == INF:
                        changed[nchanged] = x
                        nchanged += 1
                    best[x] = nd
                    best_e[x] = e
                    best_aux[x] = aux[v] + auxw[e]
                    best_prev[x] = rec[v]
        for t in range(ntouched):
            in_touched[touched[t]] = False
        ntouched = 0
        if nchanged == 0:
            status = 0
            break
        for t in range(nchanged):
            x = changed[t]
            d[x] = best[x]
            aux[x] = best_aux[x]
            if nrec == cap:
                cap *= 2
                tmp = np.empty(cap, np.int64)
                tmp[:nrec] = rec_edge[:nrec]
                rec_edge = tmp
                tmp = np.empty(cap, np.int64)
                tmp[:nrec] = rec_prev[:nrec]
                rec_prev = tmp
            rec_edge[nrec] = best_e[x]
            rec_prev[nrec] = best_prev[x]
            rec[x] = nrec
            nrec += 1
            best[x] = INF
            in_touched[x] = True
            touched[ntouched] = x
            ntouched += 1
            heapq.heappush(heap, (d[x], x))
            ops += 1
    return (status, it, violator, d, aux, rec, rec_edge[:nrec], rec_prev[:nrec],
            snaps[:it], ops)
