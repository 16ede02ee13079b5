"""
Low-diameter decomposition
==========================

The decomposition removes a few positive edges so that every remaining
strongly connected piece is either small or "tight" (every vertex sees
more than half the graph within distance d/4).  Short paths rarely cross
the removed edges.
"""
import math

import numpy as np

from negsssp import Graph, decompose, scc, verify_progress
from negsssp.decompose import ball, crossings, random_short_paths

# %%
# A ring of 8 vertices with weight-4 edges.  With d = 4 each ball of radius
# 1 holds only its center, so the ring as a whole is far from tight.
ring = Graph.from_edges(8, [(i, (i + 1) % 8, 4) for i in range(8)])
print("out-ball of 0, radius 1:", ball(ring, 0, 1))
print("ring is fine uncut?", verify_progress(ring, 4, []))

cut = decompose(ring, 4, np.random.default_rng(1))
print("cut edges:", cut.edges.tolist())
print("pieces:", scc(ring, removed=cut.edges))
print("fine after the cut?", verify_progress(ring, 4, cut.mask))

# %%
# Zero-weight cycles can never be cut (only positive edges are eligible),
# but they do not need to be: every vertex reaches the others at distance 0.
zero = Graph.from_edges(4, [(i, (i + 1) % 4, 0) for i in range(4)])
print("zero ring, d=8:", verify_progress(zero, 8, []))

# %%
# Sparse hitting.  On a random strongly connected graph, draw random walks of
# weight at most d and count how many removed edges each one uses.
rng = np.random.default_rng(7)
n, d = 200, 64
perm = rng.permutation(n)
edges = [(int(perm[i]), int(perm[(i + 1) % n]), int(rng.integers(0, 21))) for i in range(n)]
edges += [(int(a), int(b), int(w)) for a, b, w in
          zip(rng.integers(n, size=3 * n), rng.integers(n, size=3 * n), rng.integers(0, 21, size=3 * n))]
H = Graph.from_edges(n, edges)
cut = decompose(H, d, rng)
paths = random_short_paths(H, d, rng, 500)
hits = [crossings(p, cut.mask) for p in paths]
print(f"removed {len(cut)} of {H.m} edges")
print(f"mean crossings per path {np.mean(hits):.2f}, ln n = {math.log(n):.2f}")
