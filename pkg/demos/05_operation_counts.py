"""
How the work grows
==================

Every kernel reports how many heap and edge operations it performed, so
running time can be compared across machines and seeds.
"""
import time

from negsssp import SolveStats, gen_random, sssp

sssp(gen_random(32, 128, seed=0), 0)  # compile once

prev = None
print(f"{'n':>6} {'ops':>12} {'growth':>7} {'ops/m':>8} {'seconds':>8}")
for k in range(9, 14):
    n = 2**k
    g = gen_random(n, 4 * n, seed=k, mode="acyclic-negative-free")
    stats = SolveStats()
    t0 = time.perf_counter()
    sssp(g, 0, stats=stats)
    dt = time.perf_counter() - t0
    growth = "" if prev is None else f"{stats.ops / prev:.2f}"
    print(f"{n:>6} {stats.ops:>12} {growth:>7} {stats.ops / g.m:>8.0f} {dt:>8.2f}")
    prev = stats.ops

# Doubling n multiplies the work by a bit more than two: the extra factor is
# the polylogarithmic overhead of the scaling rounds and the decomposition.
