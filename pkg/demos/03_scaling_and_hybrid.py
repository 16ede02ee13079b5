"""
Inside the solver: the hybrid and one scaling step
==================================================

The hybrid finds, for each vertex, the lightest path ending there.  Each
round costs one Dijkstra pass, and the number of rounds tracks the number of
negative edges on the optimal paths rather than the number of vertices.
"""
import numpy as np

from negsssp import Graph, bellman_ford_dijkstra, fix_dag, gen_random, scale
from negsssp.certificate import verify_potential

# %%
# A chain of three negative edges needs four rounds: the labels after round
# i describe paths with fewer than i negative edges.
chain = Graph.from_edges(4, [(0, 1, -1), (1, 2, -1), (2, 3, -1)])
res = bellman_ford_dijkstra(chain, max_iters=5, trace=True)
for i, row in enumerate(res.trace.tolist(), 1):
    print(f"after round {i}: {row}")
print("witness for vertex 3:", res.path(3).edges)

# %%
# A good potential makes most edges nonnegative, so they are handled inside
# the Dijkstra passes and fewer rounds are needed.
guided = bellman_ford_dijkstra(chain, phi=[0, -1, -2, -3])
print("rounds with no guidance:", res.iterations, "with a potential:", guided.iterations)

# %%
# Between strongly connected pieces the graph is acyclic, and one pass in
# topological order repairs all negative edges there.
dag = Graph.from_edges(3, [(0, 1, -2), (1, 2, -3)])
phi = fix_dag(dag, [[0], [1], [2]], [], np.zeros(3, np.int64))
print("DAG potential:", phi.tolist())

# %%
# One scaling step takes weights >= -W and returns a potential that lifts
# them all to >= -W/2.
n, W = 60, 16
g = gen_random(n, 240, wmin=-W, wmax=10, seed=3, mode="acyclic-negative-free")
result = scale(g, W, np.random.default_rng(3))
print("min weight before:", int(g.w.min()))
print("min weight after:", int((g.w + result.potential[g.src] - result.potential[g.dst]).min()))
print("bound holds:", verify_potential(g, result.potential, -W // 2))
print(f"decomposition tree: {result.stats.nodes} nodes, {result.stats.leaves} leaves, "
      f"depth {result.stats.depth}; hybrid ran on {result.stats.hybrid_calls} nodes")
