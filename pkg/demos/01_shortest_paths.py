"""
Shortest paths with negative edges
==================================

Build a small graph, solve it, read paths back out, and see what happens
when a negative cycle is present.
"""
from negsssp import Graph, gen_random, sssp, verify_cycle, verify_tree
from negsssp.certificate import NegCycleCertificate

# %%
# A three-vertex graph where the cheap route to c goes through a negative edge.
g = Graph.from_edges(3, [(0, 1, 2), (1, 2, -1), (0, 2, 5)])
tree = sssp(g, source=0)
print("dist:", tree.dist.tolist())
print("edges on the path to c:", tree.path(g, 2))

# The tree carries its own proof: every tree edge is tight and no edge can
# improve its head.  Anyone can re-check that in linear time.
print("tree checks out:", verify_tree(g, tree))

# %%
# Unreachable vertices keep a sentinel distance and no parent.
g2 = Graph.from_edges(4, [(0, 1, -3), (1, 2, 4)])
t2 = sssp(g2, 0)
print("reachable:", (t2.dist < 2**62).tolist(), "parents:", t2.parent.tolist())

# %%
# Close a loop with total weight -2.  Instead of distances we get a cycle,
# listed as edge ids, whose weight is checked before it is handed back.
g3 = Graph.from_edges(3, [(0, 1, -3), (1, 0, 1), (1, 2, 7)])
out = sssp(g3, 2)
assert isinstance(out, NegCycleCertificate)
print("cycle edges:", out.edges, "weight:", out.weight, "valid:", verify_cycle(g3, out))

# Note the source was vertex 2, which cannot even reach the cycle.  The solver
# reports any negative cycle in the graph, since potentials cannot exist then.

# %%
# Different seeds change only the work done, never the answer.
g4 = gen_random(50, 200, seed=4, mode="acyclic-negative-free")
answers = {tuple(sssp(g4, 0, seed=s).dist.tolist()) for s in range(5)}
print("distinct answers over 5 seeds:", len(answers))
