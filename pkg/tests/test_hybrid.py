import numpy as np
import pytest
from hypothesis import given, strategies as st

from negsssp import ContractError, Graph, bellman_ford_dijkstra
from negsssp.errors import NegativeCycleSuspected
from negsssp.graph import reweight

from oracles import layered_dp, random_edges


class TestExamples:
    def test_nonnegative_graph_finishes_at_once(self):
        g = Graph.from_edges(3, [(0, 1, 2), (1, 2, 0)])
        r = bellman_ford_dijkstra(g)
        assert r.completed and r.iterations == 1
        assert r.dist.tolist() == [0, 0, 0]

    def test_single_negative_edge(self):
        g = Graph.from_edges(2, [(0, 1, -1)])
        r = bellman_ford_dijkstra(g, trace=True, max_iters=3)
        assert r.completed and r.iterations == 2
        assert r.trace.tolist() == [[0, 0], [0, -1]]
        assert r.dist.tolist() == [0, -1]

    def test_threshold_violation(self):
        g = Graph.from_edges(2, [(0, 1, -1)])
        r = bellman_ford_dijkstra(g, aux=[3], threshold=2)
        assert r.status == "violated"
        v = r.violation
        assert v.vertex == 1 and v.iteration == 2
        assert v.witness.edges == (0,)
        assert (v.witness.weight, v.witness.aux_weight) == (-1, 3)

    def test_empty_path_witness(self):
        r = bellman_ford_dijkstra(Graph.from_edges(2, [(0, 1, 4)]))
        w = r.path(1)
        assert w.edges == () and (w.weight, w.aux_weight) == (0, 0)

    def test_chain_witness(self):
        g = Graph.from_edges(3, [(0, 1, -1), (1, 2, -1)])
        r = bellman_ford_dijkstra(g)
        assert r.path(2).edges == (0, 1)
        assert r.parent.tolist() == [-1, 0, 1]

    def test_three_vertex_node(self):
        g = Graph.from_edges(3, [(0, 1, -1), (1, 2, -1), (2, 0, 2)])
        r = bellman_ford_dijkstra(g, threshold=10**6)
        assert r.completed and r.dist.tolist() == [0, -1, -2]
        assert reweight(g, r.dist).weights().min() >= 0

    def test_result_does_not_depend_on_guiding_potential(self):
        g = Graph.from_edges(4, [(0, 1, 3), (1, 2, -4), (2, 3, 1), (0, 3, -2)])
        a = bellman_ford_dijkstra(g)
        b = bellman_ford_dijkstra(g, phi=[5, -3, 2, 0])
        assert np.array_equal(a.dist, b.dist)

    def test_negative_cycle_backstop(self):
        g = Graph.from_edges(2, [(0, 1, -2), (1, 0, 1)])
        with pytest.raises(NegativeCycleSuspected):
            bellman_ford_dijkstra(g)
        assert bellman_ford_dijkstra(g, max_iters=4).status == "exhausted"

    def test_threshold_catches_negative_cycle(self):
        g = Graph.from_edges(2, [(0, 1, -2), (1, 0, 1)])
        r = bellman_ford_dijkstra(g, aux=[0, 1], threshold=5)
        assert r.status == "violated" and r.violation.witness.aux_weight > 5

    def test_zero_aux_negative_cycle_hits_safety_cap(self):
        g = Graph.from_edges(2, [(0, 1, -1), (1, 0, 0)])
        with pytest.raises(NegativeCycleSuspected):
            bellman_ford_dijkstra(g, threshold=3)

    def test_contract_checks(self):
        g = Graph.from_edges(2, [(0, 1, 1)])
        with pytest.raises(ContractError):
            bellman_ford_dijkstra(g, phi=[0])
        with pytest.raises(ContractError):
            bellman_ford_dijkstra(g, aux=[1, 2])
        with pytest.raises(ContractError):
            bellman_ford_dijkstra(g, threshold=-1)
        with pytest.raises(ContractError):
            bellman_ford_dijkstra(g, threshold=3, trace=True)


@given(st.integers(1, 12), st.integers(0, 2**32 - 1))
def test_labels_match_layered_dp(n, seed):
    rng = np.random.default_rng(seed)
    edges = random_edges(rng, n, int(rng.integers(0, 3 * n + 1)), -6, 9)
    phi = rng.integers(-4, 5, size=n)
    # keep the graph free of negative cycles under phi-nonnegative edges only;
    # negative cycles overall are fine because we cap the iterations
    g = Graph.from_edges(n, edges)
    wphi = g.w + phi[g.src] - phi[g.dst] if edges else np.zeros(0)
    r = bellman_ford_dijkstra(g, phi=phi, max_iters=n + 1, trace=True)
    dp = layered_dp(n, edges, phi.tolist(), n + 1)
    for i, row in enumerate(r.trace.tolist()):
        assert row == dp[i]
    if r.completed:
        assert r.dist.tolist() == dp[-1]
    assert wphi.size == g.m


@given(st.integers(1, 10), st.integers(0, 2**32 - 1))
def test_witness_totals_match_labels(n, seed):
    rng = np.random.default_rng(seed)
    edges = random_edges(rng, n, int(rng.integers(0, 3 * n + 1)), -5, 9)
    aux = rng.integers(0, 4, size=len(edges))
    g = Graph.from_edges(n, edges)
    r = bellman_ford_dijkstra(g, aux=aux, max_iters=n + 1)
    for v in range(n):
        w = r.path(v)
        assert w.weight == r.dist[v]
        assert w.aux_weight == r.aux[v]
        assert w.end == v
