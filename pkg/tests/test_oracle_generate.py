import numpy as np
import pytest
from hypothesis import given, strategies as st

from negsssp import ContractError, Graph, dijkstra, gen_random, oracle_bellman_ford
from negsssp.certificate import NegCycleCertificate, verify_cycle
from negsssp.generate import MODES
from negsssp.oracle import has_negative_cycle

from oracles import floyd_warshall


class TestOracle:
    def test_two_cycle(self):
        g = Graph.from_edges(2, [(0, 1, -3), (1, 0, 1)])
        cert = oracle_bellman_ford(g)
        assert cert.weight == -2 and verify_cycle(g, cert)

    def test_small_example(self):
        g = Graph.from_edges(3, [(0, 1, 2), (1, 2, -1), (0, 2, 5)])
        assert oracle_bellman_ford(g, 0).dist.tolist() == [0, 2, 1]

    def test_unreachable_cycle_is_ignored_from_a_source(self):
        g = Graph.from_edges(3, [(1, 2, -3), (2, 1, 1)])
        assert not isinstance(oracle_bellman_ford(g, 0), NegCycleCertificate)
        assert has_negative_cycle(g)

    @given(st.integers(1, 7), st.integers(0, 2**32 - 1))
    def test_matches_dijkstra_when_nonnegative(self, n, seed):
        g = gen_random(n, 3 * n if n > 1 else 0, 0, 9, seed)
        s = seed % n
        dist, _ = dijkstra(g, [s])
        assert np.array_equal(oracle_bellman_ford(g, s).dist, dist)

    @given(st.integers(1, 6), st.integers(0, 2**32 - 1))
    def test_matches_floyd_warshall(self, n, seed):
        g = gen_random(n, 2 * n if n > 1 else 0, -4, 9, seed, mode="acyclic-negative-free")
        fw = floyd_warshall(n, list(g.edges()))
        t = oracle_bellman_ford(g, 0)
        assert [None if x >= 2**62 else int(x) for x in t.dist] == \
               [None if x == float("inf") else x for x in fw[0]]


class TestGenerate:
    def test_single_vertex(self):
        g = gen_random(1, 0, seed=7)
        assert g.n == 1 and g.m == 0

    def test_deterministic(self):
        for mode in MODES:
            a = gen_random(20, 60, seed=3, mode=mode)
            b = gen_random(20, 60, seed=3, mode=mode)
            assert np.array_equal(a.src, b.src) and np.array_equal(a.dst, b.dst)
            assert np.array_equal(a.w, b.w)

    @pytest.mark.parametrize("seed", range(20))
    def test_planted_cycle_is_found(self, seed):
        g = gen_random(12, 30, seed=seed, mode="planted-negative-cycle", cycle_length=3)
        assert has_negative_cycle(g)

    @pytest.mark.parametrize("seed", range(20))
    def test_negative_free_mode(self, seed):
        g = gen_random(12, 40, seed=seed, mode="acyclic-negative-free")
        assert not has_negative_cycle(g)
        assert g.w.min() >= -32 and g.w.max() <= 32

    def test_weight_range_and_no_loops(self):
        g = gen_random(10, 200, -3, 4, seed=1)
        assert g.w.min() >= -3 and g.w.max() <= 4
        assert not np.any(g.src == g.dst)

    @pytest.mark.parametrize("kw", [dict(n=0, m=0), dict(n=3, m=-1), dict(n=3, m=3, wmin=5, wmax=1),
                                    dict(n=3, m=3, mode="bogus"),
                                    dict(n=3, m=2, mode="planted-negative-cycle"),
                                    dict(n=3, m=5, wmin=0, mode="planted-negative-cycle")])
    def test_infeasible(self, kw):
        with pytest.raises(ContractError):
            gen_random(**kw)
