import random

import pytest

from expindep.constructors import tree_good_set
from expindep.families import (
    gen_cycle,
    gen_path,
    gen_perfect_binary,
    gen_tk,
    random_subcubic_graph,
)
from expindep.graphs import Graph, degree2_vertices, is_connected, is_subcubic, is_tree
from expindep.solvers import (
    InfeasibleError,
    SearchResult,
    alpha_e_bruteforce,
    alpha_e_exact,
    find_maximal_ei_not_ed,
    gamma_e_exact,
    greedy_dominating_set,
    try_extend,
)
from expindep.weights import (
    ONE,
    ed_holds,
    ei_holds,
    is_exponentially_dominating,
    is_exponentially_independent,
    weight,
)


class TestAlphaExamples:
    def test_p5(self):
        assert alpha_e_exact(gen_path(5)).optimum == 2

    def test_k1(self):
        res = alpha_e_exact(Graph(1))
        assert res.optimum == 1 and res.witness == (0,)

    def test_p2(self):
        assert alpha_e_exact(gen_path(2)).optimum == 1

    def test_tk_family(self):
        for k in range(1, 5):
            lg = gen_tk(k)
            res = alpha_e_exact(lg.graph)
            assert res.optimum == k + 2
            # the endvertex selection attains the optimum
            from expindep.families import canonical_set_tk

            S = canonical_set_tk(k)
            assert len(S) == res.optimum
            assert ei_holds(lg.graph, S)

    def test_pbt_depth2(self):
        lg = gen_perfect_binary(2)
        res = alpha_e_exact(lg.graph)
        assert res.optimum == 4 == (lg.graph.n + 1) // 2
        assert frozenset(res.witness) == lg.vset("leaves")

    def test_required_respected(self):
        res = alpha_e_exact(gen_path(5), required={0, 4})
        assert set(res.witness) == {0, 4}

    def test_required_infeasible(self):
        with pytest.raises(InfeasibleError):
            alpha_e_exact(gen_path(2), required={0, 1})

    def test_excluded_respected(self):
        res = alpha_e_exact(gen_path(5), excluded={0, 2})
        assert not ({0, 2} & set(res.witness))

    def test_overlap_rejected(self):
        with pytest.raises(ValueError):
            alpha_e_exact(gen_path(5), required={0}, excluded={0})

    def test_nodes_deterministic(self):
        a = alpha_e_exact(gen_tk(2).graph)
        b = alpha_e_exact(gen_tk(2).graph)
        assert (a.witness, a.nodes_explored) == (b.witness, b.nodes_explored)


class TestBruteForce:
    def test_guard(self):
        with pytest.raises(ValueError):
            alpha_e_bruteforce(random_subcubic_graph(21, 0, 1))

    def test_k1(self):
        assert alpha_e_bruteforce(Graph(1)).optimum == 1

    def test_agrees_on_trees(self, trees_by_order):
        for n in range(1, 10):
            for T in trees_by_order[n]:
                a = alpha_e_exact(T)
                b = alpha_e_bruteforce(T)
                assert a.optimum == b.optimum, (n, list(T.edges()))
                assert a.witness == b.witness, (n, list(T.edges()))

    def test_agrees_on_random_graphs(self, random_graph_pool):
        for G in random_graph_pool[:60]:
            a = alpha_e_exact(G)
            b = alpha_e_bruteforce(G)
            assert a.optimum == b.optimum
            assert a.witness == b.witness

    def test_witnesses_reverify(self, random_graph_pool):
        for G in random_graph_pool[:20]:
            res = alpha_e_exact(G)
            assert is_exponentially_independent(G, res.witness).ok


class TestBounds:
    def test_half_ceiling(self, trees_by_order, random_graph_pool):
        for n in range(1, 10):
            for T in trees_by_order[n]:
                if is_subcubic(T):
                    assert 2 * alpha_e_exact(T).optimum <= T.n + 1
        for G in random_graph_pool[:40]:
            if is_subcubic(G) and is_connected(G):
                assert 2 * alpha_e_exact(G).optimum <= G.n + 1

    def test_quarter_bound_and_good_set(self, trees_by_order):
        for n in range(2, 10):
            for T in trees_by_order[n]:
                if not (is_subcubic(T) and degree2_vertices(T)):
                    continue
                opt = alpha_e_exact(T).optimum
                S, _ = tree_good_set(T)
                assert 4 * opt >= T.n + 3
                assert opt >= len(S)


class TestIncrementalExtension:
    def test_matches_full_verifier(self):
        rng = random.Random(71)
        for trial in range(80):
            G = random_subcubic_graph(5 + trial % 10, trial % 3, trial + 1100)
            members = frozenset()
            weights = {}
            order = list(range(G.n))
            rng.shuffle(order)
            for v in order:
                ext = try_extend(G, members, weights, v)
                full = ei_holds(G, members | {v})
                assert (ext is not None) == full, (trial, sorted(members), v)
                if ext is not None:
                    members = members | {v}
                    weights = ext
                    for u in members:
                        assert weights[u] == weight(G, members - {u}, u)


class TestGamma:
    def test_k1(self):
        res = gamma_e_exact(Graph(1))
        assert res.optimum == 1 and res.witness == (0,)

    def test_p3_center(self):
        res = gamma_e_exact(gen_path(3))
        assert res.optimum == 1 and res.witness == (1,)

    def test_p7_regression(self):
        res = gamma_e_exact(gen_path(7))
        assert res.optimum == 2 and res.witness == (1, 5)

    def test_witness_reverifies(self, trees_by_order):
        for T in trees_by_order[7]:
            res = gamma_e_exact(T)
            assert is_exponentially_dominating(T, res.witness).ok

    def test_disconnected_sums_components(self):
        G = Graph(6, [(0, 1), (1, 2), (3, 4), (4, 5)])  # two 3-paths
        res = gamma_e_exact(G)
        assert res.optimum == 2
        assert set(res.witness) == {1, 4}

    def test_supersets_need_not_dominate(self):
        # the domination search cannot prune by monotonicity: growing a
        # dominating set can sever routes and uncover a vertex
        G = Graph(7, [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (1, 6)])
        assert ed_holds(G, {2, 3, 4, 5})  # vertex 6 receives exactly 4 * 1/4
        assert not ed_holds(G, {0, 2, 3, 4, 5})  # 0 now shields 6 from the leaves

    def test_timeout_returns_greedy_bound(self):
        G = random_subcubic_graph(16, 2, 9)
        res = gamma_e_exact(G, time_budget=0.0)
        assert res.status == "timeout"
        assert ed_holds(G, res.witness)


class TestGreedyDominating:
    def test_always_dominates(self):
        for seed in range(8):
            G = random_subcubic_graph(5 + seed, seed % 2, seed + 1200)
            S = greedy_dominating_set(G)
            assert ed_holds(G, S)

    def test_deterministic(self):
        G = random_subcubic_graph(12, 2, 33)
        assert greedy_dominating_set(G) == greedy_dominating_set(G)


class TestMaximalNotDominating:
    def test_p5_witness(self):
        S = find_maximal_ei_not_ed(gen_path(5))
        assert S == {0, 2}

    def test_contract(self, trees_by_order):
        found = 0
        for n in range(2, 9):
            for T in trees_by_order[n]:
                S = find_maximal_ei_not_ed(T)
                if S is None:
                    continue
                found += 1
                assert ei_holds(T, S)
                assert not ed_holds(T, S)
                for v in range(T.n):
                    if v not in S:
                        assert not ei_holds(T, S | {v})
        assert found >= 1

    def test_p3_center_not_a_witness(self):
        # {1} on the 3-path is independent and dominating, so the search
        # must return something else or nothing of size 1 containing it
        S = find_maximal_ei_not_ed(gen_path(3))
        assert S != {1}

    def test_guard(self):
        with pytest.raises(ValueError):
            find_maximal_ei_not_ed(gen_cycle(17))


class TestSearchResult:
    def test_text_block(self):
        res = SearchResult(2, (0, 4), 17, "optimal")
        text = res.to_text()
        assert "optimum 2" in text
        assert "witness 0 4" in text
        assert "status optimal" in text
