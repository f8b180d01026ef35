from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from semimatch import EdgeList, EdgeStream, Matching, generate, greedy_maximal, validate_matching
from semimatch.matching import is_maximal
from semimatch.oracle import (
    EDGE_BUDGET, OracleBudgetExceeded, certificate_check, delta, max_matching_exact,
    short_aug_path_exists,
)

from _corpus import small_connected, to_nx


def petersen() -> EdgeList:
    g = nx.petersen_graph()
    return EdgeList(10, tuple(g.edges()))


@pytest.mark.parametrize("g, opt", [
    (generate("cycle", 5), 2),
    (generate("path", 7), 3),
    (petersen(), 5),
    (generate("two-greedy-trap", 7), 3),
    (EdgeList(3, ()), 0),
])
def test_exact_sizes(g, opt):
    res = max_matching_exact(g)
    assert res.opt_size == opt
    assert res.witness.size == opt
    assert validate_matching(g, res.witness) is None
    assert res.nodes_explored > 0


def test_exact_is_deterministic():
    g = petersen()
    a, b = max_matching_exact(g), max_matching_exact(g)
    assert a.witness.edges() == b.witness.edges() and a.nodes_explored == b.nodes_explored


def test_budget_guard_refuses():
    g = generate("random", 20, seed=1, m=EDGE_BUDGET + 1)
    with pytest.raises(OracleBudgetExceeded):
        max_matching_exact(g)


@given(st.integers(1, 14), st.integers(0, 10**6), st.integers(0, 40))
def test_exact_agrees_with_networkx(n, seed, m):
    m = min(m, n * (n - 1) // 2)
    g = generate("random", n, seed=seed, m=m)
    res = max_matching_exact(g)
    assert res.opt_size == len(nx.max_weight_matching(to_nx(g), maxcardinality=True))
    assert validate_matching(g, res.witness) is None
    assert is_maximal(g, res.witness)


def test_short_path_examples():
    p4 = generate("path", 4)
    assert short_aug_path_exists(p4, Matching.from_edges(4, [(1, 2)]), 1)
    k4 = EdgeList(4, tuple((u, v) for u in range(4) for v in range(u + 1, 4)))
    perfect = Matching.from_edges(4, [(0, 1), (2, 3)])
    assert not any(short_aug_path_exists(k4, perfect, k) for k in range(5))
    trap = generate("two-greedy-trap", 7)
    assert short_aug_path_exists(trap, Matching.from_edges(7, [(1, 2), (4, 5)]), 1)


def test_short_path_respects_length():
    # the only augmenting path of path(6) under {12, 34} has two matched edges
    g = generate("path", 6)
    m = Matching.from_edges(6, [(1, 2), (3, 4)])
    assert not short_aug_path_exists(g, m, 1)
    assert short_aug_path_exists(g, m, 2)


def test_berge_sanity_on_small_graphs():
    for g in small_connected():
        opt = max_matching_exact(g).opt_size
        m = greedy_maximal(g.n, g.edges)
        assert short_aug_path_exists(g, m, g.n) == (m.size < opt)


def test_certificate_on_optimal_matching():
    g = generate("cycle", 6)
    m = max_matching_exact(g).witness
    count, bound = certificate_check(g, m, 4)
    assert count == 0 and count <= bound


def test_certificate_on_two_greedy_trap():
    g = generate("two-greedy-trap", 7)
    m = Matching.from_edges(7, [(1, 2), (4, 5)])
    count, bound = certificate_check(g, m, 4)
    assert bound == 2 * Fraction(1, 48) * 2 == Fraction(1, 12)
    # a, d and g are the only free vertices, so disjoint paths come one at a time
    assert count == 1
    assert count > bound
    ratio = Fraction(max_matching_exact(g).opt_size, m.size)
    assert ratio == Fraction(3, 2) == 1 + Fraction(2, 4)


def test_certificate_on_four_cycle():
    g = generate("cycle", 4)
    for m in (Matching.from_edges(4, [(0, 1), (2, 3)]), Matching.from_edges(4, [(1, 2), (3, 0)])):
        count, bound = certificate_check(g, m, 2)
        assert count == 0 and count <= bound
        assert max_matching_exact(g).opt_size == m.size


def test_certificate_paths_are_disjoint():
    g = generate("path", 12)
    m = Matching.from_edges(12, [(1, 2), (5, 6), (9, 10)])
    assert certificate_check(g, m, 1)[0] == 3
    # 0-1=2-3 and 0-1=2-4 share everything but the last vertex
    fork = EdgeList(5, ((0, 1), (1, 2), (2, 3), (2, 4)))
    assert certificate_check(fork, Matching.from_edges(5, [(1, 2)]), 1)[0] == 1


def test_delta_matches_definition():
    for k in (1, 2, 3, 4, 6):
        assert delta(k) == Fraction(1, 2 * k * (k + 2))


def test_certificate_soundness_small_graphs():
    for g in small_connected():
        opt = max_matching_exact(g).opt_size
        for seed in range(3):
            m = greedy_maximal(g.n, EdgeStream(g, "perm", seed).scan())
            for k in (2, 4):
                count, bound = certificate_check(g, m, k)
                if count <= bound and m.size:
                    assert Fraction(opt, m.size) <= 1 + Fraction(2, k)
