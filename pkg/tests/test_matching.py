import networkx as nx
import pytest
from hypothesis import given, strategies as st

from semimatch import AugPath, EdgeStream, Matching, augment_along, generate, greedy_maximal, validate_matching
from semimatch.matching import MatchingError, is_maximal, reverse
from semimatch.oracle import find_short_aug_path

from _corpus import to_nx

A, B, C, D, E, F, G = range(7)


def test_greedy_triangle():
    tri = generate("cycle", 3)
    for order in (tri.edges, tri.edges[::-1]):
        assert greedy_maximal(3, order).size == 1


def test_greedy_trap_and_empty():
    g = generate("two-greedy-trap", 7)
    m = greedy_maximal(7, EdgeStream(g).scan())
    assert m.edges() == [(B, C), (E, F)] and m.size == 2
    assert greedy_maximal(4, []).size == 0


def test_reverse_arc():
    assert reverse((3, 5)) == (5, 3)


def test_augment_path_of_four():
    m = Matching.from_edges(4, [(B, C)])
    augment_along(m, AugPath(A, ((B, C),), D))
    assert m.edges() == [(A, B), (C, D)]
    assert m.size == 2


def test_augment_single_edge():
    m = Matching(2)
    augment_along(m, AugPath(0, (), 1), {(0, 1)})
    assert m.edges() == [(0, 1)]


def test_augment_leaves_other_vertices_alone():
    m = Matching.from_edges(8, [(B, C), (5, 6)])
    augment_along(m, AugPath(A, ((B, C),), D))
    assert m.mate[5] == 6 and m.mate[6] == 5 and m.mate[7] == -1


def test_trap_second_augmentation_rejected():
    g = generate("two-greedy-trap", 7)
    es = g.edge_set()
    m = Matching.from_edges(7, [(B, C), (E, F)])
    augment_along(m, AugPath(A, ((B, C),), D), es)
    assert m.size == 3
    # from g the matched edge e-f is traversed as (f, e), ending at d
    with pytest.raises(MatchingError, match="not free"):
        augment_along(m, AugPath(G, ((F, E),), D), es)
    assert m.size == 3


PATH4 = {(0, 1), (1, 2), (2, 3)}


@pytest.mark.parametrize("path, msg", [
    (AugPath(A, ((C, B),), D), "not a graph edge"),  # a-c and b-d are not edges
    (AugPath(A, ((D, E),), F), "not matched"),
    (AugPath(B, ((B, C),), D), "not free"),
    (AugPath(A, (), A), "distinct"),
    (AugPath(A, ((B, C), (B, C)), D), "revisits"),
])
def test_augment_rejects_bad_paths(path, msg):
    m = Matching.from_edges(7, [(B, C)])
    with pytest.raises(MatchingError, match=msg):
        augment_along(m, path, PATH4)
    assert m.size == 1


def test_augment_rejects_missing_connector():
    m = Matching.from_edges(5, [(1, 2)])
    with pytest.raises(MatchingError, match="not a graph edge"):
        augment_along(m, AugPath(0, ((1, 2),), 4), {(0, 1), (1, 2), (2, 3)})


def test_validate_examples():
    p3 = generate("path", 3)
    assert validate_matching(p3, Matching.from_edges(3, [(0, 1)])) is None
    assert "vertex 1 reused" in validate_matching(p3, [(0, 1), (1, 2)])
    assert "not in graph" in validate_matching(p3, [(0, 2)])
    assert "not in graph" in validate_matching(p3, Matching.from_edges(3, [(0, 2)]))


def test_validate_catches_broken_mate_tables():
    p3 = generate("path", 3)
    m = Matching.from_edges(3, [(0, 1)])
    m.mate[1] = 2
    assert "asymmetric" in validate_matching(p3, m)
    m = Matching.from_edges(3, [(0, 1)])
    m.size = 2
    assert "size field" in validate_matching(p3, m)
    assert "entries" in validate_matching(p3, Matching(4))


def test_from_edges_rejects_reuse():
    with pytest.raises(MatchingError):
        Matching.from_edges(3, [(0, 1), (1, 2)])


def test_serialize_sorted():
    m = Matching.from_edges(6, [(5, 4), (1, 0)])
    assert m.serialize() == "0 1\n4 5\n"


graphs = st.builds(
    lambda n, seed, density: generate("random", n, seed=seed, m=int(density * n * (n - 1) / 2)),
    st.integers(2, 12), st.integers(0, 10**6), st.floats(0, 1),
)


@given(graphs, st.integers(0, 1000))
def test_greedy_is_maximal_and_half_optimal(g, seed):
    m = greedy_maximal(g.n, EdgeStream(g, "perm", seed).scan())
    assert validate_matching(g, m) is None
    assert is_maximal(g, m)
    opt = len(nx.max_weight_matching(to_nx(g), maxcardinality=True))
    assert 2 * m.size >= opt


@given(graphs)
def test_augmenting_grows_by_one_and_stays_valid(g):
    m = greedy_maximal(g.n, g.edges)
    while True:
        vs = find_short_aug_path(g, m, g.n)
        if vs is None:
            break
        arcs = tuple((vs[i], vs[i + 1]) for i in range(1, len(vs) - 1, 2))
        before = m.size
        augment_along(m, AugPath(vs[0], arcs, vs[-1]), g.edge_set())
        assert m.size == before + 1
        assert validate_matching(g, m) is None
    assert m.size == len(nx.max_weight_matching(to_nx(g), maxcardinality=True))
