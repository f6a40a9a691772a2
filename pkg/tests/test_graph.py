from math import comb

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graphs, members, nx_independent, nx_is_path, to_nx
from tradeoffs.graph import (
    BinaryCsp,
    CnfFormula,
    Graph,
    Metric,
    ProblemKind,
    SetSystem,
    bits,
    component_count,
    enumerate_independent_subsets,
    enumerate_subsets,
    greedy_maximal_independent_set,
    is_dominating,
    is_feasible,
    is_independent,
    mask_of,
    maximal_matching,
    neighbors,
    subset_count,
)


def test_graph_rejects_asymmetric_or_looped_adjacency():
    with pytest.raises(ValueError):
        Graph(2, (0b10, 0b00))
    with pytest.raises(ValueError):
        Graph(1, (0b1,))
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 2)])


def test_named_graphs():
    assert Graph.path(5).edges() == [(0, 1), (1, 2), (2, 3), (3, 4)]
    assert Graph.cycle(4).m == 4
    assert Graph.complete(5).m == 10
    assert Graph.star(3).degree(0) == 3
    assert Graph.empty(3).m == 0


def test_induced_relabels_in_index_order():
    g = Graph.path(5)
    sub, labels = g.induced(mask_of([1, 2, 4]))
    assert labels == [1, 2, 4]
    assert sub.edges() == [(0, 1)]


# neighbors


def test_neighbors_examples():
    p3 = Graph.path(3)
    assert neighbors(p3, mask_of([1])) == mask_of([0, 2])
    assert neighbors(Graph.cycle(5), 0) == 0
    star = Graph.star(3)
    assert neighbors(star, mask_of([1, 2])) == mask_of([0])


@given(graphs(), st.data())
def test_neighbors_of_independent_set_are_disjoint_from_it(g, data):
    s = data.draw(st.integers(0, (1 << g.n) - 1))
    nb = neighbors(g, s)
    h = to_nx(g)
    assert set(members(nb)) == {w for v in members(s) for w in h[v]}
    if is_independent(g, s):
        assert nb & s == 0


# feasibility


def test_is_feasible_examples():
    p5 = Graph.path(5)
    assert is_feasible(p5, mask_of([1, 3]), ProblemKind.INDEPENDENT_DOMINATING_SET)
    assert is_feasible(Graph.complete(2), mask_of([0]), ProblemKind.MINIMAL_VERTEX_COVER)
    assert not is_feasible(Graph.cycle(4), 0b1111, ProblemKind.INDUCED_FOREST)


def test_induced_path_degenerate_sizes():
    g = Graph.complete(3)
    assert not is_feasible(g, 0, ProblemKind.INDUCED_PATH)
    assert is_feasible(g, 0b1, ProblemKind.INDUCED_PATH)
    assert not is_feasible(g, 0, ProblemKind.INDUCED_TREE)
    assert is_feasible(g, 0, ProblemKind.INDUCED_FOREST)


@given(graphs(max_n=7), st.data())
def test_is_feasible_agrees_with_networkx(g, data):
    s = data.draw(st.integers(0, (1 << g.n) - 1))
    h = to_nx(g)
    sub = to_nx(g, s)
    vs = members(s)
    assert is_feasible(g, s, ProblemKind.INDEPENDENT_SET) == nx_independent(h, vs)
    assert is_feasible(g, s, ProblemKind.INDEPENDENT_DOMINATING_SET) == (
        nx_independent(h, vs) and nx.is_dominating_set(h, vs)
    )
    covers = all(u in vs or v in vs for u, v in h.edges())
    minimal = all(any(w not in vs for w in h[v]) for v in vs)
    assert is_feasible(g, s, ProblemKind.MINIMAL_VERTEX_COVER) == (covers and minimal)
    assert is_feasible(g, s, ProblemKind.INDUCED_PATH) == nx_is_path(sub)
    assert is_feasible(g, s, ProblemKind.INDUCED_TREE) == (len(vs) > 0 and nx.is_tree(sub))
    assert is_feasible(g, s, ProblemKind.INDUCED_FOREST) == (len(vs) == 0 or nx.is_forest(sub))
    assert component_count(g, s) == nx.number_connected_components(sub)


@given(graphs(max_n=10), st.data())
def test_minimal_vertex_cover_is_complement_of_maximal_independent_set(g, data):
    s = data.draw(st.integers(0, (1 << g.n) - 1))
    rest = g.vertices & ~s
    maximal_is = is_independent(g, rest) and is_dominating(g, rest)
    assert is_feasible(g, s, ProblemKind.MINIMAL_VERTEX_COVER) == maximal_is


# matching


def test_maximal_matching_examples():
    assert maximal_matching(Graph.complete(2)) == [(0, 1)]
    assert maximal_matching(Graph.path(4)) == [(0, 1), (2, 3)]
    assert maximal_matching(Graph.empty(4)) == []


@given(graphs())
def test_maximal_matching_is_disjoint_and_maximal(g):
    m = maximal_matching(g)
    matched = [v for e in m for v in e]
    assert len(matched) == len(set(matched))
    assert all(g.adj[u] >> v & 1 for u, v in m)
    covered = set(matched)
    assert all(u in covered or v in covered for u, v in g.edges())


@given(graphs())
def test_greedy_mis_is_independent_dominating(g):
    s = greedy_maximal_independent_set(g)
    assert is_feasible(g, s, ProblemKind.INDEPENDENT_DOMINATING_SET)


# enumeration


def test_enumerate_subsets_examples():
    assert len(list(enumerate_subsets(5, 2))) == 16
    assert list(enumerate_subsets(3, 0)) == [0]
    assert sum(1 for _ in enumerate_subsets(16, 4)) == 2517


def test_enumerate_subsets_order_is_size_then_mask():
    out = list(enumerate_subsets(4, 4))
    assert out == sorted(range(16), key=lambda s: (bin(s).count("1"), s))


def test_enumerate_subsets_rejects_bad_k():
    with pytest.raises(ValueError):
        list(enumerate_subsets(3, 4))


@pytest.mark.parametrize("n", range(0, 17))
def test_enumerate_subsets_count_matches_binomial_sum(n):
    for k in range(n + 1):
        expected = sum(comb(n, j) for j in range(k + 1))
        assert subset_count(n, k) == expected
        if n <= 12:
            out = list(enumerate_subsets(n, k))
            assert len(out) == expected == len(set(out))


def test_enumerate_independent_subsets_examples():
    k2 = Graph.complete(2)
    assert sorted(enumerate_independent_subsets(k2, 0b11)) == [0, 1, 2]
    assert len(list(enumerate_independent_subsets(Graph.empty(3), 0b111))) == 8
    c4 = list(enumerate_independent_subsets(Graph.cycle(4), 0b1111))
    assert sorted(c4) == sorted([0, 1, 2, 4, 8, 0b0101, 0b1010])


@given(graphs(), st.data())
def test_enumerate_independent_subsets_is_exhaustive_and_unique(g, data):
    within = data.draw(st.integers(0, (1 << g.n) - 1))
    out = list(enumerate_independent_subsets(g, within))
    assert len(out) == len(set(out))
    expected = {s for s in range(1 << g.n) if s & ~within == 0 and is_independent(g, s)}
    assert set(out) == expected


# other instance types


def test_cnf_validation():
    phi = CnfFormula(3, ((1, -2, 3),))
    assert phi.m == 1
    assert phi.satisfied_by([True, True, False])
    assert not phi.satisfied_by([False, True, False])
    with pytest.raises(ValueError):
        CnfFormula(3, ((1, -1),))
    with pytest.raises(ValueError):
        CnfFormula(3, ((1, 2, 3, -2),))
    with pytest.raises(ValueError):
        CnfFormula(2, ((3,),))


def test_csp_validation_and_violations():
    differ = frozenset({(0, 1), (1, 0)})
    csp = BinaryCsp(3, 2, ((0, 1, differ), (1, 2, differ), (0, 2, differ)))
    assert csp.violated((0, 1, 0)) == 1
    with pytest.raises(ValueError):
        BinaryCsp(2, 2, ((0, 0, differ),))
    with pytest.raises(ValueError):
        BinaryCsp(2, 2, ((0, 1, frozenset({(0, 2)})),))


def test_set_system_helpers():
    sys_ = SetSystem.from_lists(4, [[0, 1], [2, 3], [0, 2]])
    assert sys_.m == 3
    assert sys_.is_cover([0, 1])
    assert not sys_.is_cover([0, 2])
    assert sys_.coverable()
    assert not SetSystem.from_lists(3, [[0]]).coverable()


def test_metric_closure_enforces_triangle_inequality():
    d = Metric([[0, 1, 10], [10, 0, 1], [1, 10, 0]])
    assert not d.satisfies_triangle()
    c = d.closure()
    assert c.triangle_checked and c.satisfies_triangle()
    assert c.dist[0][2] == 2
    assert d.tour_cost([0, 1, 2]) == 3
    with pytest.raises(ValueError):
        Metric([[0, -1], [1, 0]])
    with pytest.raises(ValueError):
        Metric([[1, 1], [1, 0]])


def test_bits_and_mask_round_trip():
    assert list(bits(mask_of([0, 3, 5]))) == [0, 3, 5]
