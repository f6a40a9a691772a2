import random

import pytest
from hypothesis import given

from conftest import (
    brute_grundy,
    brute_max_induced,
    brute_max_minimal_vc,
    brute_min_ids,
    brute_mis,
    brute_set_cover,
    brute_tsp,
    graphs,
    metrics,
    random_graph,
    set_systems,
)
from tradeoffs import exact
from tradeoffs.errors import CapExceeded, Infeasible
from tradeoffs.graph import BinaryCsp, Graph, Metric, ProblemKind, SetSystem, is_feasible, popcount


def test_mis_examples():
    assert exact.max_independent_set_exact(Graph.complete(4))[0] == 1
    assert exact.max_independent_set_exact(Graph.cycle(5))[0] == 2
    assert exact.max_independent_set_exact(Graph.empty(6)) == (6, 0b111111)


def test_min_ids_examples():
    assert exact.min_ids_exact(Graph.path(3)) == (1, 0b010)
    assert exact.min_ids_exact(Graph.path(5))[0] == 2
    assert exact.min_ids_exact(Graph.complete(7))[0] == 1
    assert exact.min_ids_exact(Graph.empty(0)) == (0, 0)


def test_max_minimal_vc_examples():
    assert exact.max_minimal_vc_exact(Graph.complete(2))[0] == 1
    assert exact.max_minimal_vc_exact(Graph.star(3)) == (3, 0b1110)
    assert exact.max_minimal_vc_exact(Graph.cycle(4))[0] == 2


def test_max_induced_examples():
    assert exact.max_induced_exact(Graph.complete(5), "path")[0] == 2
    assert exact.max_induced_exact(Graph.cycle(6), "path")[0] == 5
    assert exact.max_induced_exact(Graph.cycle(6), ProblemKind.INDUCED_TREE)[0] == 5
    assert exact.max_induced_exact(Graph.cycle(6), "forest")[0] == 5
    assert exact.max_induced_exact(Graph.empty(0), "tree") == (0, 0)
    with pytest.raises(ValueError):
        exact.max_induced_exact(Graph.path(3), ProblemKind.INDEPENDENT_SET)


def test_held_karp_examples():
    two = Metric([[0, 3], [4, 0]])
    assert exact.held_karp(two).cost == 7
    uniform = Metric([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
    assert exact.held_karp(uniform).cost == 3
    dist = [[10] * 4 for _ in range(4)]
    for i in range(4):
        dist[i][i] = 0
        dist[i][(i + 1) % 4] = 1
    tour = exact.held_karp(Metric(dist))
    assert (tour.order, tour.cost) == ((0, 1, 2, 3), 4)
    assert exact.held_karp(Metric([[0]])).cost == 0


def test_grundy_examples():
    assert exact.grundy_exact(Graph.complete(5))[0] == 5
    assert exact.grundy_exact(Graph.empty(4))[0] == 1
    assert exact.grundy_exact(Graph.path(4))[0] == 3
    assert exact.grundy_exact(Graph.cycle(4))[0] == 2
    assert exact.grundy_exact(Graph.empty(0))[0] == 0


def test_set_cover_examples():
    assert exact.set_cover_exact(SetSystem.from_lists(4, [[0, 1, 2, 3]]))[0] == 1
    four = SetSystem.from_lists(4, [[0, 1], [2, 3], [0, 2], [1, 3]])
    assert exact.set_cover_exact(four) == (2, (0, 1))
    singles = SetSystem.from_lists(4, [[0], [1], [2], [3]])
    assert exact.set_cover_exact(singles)[0] == 4
    with pytest.raises(Infeasible):
        exact.set_cover_exact(SetSystem.from_lists(3, [[0, 1]]))


def test_csp_min_unsat_examples():
    one = BinaryCsp(2, 2, ((0, 1, frozenset({(0, 0)})),))
    assert exact.csp_min_unsat(one) == (0, (0, 0))
    differ = frozenset({(0, 1), (1, 0)})
    tri = BinaryCsp(3, 2, ((0, 1, differ), (1, 2, differ), (0, 2, differ)))
    assert exact.csp_min_unsat(tri)[0] == 1
    assert exact.csp_min_unsat(BinaryCsp(3, 2, ()))[0] == 0


def test_caps_raise_instead_of_truncating():
    with pytest.raises(CapExceeded):
        exact.max_independent_set_exact(Graph.empty(30))
    with pytest.raises(CapExceeded):
        exact.grundy_exact(Graph.empty(19))
    with pytest.raises(CapExceeded):
        exact.held_karp(Metric([[0] * 21 for _ in range(21)]))
    with pytest.raises(CapExceeded):
        exact.max_induced_exact(Graph.empty(21), "forest")
    with pytest.raises(CapExceeded):
        exact.set_cover_exact(SetSystem(1, tuple([1] * 21)))
    assert exact.max_independent_set_exact(Graph.empty(30), cap=30)[0] == 30


# oracle cross-checks against independent brute force


@given(graphs(max_n=9))
def test_mis_and_ids_against_brute_force(g):
    size, mask = exact.max_independent_set_exact(g)
    assert size == brute_mis(g)
    assert is_feasible(g, mask, ProblemKind.INDEPENDENT_SET)
    size, mask = exact.min_ids_exact(g)
    assert size == brute_min_ids(g)
    if g.n:
        assert is_feasible(g, mask, ProblemKind.INDEPENDENT_DOMINATING_SET)


@given(graphs(max_n=9))
def test_max_minimal_vc_against_brute_force(g):
    size, cover = exact.max_minimal_vc_exact(g)
    assert size == brute_max_minimal_vc(g) == popcount(cover)
    assert is_feasible(g, cover, ProblemKind.MINIMAL_VERTEX_COVER)


@given(graphs(max_n=8))
def test_max_induced_against_brute_force(g):
    for kind in ("path", "tree", "forest"):
        size, mask = exact.max_induced_exact(g, kind)
        assert size == brute_max_induced(g, kind)
        if g.n:
            assert is_feasible(g, mask, exact._induced_kind(kind))


def test_duality_on_random_graphs():
    rng = random.Random(3)
    for _ in range(200):
        n = rng.randint(0, 12)
        g = random_graph(rng, n, rng.choice([0.2, 0.4, 0.6]))
        assert exact.max_minimal_vc_exact(g)[0] + exact.min_ids_exact(g)[0] == n


def test_forest_sandwich_on_random_graphs():
    rng = random.Random(4)
    for _ in range(120):
        g = random_graph(rng, rng.randint(1, 12), rng.choice([0.2, 0.4, 0.6]))
        alpha = exact.max_independent_set_exact(g)[0]
        forest = exact.max_induced_exact(g, "forest")[0]
        assert alpha <= forest <= 2 * alpha


@given(metrics(max_n=8))
def test_held_karp_against_permutations(d):
    tour = exact.held_karp(d)
    assert tour.is_valid_for(d)
    assert tour.cost == brute_tsp(d)


@given(graphs(max_n=7))
def test_grundy_against_orderings(g):
    k, witness = exact.grundy_exact(g)
    assert k == brute_grundy(g)
    assert witness.k == k
    assert witness.is_valid_for(g)
    assert exact.first_fit_count(g, witness.ordering()) == k


def test_grundy_witness_rejects_bad_partitions():
    p3 = Graph.path(3)
    assert exact.GrundyWitness((0b101, 0b010)).is_valid_for(p3)
    assert not exact.GrundyWitness((0b011,)).is_valid_for(p3)  # not independent
    assert not exact.GrundyWitness((0b010, 0b101)).is_valid_for(Graph.empty(3))


@given(set_systems())
def test_set_cover_against_brute_force(system):
    size, combo = exact.set_cover_exact(system)
    assert size == brute_set_cover(system)
    assert system.is_cover(combo)
