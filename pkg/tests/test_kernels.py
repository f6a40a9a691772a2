import importlib
import os
import subprocess
import sys
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import brute_grundy, brute_mis, brute_tsp, graphs, metrics
from tradeoffs import _pykernels, kernels
from tradeoffs.graph import Graph, ProblemKind, is_feasible

try:
    from tradeoffs import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS = [pytest.param(_pykernels, id="python")]
BACKENDS.append(
    pytest.param(_ckernels, id="compiled", marks=pytest.mark.skipif(_ckernels is None, reason="extension not built"))
)

KINDS = {
    ProblemKind.INDEPENDENT_SET: kernels.IS,
    ProblemKind.INDEPENDENT_DOMINATING_SET: kernels.IDS,
    ProblemKind.MINIMAL_VERTEX_COVER: kernels.MVC,
    ProblemKind.INDUCED_PATH: kernels.PATH,
    ProblemKind.INDUCED_TREE: kernels.TREE,
    ProblemKind.INDUCED_FOREST: kernels.FOREST,
}


@pytest.mark.parametrize("backend", BACKENDS)
@given(g=graphs(max_n=8), data=st.data())
def test_feasible_matches_reference_predicate(backend, g, data):
    s = data.draw(st.integers(0, (1 << g.n) - 1))
    for kind, code in KINDS.items():
        assert backend.feasible(g.adj, g.n, s, code) == is_feasible(g, s, kind)


@pytest.mark.parametrize("backend", BACKENDS)
@given(g=graphs(max_n=9), data=st.data())
def test_scan_subsets_counts_and_choice(backend, g, data):
    k = data.draw(st.integers(0, g.n))
    kind = data.draw(st.sampled_from(list(KINDS)))
    maximize = data.draw(st.booleans())
    best, count = backend.scan_subsets(g.adj, g.n, k, KINDS[kind], maximize)
    assert count == sum(comb(g.n, j) for j in range(k + 1))
    order = sorted(range(1 << g.n), key=lambda s: (bin(s).count("1"), s))
    feasible = [s for s in order if bin(s).count("1") <= k and is_feasible(g, s, kind)]
    if not feasible:
        assert best == -1
    elif maximize:
        top = max(bin(s).count("1") for s in feasible)
        assert best == next(s for s in feasible if bin(s).count("1") == top)
    else:
        assert best == feasible[0]


@pytest.mark.parametrize("backend", BACKENDS)
@given(d=metrics(max_n=7))
def test_held_karp_is_optimal(backend, d):
    cost, order = backend.held_karp(d.dist)
    assert sorted(order) == list(range(d.n))
    assert order[0] == 0
    assert cost == pytest.approx(brute_tsp(d))
    assert d.tour_cost(order) == pytest.approx(cost)


@pytest.mark.parametrize("backend", BACKENDS)
@given(g=graphs(max_n=7))
def test_grundy_matches_ordering_brute_force(backend, g):
    k, classes, states = backend.grundy(g.adj, g.n)
    assert k == brute_grundy(g)
    assert len(classes) == k
    union = 0
    for c in classes:
        assert union & c == 0
        union |= c
    assert union == (1 << g.n) - 1


@pytest.mark.parametrize("backend", BACKENDS)
@given(g=graphs(max_n=10))
def test_max_independent_set(backend, g):
    size, mask, nodes = backend.max_independent_set(g.adj, g.n)
    assert size == brute_mis(g) == bin(mask).count("1")
    assert is_feasible(g, mask, ProblemKind.INDEPENDENT_SET)
    assert nodes >= 1


@pytest.mark.skipif(_ckernels is None, reason="extension not built")
@given(g=graphs(max_n=12), data=st.data())
def test_backends_agree_exactly(g, data):
    k = data.draw(st.integers(0, g.n))
    for code in KINDS.values():
        for maximize in (False, True):
            assert _pykernels.scan_subsets(g.adj, g.n, k, code, maximize) == _ckernels.scan_subsets(
                g.adj, g.n, k, code, maximize
            )
    assert _pykernels.max_independent_set(g.adj, g.n) == _ckernels.max_independent_set(g.adj, g.n)
    if g.n <= 9:
        assert _pykernels.grundy(g.adj, g.n) == _ckernels.grundy(g.adj, g.n)


@pytest.mark.skipif(_ckernels is None, reason="extension not built")
@given(d=metrics(max_n=8))
def test_backends_agree_on_held_karp(d):
    assert _pykernels.held_karp(d.dist) == _ckernels.held_karp(d.dist)


def test_compiled_kernels_reject_oversized_input():
    if _ckernels is None:
        pytest.skip("extension not built")
    with pytest.raises(ValueError):
        _ckernels.grundy([0] * 31, 31)
    with pytest.raises(ValueError):
        _ckernels.feasible([0] * 65, 65, 0, kernels.IS)


def test_dispatch_falls_back_to_python_above_bitset_limit():
    g = Graph.empty(70)
    best, count = kernels.scan_subsets(g.adj, g.n, 1, kernels.IS, True)
    assert best == 1 and count == 71
    assert kernels.backend_for(70, kernels.BITSET_LIMIT) is _pykernels


def test_held_karp_small_cases():
    assert kernels.held_karp([[0]]) == (0, [0])
    assert kernels.held_karp([]) == (0, [])
    assert kernels.held_karp([[0, 3], [5, 0]])[0] == 8


def test_pure_python_selection_by_environment():
    env = dict(os.environ, TRADEOFFS_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from tradeoffs import kernels; print(kernels.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"


def test_kernels_module_reload_is_stable():
    mod = importlib.reload(kernels)
    assert mod.BACKEND in ("compiled", "python")
