"""Shared strategies and brute-force reference oracles.

The oracles here deliberately avoid the package's own predicates: they test
structure with networkx and enumerate with itertools.
"""
from __future__ import annotations

import math
import random
from itertools import combinations, permutations

import networkx as nx
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from tradeoffs.graph import Graph, Metric, SetSystem

settings.register_profile(
    "repo",
    deadline=None,
    derandomize=True,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


# ---------------------------------------------------------------- strategies


@st.composite
def graphs(draw, min_n=0, max_n=8):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, k in zip(pairs, keep) if k])


@st.composite
def metrics(draw, min_n=1, max_n=7, max_weight=30):
    n = draw(st.integers(min_n, max_n))
    cells = draw(st.lists(st.integers(1, max_weight), min_size=n * n, max_size=n * n))
    dist = [[0 if i == j else cells[i * n + j] for j in range(n)] for i in range(n)]
    return Metric(dist).closure()


@st.composite
def set_systems(draw, max_n=7, max_m=7):
    n = draw(st.integers(0, max_n))
    m = draw(st.integers(1, max_m))
    sets = draw(st.lists(st.integers(0, (1 << n) - 1), min_size=m, max_size=m))
    # make the family coverable by folding missing elements into random sets
    missing = ((1 << n) - 1) & ~_union(sets)
    idx = draw(st.integers(0, m - 1))
    sets[idx] |= missing
    return SetSystem(n, tuple(sets))


def _union(sets):
    u = 0
    for s in sets:
        u |= s
    return u


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


# ---------------------------------------------------------------- networkx views


def to_nx(g: Graph, s=None) -> nx.Graph:
    h = nx.Graph()
    verts = range(g.n) if s is None else [v for v in range(g.n) if s >> v & 1]
    h.add_nodes_from(verts)
    vs = set(verts)
    h.add_edges_from((u, v) for u, v in g.edges() if u in vs and v in vs)
    return h


def subset_masks(n):
    return range(1 << n)


def members(s):
    return [v for v in range(s.bit_length()) if s >> v & 1]


def nx_independent(h: nx.Graph, s) -> bool:
    return all(not h.has_edge(u, v) for u, v in combinations(s, 2))


def nx_is_path(h: nx.Graph) -> bool:
    if h.number_of_nodes() == 0:
        return False
    if h.number_of_nodes() == 1:
        return True
    return nx.is_tree(h) and max(d for _, d in h.degree()) <= 2


# ---------------------------------------------------------------- brute-force oracles


def brute_mis(g: Graph) -> int:
    h = to_nx(g)
    best = 0
    for s in subset_masks(g.n):
        vs = members(s)
        if len(vs) > best and nx_independent(h, vs):
            best = len(vs)
    return best


def brute_min_ids(g: Graph) -> int:
    h = to_nx(g)
    best = g.n
    for s in subset_masks(g.n):
        vs = members(s)
        if len(vs) < best and nx_independent(h, vs) and nx.is_dominating_set(h, vs):
            best = len(vs)
    return best if g.n else 0


def brute_max_minimal_vc(g: Graph) -> int:
    h = to_nx(g)
    best = 0
    for s in subset_masks(g.n):
        vs = set(members(s))
        if not all(u in vs or v in vs for u, v in h.edges()):
            continue
        if all(any(w not in vs for w in h[v]) for v in vs):
            best = max(best, len(vs))
    return best


def brute_max_induced(g: Graph, kind: str) -> int:
    best = 0
    for s in subset_masks(g.n):
        size = bin(s).count("1")
        if size <= best:
            continue
        h = to_nx(g, s)
        if kind == "path":
            ok = nx_is_path(h)
        elif kind == "tree":
            ok = size > 0 and nx.is_tree(h)
        else:
            ok = size == 0 or nx.is_forest(h)
        if ok:
            best = size
    return best


def brute_tsp(metric: Metric):
    n = metric.n
    if n == 1:
        return 0
    best = math.inf
    for perm in permutations(range(1, n)):
        order = (0,) + perm
        cost = sum(metric.dist[order[i]][order[(i + 1) % n]] for i in range(n))
        best = min(best, cost)
    return best


def first_fit(g: Graph, order) -> int:
    h = to_nx(g)
    color = {}
    for v in order:
        used = {color[u] for u in h[v] if u in color}
        c = 1
        while c in used:
            c += 1
        color[v] = c
    return max(color.values(), default=0)


def brute_grundy(g: Graph) -> int:
    return max((first_fit(g, p) for p in permutations(range(g.n))), default=0)


def brute_set_cover(system: SetSystem) -> int:
    universe = (1 << system.universe_size) - 1
    if universe == 0:
        return 0
    for k in range(1, system.m + 1):
        for combo in combinations(system.sets, k):
            if _union(combo) == universe:
                return k
    raise AssertionError("not coverable")


@pytest.fixture
def rng():
    return random.Random(12345)


# ---------------------------------------------------------------- acceptance report

ACCEPTANCE: dict[int, list[tuple[bool, str]]] = {}


def record(criterion: int, ok: bool, detail: str) -> None:
    """Log one acceptance outcome; the terminal summary prints one line per criterion."""
    ACCEPTANCE.setdefault(criterion, []).append((ok, detail))
    print(f"{'PASS' if ok else 'FAIL'} criterion {criterion}: {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for c in sorted(ACCEPTANCE):
        parts = ACCEPTANCE[c]
        ok = all(p[0] for p in parts)
        detail = "; ".join(p[1] for p in parts)
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {c:2d}: {detail}")
