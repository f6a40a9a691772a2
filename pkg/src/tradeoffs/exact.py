"""Exact exponential-time solvers.

These are the base cases of the schemes and the ground truth the ratio
certification is measured against. Every solver has a size cap; going over it
raises :class:`CapExceeded` rather than silently truncating.

Ties between optimal witnesses go to the smallest bitmask unless noted.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Sequence

from . import kernels
from .errors import CapExceeded, Infeasible
from .graph import (
    BinaryCsp,
    Graph,
    Metric,
    ProblemKind,
    SetSystem,
    bits,
    component_count,
    induced_edge_count,
    is_feasible,
    neighbors,
    popcount,
)

MIS_CAP = 24
IDS_CAP = 40
INDUCED_CAP = 20
INDUCED_PATH_CAP = 24
HELD_KARP_CAP = 20
GRUNDY_CAP = 18
SET_COVER_CAP = 20
CSP_CAP = 1 << 20


def _check_cap(what, size, cap):
    if size > cap:
        raise CapExceeded(what, size, cap)


@dataclass(frozen=True)
class Tour:
    order: tuple[int, ...]
    cost: float

    def is_valid_for(self, metric: Metric) -> bool:
        return sorted(self.order) == list(range(metric.n)) and metric.tour_cost(self.order) == self.cost


@dataclass(frozen=True)
class GrundyWitness:
    """Colour classes ``C_1..C_k`` (bitmasks) of a Grundy colouring."""

    classes: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.classes)

    @property
    def vertices(self) -> int:
        out = 0
        for c in self.classes:
            out |= c
        return out

    def is_valid_for(self, g: Graph) -> bool:
        """Disjoint independent classes, each vertex of ``C_i`` seeing every earlier class."""
        seen = 0
        for i, c in enumerate(self.classes):
            if c == 0 and i == len(self.classes) - 1:
                return False
            if c & seen:
                return False
            for v in bits(c):
                if g.adj[v] & c:
                    return False
                if any(not g.adj[v] & self.classes[j] for j in range(i)):
                    return False
            seen |= c
        return True

    def ordering(self) -> list[int]:
        """Vertices class by class, each class in index order."""
        return [v for c in self.classes for v in bits(c)]


def max_independent_set_exact(g: Graph, cap: int = MIS_CAP) -> tuple[int, int]:
    _check_cap("max_independent_set_exact", g.n, cap)
    size, mask, _ = kernels.max_independent_set(g.adj, g.n)
    return size, mask


def min_ids_exact(g: Graph, cap: int = IDS_CAP) -> tuple[int, int]:
    """Minimum independent dominating set by branching on a hardest undominated vertex.

    Some vertex of ``N[v]`` must join the solution for every undominated ``v``,
    so branching over ``N[v]`` for the ``v`` with fewest options enumerates
    every maximal independent set that could be optimal.
    """
    _check_cap("min_ids_exact", g.n, cap)
    n = g.n
    closed = [g.adj[v] | (1 << v) for v in range(n)]
    best = [n + 1, 0]

    def rec(chosen, size, undominated):
        if not undominated:
            if size < best[0] or (size == best[0] and chosen < best[1]):
                best[0], best[1] = size, chosen
            return
        if size + 1 > best[0]:
            return
        pick_options = None
        f = undominated
        while f:
            low = f & -f
            opts = closed[low.bit_length() - 1] & undominated
            if pick_options is None or popcount(opts) < popcount(pick_options):
                pick_options = opts
                if popcount(opts) == 1:
                    break
            f ^= low
        for u in bits(pick_options):
            rec(chosen | (1 << u), size + 1, undominated & ~closed[u])

    rec(0, 0, g.vertices)
    return best[0], best[1]


def max_minimal_vc_exact(g: Graph, cap: int = IDS_CAP) -> tuple[int, int]:
    size, ids = min_ids_exact(g, cap)
    cover = g.vertices & ~ids
    if not is_feasible(g, cover, ProblemKind.MINIMAL_VERTEX_COVER):
        raise AssertionError("complement of a minimum IDS must be a minimal vertex cover")
    return g.n - size, cover


_INDUCED = {
    "path": ProblemKind.INDUCED_PATH,
    "tree": ProblemKind.INDUCED_TREE,
    "forest": ProblemKind.INDUCED_FOREST,
}


def _induced_kind(kind) -> ProblemKind:
    if isinstance(kind, ProblemKind):
        if kind not in _INDUCED.values():
            raise ValueError(f"{kind} is not an induced-subgraph problem")
        return kind
    return _INDUCED[kind.lower()]


def max_induced_exact(g: Graph, kind, cap: int | None = None) -> tuple[int, int]:
    """Largest vertex set inducing a path, tree or forest.

    Include/exclude search in index order. Forests and linear forests are
    closed under taking subsets, so partial sets are pruned as soon as they
    leave that class; for paths and trees a partial set whose components
    cannot be joined through undecided vertices is dropped as well.
    """
    kind = _induced_kind(kind)
    if cap is None:
        cap = INDUCED_PATH_CAP if kind is ProblemKind.INDUCED_PATH else INDUCED_CAP
    _check_cap("max_induced_exact", g.n, cap)
    n = g.n
    if n == 0:
        return 0, 0
    connected = kind is not ProblemKind.INDUCED_FOREST
    best = [0, 0]

    def offer(s):
        size = popcount(s)
        if size > best[0] or (size == best[0] and s < best[1]):
            if is_feasible(g, s, kind):
                best[0], best[1] = size, s

    def hereditary_ok(s, v):
        if kind is ProblemKind.INDUCED_PATH:
            if popcount(g.adj[v] & s) > 2:
                return False
            if any(popcount(g.adj[u] & s) > 2 for u in bits(g.adj[v] & s)):
                return False
        return induced_edge_count(g, s) == popcount(s) - component_count(g, s)

    def rec(i, cur):
        remaining = ((1 << n) - 1) >> i << i
        ub = popcount(cur) + popcount(remaining)
        if ub < best[0] or (ub == best[0] and (cur | remaining) >= best[1]):
            return
        if connected and cur:
            reach = neighbors(g, cur) & remaining
            comps = component_count(g, cur)
            if comps > 1:
                # every component must still touch an undecided vertex
                rest = cur
                while rest:
                    comp = rest & -rest
                    frontier = comp
                    while frontier:
                        frontier = neighbors(g, frontier) & cur & ~comp
                        comp |= frontier
                    if not neighbors(g, comp) & remaining:
                        return
                    rest &= ~comp
            elif not reach:
                offer(cur)
                return
        if i == n:
            offer(cur)
            return
        with_v = cur | (1 << i)
        if hereditary_ok(with_v, i):
            rec(i + 1, with_v)
        rec(i + 1, cur)

    rec(0, 0)
    return best[0], best[1]


def held_karp(metric: Metric, cap: int = HELD_KARP_CAP) -> Tour:
    if metric.n < 1:
        raise ValueError("held_karp needs at least one city")
    _check_cap("held_karp", metric.n, cap)
    _, order = kernels.held_karp(metric.dist)
    # exact re-sum keeps integer costs integral
    return Tour(tuple(order), metric.tour_cost(order))


def grundy_exact(g: Graph, cap: int = GRUNDY_CAP) -> tuple[int, GrundyWitness]:
    """Grundy number via Gamma(S) = max over maximal independent M of 1 + Gamma(S - M)."""
    _check_cap("grundy_exact", g.n, cap)
    k, classes, _ = kernels.grundy(g.adj, g.n)
    return k, GrundyWitness(tuple(classes))


def first_fit_colors(g: Graph, order: Sequence[int]) -> list[int]:
    """First-fit colour (1-based) of every vertex for the given ordering."""
    color = [0] * g.n
    for v in order:
        used = {color[u] for u in bits(g.adj[v])}
        c = 1
        while c in used:
            c += 1
        color[v] = c
    return color


def first_fit_count(g: Graph, order: Sequence[int]) -> int:
    return max(first_fit_colors(g, order), default=0)


def set_cover_exact(system: SetSystem, cap: int = SET_COVER_CAP) -> tuple[int, tuple[int, ...]]:
    """Smallest covering subfamily, trying subfamilies by increasing size.

    Ties go to the lexicographically first index tuple.
    """
    size, combo, _ = set_cover_search(system, cap)
    return size, combo


def set_cover_search(system: SetSystem, cap: int = SET_COVER_CAP):
    """``set_cover_exact`` plus the number of subfamilies examined."""
    if not system.coverable():
        raise Infeasible("the union of all sets does not cover the universe")
    _check_cap("set_cover_exact", system.m, cap)
    universe = system.universe
    if universe == 0:
        return 0, (), 1
    sets = system.sets
    examined = 1
    for k in range(1, system.m + 1):
        for combo in combinations(range(system.m), k):
            examined += 1
            u = 0
            for i in combo:
                u |= sets[i]
            if u == universe:
                return k, combo, examined
    raise AssertionError("unreachable: coverable family has a cover")


def csp_min_unsat(csp: BinaryCsp, cap: int = CSP_CAP) -> tuple[int, tuple[int, ...]]:
    """Fewest violated constraints over all assignments (first minimiser in lexicographic order)."""
    _check_cap("csp_min_unsat", csp.alphabet_size ** csp.num_vars, cap)
    best = None
    witness = ()
    for assign in product(range(csp.alphabet_size), repeat=csp.num_vars):
        bad = csp.violated(assign)
        if best is None or bad < best:
            best, witness = bad, assign
            if bad == 0:
                break
    return best, tuple(witness)
