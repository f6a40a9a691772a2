"""Ratio-parameterised approximation schemes.

Each scheme takes a target ratio (or a parameter derived from one) and
returns a :class:`SolutionReport` whose ``guarantee`` is the worst-case ratio
the algorithm certifies. Ratios are always >= 1, for minimisation and
maximisation alike.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any

import numpy as np
from scipy.optimize import linear_sum_assignment

from . import exact, kernels
from .errors import CapExceeded, Infeasible, NoFeasible
from .graph import (
    Graph,
    Metric,
    ProblemKind,
    SetSystem,
    bits,
    enumerate_independent_subsets,
    greedy_maximal_independent_set,
    is_independent,
    mask_of,
    maximal_matching,
    neighbors,
    popcount,
)

_KIND_CODE = {
    ProblemKind.INDEPENDENT_SET: kernels.IS,
    ProblemKind.INDEPENDENT_DOMINATING_SET: kernels.IDS,
    ProblemKind.MINIMAL_VERTEX_COVER: kernels.MVC,
    ProblemKind.INDUCED_PATH: kernels.PATH,
    ProblemKind.INDUCED_TREE: kernels.TREE,
    ProblemKind.INDUCED_FOREST: kernels.FOREST,
}

MAX_PROBLEMS = (
    ProblemKind.INDEPENDENT_SET,
    ProblemKind.INDUCED_PATH,
    ProblemKind.INDUCED_TREE,
    ProblemKind.INDUCED_FOREST,
)


@dataclass
class SolutionReport:
    problem: str
    value: Any
    solution: Any
    guarantee: float
    nodes_enumerated: int
    wall_time_ms: float
    r_requested: Any = None
    r_used: Any = None
    clamped: bool = False
    details: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        sol = self.solution
        if isinstance(sol, int):
            sol = [v for v in bits(sol)]
        elif isinstance(sol, exact.Tour):
            sol = list(sol.order)
        elif isinstance(sol, (tuple, list)):
            sol = list(sol)
        return {
            "problem": self.problem,
            "value": self.value,
            "solution": sol,
            "guarantee": float(self.guarantee),
            "nodes": self.nodes_enumerated,
            "ms": round(self.wall_time_ms, 3),
            "r_requested": _num(self.r_requested),
            "r_used": _num(self.r_used),
            "clamped": self.clamped,
            "details": self.details,
        }


def _num(x):
    if isinstance(x, Fraction):
        return float(x)
    return x


def as_fraction(r) -> Fraction:
    """Exact rational for a ratio; floats go through their shortest repr so 2.2 stays 11/5."""
    if isinstance(r, Fraction):
        return r
    if isinstance(r, float):
        if not math.isfinite(r):
            raise ValueError(f"ratio must be finite, got {r}")
        return Fraction(repr(r))
    return Fraction(r)


def clamp_ratio(r, n: int) -> tuple[Fraction, bool]:
    """Clamp a requested ratio into ``[1, max(n, 1)]``."""
    fr = as_fraction(r)
    used = min(max(fr, Fraction(1)), Fraction(max(n, 1)))
    return used, used != fr


def floor_div(n: int, r: Fraction) -> int:
    return math.floor(Fraction(n) / r)


def ceil_div(n: int, r: Fraction) -> int:
    return math.ceil(Fraction(n) / r)


def _elapsed_ms(t0: float) -> float:
    return (time.perf_counter() - t0) * 1000.0


# ---------------------------------------------------------------- generic


def generic_min_scheme(g: Graph, r, problem=ProblemKind.INDEPENDENT_DOMINATING_SET) -> SolutionReport:
    """Try every vertex set of size <= floor(n/r); fall back to a greedy solution.

    If no solution of that size exists, every solution has more than n/r
    vertices and the greedy maximal independent set (at most n vertices) is
    within ratio r.
    """
    if problem is not ProblemKind.INDEPENDENT_DOMINATING_SET:
        raise ValueError("generic_min_scheme supports IndependentDominatingSet only")
    t0 = time.perf_counter()
    r_used, clamped = clamp_ratio(r, g.n)
    budget = floor_div(g.n, r_used)
    best, count = kernels.scan_subsets(g.adj, g.n, budget, _KIND_CODE[problem], False)
    fallback = best < 0
    if fallback:
        best = greedy_maximal_independent_set(g)
    return SolutionReport(
        problem=problem.value,
        value=popcount(best),
        solution=best,
        guarantee=float(r_used),
        nodes_enumerated=count,
        wall_time_ms=_elapsed_ms(t0),
        r_requested=r,
        r_used=r_used,
        clamped=clamped,
        details={"budget": budget, "fallback": fallback},
    )


def generic_max_scheme(g: Graph, problem: ProblemKind, r, rounding: str = "ceil") -> SolutionReport:
    """Largest feasible vertex set of size <= ceil(n/r).

    Weak monotonicity means a feasible set of every size up to opt exists, so
    the value is min(opt, ceil(n/r)) >= opt/r. ``rounding="floor"`` uses the
    budget floor(n/r) instead; that variant returns min(opt, floor(n/r)) but
    can miss the ratio (P_5 as a forest with r=2 gives 2 < 5/2).
    """
    if rounding not in ("ceil", "floor"):
        raise ValueError("rounding must be 'ceil' or 'floor'")
    if problem not in MAX_PROBLEMS:
        raise ValueError(f"{problem} is not a maximisation problem with weak monotonicity")
    if g.n == 0:
        raise NoFeasible("empty graph has no feasible nonempty solution")
    t0 = time.perf_counter()
    r_used, clamped = clamp_ratio(r, g.n)
    budget = ceil_div(g.n, r_used) if rounding == "ceil" else floor_div(g.n, r_used)
    best, count = kernels.scan_subsets(g.adj, g.n, budget, _KIND_CODE[problem], True)
    if best < 0:
        raise NoFeasible(f"no feasible set of size <= {budget}")
    return SolutionReport(
        problem=problem.value,
        value=popcount(best),
        solution=best,
        guarantee=float(r_used),
        nodes_enumerated=count,
        wall_time_ms=_elapsed_ms(t0),
        r_requested=r,
        r_used=r_used,
        clamped=clamped,
        details={"budget": budget, "rounding": rounding},
    )


def contiguous_blocks(n: int, parts: int) -> list[int]:
    """Split ``0..n-1`` into ``parts`` index-contiguous blocks whose sizes differ by at most one."""
    blocks = []
    start = 0
    base, extra = divmod(n, parts)
    for i in range(parts):
        size = base + (1 if i < extra else 0)
        blocks.append(((1 << size) - 1) << start)
        start += size
    return blocks


def partition_scheme_mis(g: Graph, r, cap: int = exact.MIS_CAP) -> SolutionReport:
    """Max independent set solved exactly on each of r contiguous blocks; best block wins.

    Independence is inherited by subsets, so an optimal set restricted to its
    largest block keeps at least opt/r vertices.
    """
    t0 = time.perf_counter()
    parts = max(1, min(math.floor(as_fraction(r)), max(g.n, 1)))
    clamped = Fraction(parts) != as_fraction(r)
    blocks = contiguous_blocks(g.n, parts)
    largest = max((popcount(b) for b in blocks), default=0)
    if largest > cap:
        raise CapExceeded("partition_scheme_mis block", largest, cap)
    best_size, best_mask, nodes = -1, 0, 0
    for block in blocks:
        sub, labels = g.induced(block)
        size, mask, visited = kernels.max_independent_set(sub.adj, sub.n)
        nodes += visited
        if size > best_size:
            best_size = size
            best_mask = mask_of(labels[i] for i in bits(mask))
    return SolutionReport(
        problem=ProblemKind.INDEPENDENT_SET.value,
        value=max(best_size, 0),
        solution=best_mask,
        guarantee=float(parts),
        nodes_enumerated=nodes,
        wall_time_ms=_elapsed_ms(t0),
        r_requested=r,
        r_used=parts,
        clamped=clamped,
        details={"blocks": [popcount(b) for b in blocks]},
    )


# ---------------------------------------------------------------- max minimal vertex cover


def extend_to_minimal_vc(g: Graph, independent: int) -> int:
    """Minimal vertex cover avoiding ``independent``.

    Starts from the complement and drops, in index order, every vertex whose
    neighbours are all still in the cover. Vertices with a neighbour in
    ``independent`` are never dropped, so the result has at least
    ``|N(independent)|`` vertices.
    """
    if not is_independent(g, independent):
        raise ValueError("extend_to_minimal_vc needs an independent set")
    cover = g.vertices & ~independent
    for v in bits(cover):
        if not g.adj[v] & ~cover:
            cover &= ~(1 << v)
    return cover


def mmvc_groups_for_ratio(r) -> int:
    """Largest integer group count whose guarantee does not exceed the target ratio."""
    return max(1, math.floor(as_fraction(r)))


def mmvc_scheme(g: Graph, rho: int) -> SolutionReport:
    t0 = time.perf_counter()
    rho_used = max(1, min(int(rho), math.isqrt(g.n))) if g.n else 1
    clamped = rho_used != rho
    matching = maximal_matching(g)
    details = {"matching": len(matching), "groups": rho_used}
    if len(matching) * rho_used >= g.n:
        # every vertex cover holds an endpoint of each matching edge
        cover = extend_to_minimal_vc(g, 0)
        nodes = 1
        details["branch"] = "large-matching"
    else:
        matched = mask_of(v for e in matching for v in e)
        unmatched = g.vertices & ~matched
        cover, best, nodes = 0, -1, 0
        for i in range(rho_used):
            group = mask_of(v for e in matching[i::rho_used] for v in e)
            for s in enumerate_independent_subsets(g, group):
                nodes += 1
                s_ext = s | (unmatched & ~neighbors(g, s))
                candidate = extend_to_minimal_vc(g, s_ext)
                if popcount(candidate) > best:
                    cover, best = candidate, popcount(candidate)
        details["branch"] = "groups"
    return SolutionReport(
        problem=ProblemKind.MINIMAL_VERTEX_COVER.value,
        value=popcount(cover),
        solution=cover,
        guarantee=float(rho_used),
        nodes_enumerated=nodes,
        wall_time_ms=_elapsed_ms(t0),
        r_requested=rho,
        r_used=rho_used,
        clamped=clamped,
        details=details,
    )


# ---------------------------------------------------------------- ATSP


@dataclass(frozen=True)
class CycleCover:
    circuits: tuple[tuple[int, ...], ...]
    cost: float

    def successor(self) -> dict[int, int]:
        out = {}
        for c in self.circuits:
            for i, v in enumerate(c):
                out[v] = c[(i + 1) % len(c)]
        return out


def min_weight_cycle_cover(metric: Metric) -> CycleCover:
    """Minimum-cost spanning set of disjoint circuits, via an assignment with a forbidden diagonal."""
    n = metric.n
    if n < 2:
        raise ValueError("a cycle cover needs at least two cities")
    cost = np.array(metric.dist, dtype=float)
    np.fill_diagonal(cost, np.inf)
    rows, cols = linear_sum_assignment(cost)
    succ = dict(zip(rows.tolist(), cols.tolist()))
    circuits = []
    seen = set()
    for start in range(n):
        if start in seen:
            continue
        circuit = [start]
        seen.add(start)
        v = succ[start]
        while v != start:
            circuit.append(v)
            seen.add(v)
            v = succ[v]
        circuits.append(tuple(circuit))
    d = metric.dist
    total = sum(d[v][succ[v]] for v in range(n))
    return CycleCover(tuple(circuits), total)


def log2_ceil(r: Fraction) -> int:
    """Smallest L >= 0 with 2**L >= r."""
    levels = 0
    while Fraction(2) ** levels < r:
        levels += 1
    return levels


def atsp_divisor_for_ratio(r) -> int:
    """Largest size divisor whose certified ratio ceil(log2 d) + 1 stays within ``r``."""
    return 2 ** (max(1, math.floor(as_fraction(r))) - 1)


def atsp_scheme(metric: Metric, r, cap: int = exact.HELD_KARP_CAP) -> SolutionReport:
    """Recursive cycle-cover ATSP scheme with an exact Held-Karp base case.

    Each level replaces every circuit of a minimum cycle cover by its
    lowest-index city, which at least halves the city count. Once at most
    max(2, ceil(n/r)) cities remain they are solved exactly. Splicing walks
    the representative tour and, at each representative, around its circuit
    up to the representative's predecessor.
    """
    if metric.n < 1:
        raise ValueError("atsp_scheme needs at least one city")
    if not metric.triangle_checked and not metric.satisfies_triangle():
        raise ValueError("atsp_scheme requires the triangle inequality")
    t0 = time.perf_counter()
    n = metric.n
    r_used, clamped = clamp_ratio(r, n)
    threshold = max(2, ceil_div(n, r_used))
    stats = {"levels": 0, "base_size": 0, "nodes": 0}

    def solve(cities: list[int], depth: int) -> list[int]:
        if len(cities) <= threshold:
            if len(cities) > cap:
                raise CapExceeded("atsp_scheme base case", len(cities), cap)
            tour = exact.held_karp(metric.sub(cities), cap=cap)
            b = len(cities)
            stats["base_size"] = b
            stats["nodes"] = (1 << (b - 1)) * (b - 1) if b > 1 else 1
            stats["levels"] = depth
            return [cities[i] for i in tour.order]
        cc = min_weight_cycle_cover(metric.sub(cities))
        circuits = [tuple(cities[i] for i in c) for c in cc.circuits]
        if len(circuits) == 1:
            stats["levels"] = depth + 1
            stats["base_size"] = 0
            return list(circuits[0])
        rotated = {}
        for c in circuits:
            k = c.index(min(c))
            rotated[c[k]] = c[k:] + c[:k]
        reps = sorted(rotated)
        order = []
        for rep in solve(reps, depth + 1):
            order.extend(rotated[rep])
        return order

    order = solve(list(range(n)), 0)
    tour = exact.Tour(tuple(order), metric.tour_cost(order))
    return SolutionReport(
        problem="ATSP",
        value=tour.cost,
        solution=tour,
        guarantee=float(log2_ceil(r_used) + 1),
        nodes_enumerated=stats["nodes"],
        wall_time_ms=_elapsed_ms(t0),
        r_requested=r,
        r_used=r_used,
        clamped=clamped,
        details={"threshold": threshold, "levels": stats["levels"], "base_size": stats["base_size"]},
    )


# ---------------------------------------------------------------- Grundy


def grundy_scheme(g: Graph, r, cap: int = exact.GRUNDY_CAP) -> SolutionReport:
    """Best Grundy witness over all vertex sets of size floor(n/r), replayed on the whole graph.

    The ordering lists the winning witness class by class, then the other
    vertices by index. First-fit on that ordering reproduces the witness
    colours, so the count is at least the subgraph's Grundy number.
    """
    t0 = time.perf_counter()
    n = g.n
    r_used, clamped = clamp_ratio(r, n)
    if n == 0:
        return SolutionReport("GrundyColoring", 0, [], float(r_used), 0, _elapsed_ms(t0), r, r_used, clamped)
    size = max(1, min(n, floor_div(n, r_used)))
    if size > cap:
        raise CapExceeded("grundy_scheme subset", size, cap)
    best_k, best_classes, count = -1, (), 0
    for combo in combinations(range(n), size):
        count += 1
        sub, labels = g.induced(mask_of(combo))
        k, witness = exact.grundy_exact(sub, cap=cap)
        if k > best_k:
            best_k = k
            best_classes = tuple(mask_of(labels[i] for i in bits(c)) for c in witness.classes)
    witness = exact.GrundyWitness(best_classes)
    head = witness.ordering()
    covered = witness.vertices
    ordering = head + [v for v in range(n) if not covered >> v & 1]
    value = exact.first_fit_count(g, ordering)
    return SolutionReport(
        problem="GrundyColoring",
        value=value,
        solution=ordering,
        guarantee=float(r_used),
        nodes_enumerated=count,
        wall_time_ms=_elapsed_ms(t0),
        r_requested=r,
        r_used=r_used,
        clamped=clamped,
        details={"subset_size": size, "witness_colors": best_k},
    )


# ---------------------------------------------------------------- set cover


def greedy_set_cover(system: SetSystem) -> tuple[int, tuple[int, ...]]:
    """Classic greedy: most newly covered elements first, ties to the lower index."""
    uncovered = system.universe
    picked = []
    while uncovered:
        gain, pick = max((popcount(s & uncovered), -i) for i, s in enumerate(system.sets)) if system.sets else (0, 0)
        if gain == 0:
            raise Infeasible("the union of all sets does not cover the universe")
        picked.append(-pick)
        uncovered &= ~system.sets[-pick]
    return len(picked), tuple(sorted(picked))


def prune_redundant(system: SetSystem, indices) -> tuple[int, ...]:
    """Drop sets whose removal keeps a cover, scanning from the highest index down."""
    kept = sorted(indices)
    for i in sorted(indices, reverse=True):
        rest = [j for j in kept if j != i]
        if system.is_cover(rest):
            kept = rest
    return tuple(kept)


def setcover_merge_approx(system: SetSystem, r, cap: int = exact.SET_COVER_CAP) -> tuple[int, tuple[int, ...]]:
    """Merge consecutive blocks of floor(r) sets, solve exactly, expand and prune.

    A cover of the original family maps to a merged cover of no larger size,
    and expanding a merged cover multiplies its size by at most floor(r).
    """
    size, kept, _ = _merge_approx(system, r, cap)
    return size, kept


def _merge_approx(system, r, cap):
    if not system.coverable():
        raise Infeasible("the union of all sets does not cover the universe")
    q = max(1, math.floor(as_fraction(r)))
    blocks = [range(b, min(system.m, b + q)) for b in range(0, system.m, q)]
    if len(blocks) > cap:
        raise CapExceeded("setcover_merge_approx merged family", len(blocks), cap)
    merged = SetSystem(system.universe_size, tuple(system.union(b) for b in blocks))
    _, chosen, examined = exact.set_cover_search(merged, cap=cap)
    expanded = [i for b in chosen for i in blocks[b]]
    kept = prune_redundant(system, expanded)
    return len(kept), kept, examined


def setcover_branch(m: int, n: int, delta) -> str:
    """``"greedy"`` when m**delta > ln n, otherwise ``"merge"``."""
    if n <= 1:
        return "greedy"
    return "greedy" if m ** float(delta) > math.log(n) else "merge"


def setcover_mdelta(system: SetSystem, delta, cap: int = exact.SET_COVER_CAP) -> SolutionReport:
    """m**delta-approximation: greedy when m**delta beats ln n, block merging otherwise.

    The other branch also runs whenever it fits under the exact cap, and the
    smaller cover is returned.
    """
    if not 0 < delta <= 1:
        raise ValueError(f"delta must lie in (0, 1], got {delta}")
    if not system.coverable():
        raise Infeasible("the union of all sets does not cover the universe")
    t0 = time.perf_counter()
    m, n = system.m, system.universe_size
    target = m ** float(delta) if m else 1.0
    branch = setcover_branch(m, n, delta)
    greedy = greedy_set_cover(system)
    merge = None
    examined = 0
    q = max(1, math.floor(target))
    if branch == "merge" or math.ceil(m / q) <= cap:
        size, kept, examined = _merge_approx(system, q, cap)
        merge = (size, kept)
    primary, secondary = (greedy, merge) if branch == "greedy" else (merge, greedy)
    result = primary
    if secondary is not None and secondary[0] < primary[0]:
        result = secondary
    return SolutionReport(
        problem="SetCover",
        value=result[0],
        solution=result[1],
        guarantee=target,
        nodes_enumerated=examined,
        wall_time_ms=_elapsed_ms(t0),
        r_requested=delta,
        r_used=q,
        details={
            "branch": branch,
            "greedy": greedy[0],
            "merge": None if merge is None else merge[0],
            "ln_n": math.log(n) if n else 0.0,
            "m_delta": target,
        },
    )


def setcover_report(system: SetSystem, r, cap: int = exact.SET_COVER_CAP) -> SolutionReport:
    """Block-merge scheme for a fixed ratio, wrapped in a report."""
    t0 = time.perf_counter()
    size, kept, examined = _merge_approx(system, r, cap)
    q = max(1, math.floor(as_fraction(r)))
    return SolutionReport(
        problem="SetCover",
        value=size,
        solution=kept,
        guarantee=float(q),
        nodes_enumerated=examined,
        wall_time_ms=_elapsed_ms(t0),
        r_requested=r,
        r_used=q,
        clamped=Fraction(q) != as_fraction(r),
        details={"merged_sets": math.ceil(system.m / q) if system.m else 0},
    )
