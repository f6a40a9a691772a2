"""Core instance types and feasibility predicates.

Vertex sets are plain ``int`` bitmasks: bit ``v`` set means vertex ``v`` is
in the set. All instances are immutable after construction.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def full_mask(n: int) -> int:
    return (1 << n) - 1


class ProblemKind(enum.Enum):
    INDEPENDENT_SET = "IndependentSet"
    INDEPENDENT_DOMINATING_SET = "IndependentDominatingSet"
    MINIMAL_VERTEX_COVER = "MinimalVertexCover"
    INDUCED_PATH = "InducedPath"
    INDUCED_TREE = "InducedTree"
    INDUCED_FOREST = "InducedForest"


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``0..n-1`` with bitset adjacency."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0 or len(self.adj) != self.n:
            raise ValueError("adjacency length must equal n >= 0")
        full = full_mask(self.n)
        for v, nb in enumerate(self.adj):
            if nb & ~full:
                raise ValueError(f"vertex {v} has a neighbour outside 0..n-1")
            if nb >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for u in bits(nb):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {v} and {u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = full_mask(n)
        return cls(n, tuple(full & ~(1 << v) for v in range(n)))

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        if n < 3:
            raise ValueError("a simple cycle needs at least 3 vertices")
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def star(cls, leaves: int) -> "Graph":
        """Centre is vertex 0, leaves are 1..leaves."""
        return cls.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])

    @property
    def vertices(self) -> int:
        return full_mask(self.n)

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    @property
    def m(self) -> int:
        return sum(popcount(a) for a in self.adj) // 2

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def induced(self, s: int) -> tuple["Graph", list[int]]:
        """Induced subgraph on ``s`` relabelled to ``0..|s|-1``, plus the label map."""
        labels = list(bits(s))
        index = {v: i for i, v in enumerate(labels)}
        adj = []
        for v in labels:
            adj.append(mask_of(index[u] for u in bits(self.adj[v] & s)))
        return Graph(len(labels), tuple(adj)), labels

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def neighbors(g: Graph, s: int) -> int:
    """Vertices with at least one neighbour in ``s``."""
    out = 0
    for v in bits(s):
        out |= g.adj[v]
    return out


def is_independent(g: Graph, s: int) -> bool:
    return all(not (g.adj[v] & s) for v in bits(s))


def is_dominating(g: Graph, s: int) -> bool:
    return (s | neighbors(g, s)) == g.vertices


def induced_edge_count(g: Graph, s: int) -> int:
    return sum(popcount(g.adj[v] & s) for v in bits(s)) // 2


def component_count(g: Graph, s: int) -> int:
    comps = 0
    rest = s
    while rest:
        comps += 1
        frontier = rest & -rest
        seen = frontier
        while frontier:
            frontier = neighbors(g, frontier) & s & ~seen
            seen |= frontier
        rest &= ~seen
    return comps


def is_connected(g: Graph, s: int) -> bool:
    return component_count(g, s) == 1


def is_feasible(g: Graph, s: int, problem: ProblemKind) -> bool:
    if s & ~g.vertices:
        raise ValueError("vertex set has bits outside the graph")
    size = popcount(s)
    if problem is ProblemKind.INDEPENDENT_SET:
        return is_independent(g, s)
    if problem is ProblemKind.INDEPENDENT_DOMINATING_SET:
        return is_independent(g, s) and is_dominating(g, s)
    if problem is ProblemKind.MINIMAL_VERTEX_COVER:
        rest = g.vertices & ~s
        if not is_independent(g, rest):
            return False
        return all(g.adj[u] & rest for u in bits(s))
    if problem is ProblemKind.INDUCED_FOREST:
        return induced_edge_count(g, s) == size - component_count(g, s)
    # empty set is neither a path nor a tree
    if size == 0:
        return False
    if problem is ProblemKind.INDUCED_TREE:
        return induced_edge_count(g, s) == size - 1 and is_connected(g, s)
    if problem is ProblemKind.INDUCED_PATH:
        if any(popcount(g.adj[v] & s) > 2 for v in bits(s)):
            return False
        return induced_edge_count(g, s) == size - 1 and is_connected(g, s)
    raise ValueError(f"unknown problem kind {problem!r}")


def maximal_matching(g: Graph) -> list[tuple[int, int]]:
    """Greedy maximal matching over edges in lexicographic order."""
    matched = 0
    out = []
    for u, v in g.edges():
        if not (matched >> u & 1 or matched >> v & 1):
            out.append((u, v))
            matched |= (1 << u) | (1 << v)
    return out


def greedy_maximal_independent_set(g: Graph) -> int:
    """Lexicographic greedy maximal independent set (always an independent dominating set)."""
    s = 0
    blocked = 0
    for v in range(g.n):
        if not blocked >> v & 1:
            s |= 1 << v
            blocked |= g.adj[v] | (1 << v)
    return s


def subset_count(n: int, k: int) -> int:
    """Number of subsets of an ``n``-set with at most ``k`` elements."""
    return sum(math.comb(n, j) for j in range(min(k, n) + 1))


def enumerate_subsets(n: int, k: int) -> Iterator[int]:
    """All subsets of size <= k, ordered by size then by bitmask value."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    yield 0
    limit = 1 << n
    for size in range(1, k + 1):
        # Gosper's hack walks same-popcount masks in increasing order
        s = (1 << size) - 1
        while s < limit:
            yield s
            c = s & -s
            r = s + c
            s = (((r ^ s) >> 2) // c) | r


def enumerate_independent_subsets(g: Graph, within: int) -> Iterator[int]:
    """Every independent subset of ``within`` exactly once, starting with the empty set."""
    order = list(bits(within))

    def rec(start: int, current: int, allowed: int) -> Iterator[int]:
        yield current
        for i in range(start, len(order)):
            v = order[i]
            if allowed >> v & 1:
                yield from rec(i + 1, current | (1 << v), allowed & ~g.adj[v])

    return rec(0, 0, within)


@dataclass(frozen=True)
class CnfFormula:
    """CNF over variables ``1..num_vars``; literals are signed variable indices."""

    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        for i, clause in enumerate(self.clauses):
            if not 1 <= len(clause) <= 3:
                raise ValueError(f"clause {i} has {len(clause)} literals; expected 1-3")
            vars_ = [abs(l) for l in clause]
            if any(v == 0 or v > self.num_vars for v in vars_):
                raise ValueError(f"clause {i} refers to a variable outside 1..{self.num_vars}")
            if len(set(vars_)) != len(vars_):
                raise ValueError(f"clause {i} repeats a variable")

    @property
    def m(self) -> int:
        return len(self.clauses)

    def satisfied_by(self, assignment: Sequence[bool]) -> bool:
        """``assignment[i]`` is the value of variable ``i + 1``."""
        if len(assignment) != self.num_vars:
            raise ValueError("assignment length must equal num_vars")
        return all(any(assignment[abs(l) - 1] == (l > 0) for l in c) for c in self.clauses)


@dataclass(frozen=True)
class BinaryCsp:
    """Binary constraint graph: variables ``0..num_vars-1`` over symbols ``0..alphabet_size-1``."""

    num_vars: int
    alphabet_size: int
    edges: tuple[tuple[int, int, frozenset], ...]

    def __post_init__(self):
        norm = []
        seen = set()
        for u, v, allowed in self.edges:
            if u == v:
                raise ValueError(f"constraint on ({u}, {v}) is a loop")
            if not (0 <= u < self.num_vars and 0 <= v < self.num_vars):
                raise ValueError(f"constraint ({u}, {v}) out of range")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"duplicate constraint on {key}")
            seen.add(key)
            allowed = frozenset((int(a), int(b)) for a, b in allowed)
            for a, b in allowed:
                if not (0 <= a < self.alphabet_size and 0 <= b < self.alphabet_size):
                    raise ValueError(f"pair ({a}, {b}) outside the alphabet")
            norm.append((u, v, allowed))
        object.__setattr__(self, "edges", tuple(norm))

    def violated(self, assignment: Sequence[int]) -> int:
        if len(assignment) != self.num_vars:
            raise ValueError("assignment length must equal num_vars")
        return sum((assignment[u], assignment[v]) not in allowed for u, v, allowed in self.edges)


@dataclass(frozen=True)
class SetSystem:
    """Universe ``0..universe_size-1`` and a family of subsets stored as bitmasks."""

    universe_size: int
    sets: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(self.sets))
        full = full_mask(self.universe_size)
        for i, s in enumerate(self.sets):
            if s < 0 or s & ~full:
                raise ValueError(f"set {i} has elements outside the universe")

    @classmethod
    def from_lists(cls, universe_size: int, sets: Iterable[Iterable[int]]) -> "SetSystem":
        return cls(universe_size, tuple(mask_of(s) for s in sets))

    @property
    def m(self) -> int:
        return len(self.sets)

    @property
    def universe(self) -> int:
        return full_mask(self.universe_size)

    def union(self, indices: Iterable[int]) -> int:
        u = 0
        for i in indices:
            u |= self.sets[i]
        return u

    def is_cover(self, indices: Iterable[int]) -> bool:
        return self.union(indices) == self.universe

    def coverable(self) -> bool:
        return self.union(range(self.m)) == self.universe


@dataclass(frozen=True)
class Metric:
    """Square non-negative distance matrix; ``triangle_checked`` is set only after verification."""

    dist: tuple[tuple[float, ...], ...]
    triangle_checked: bool = field(default=False)

    def __post_init__(self):
        dist = tuple(tuple(row) for row in self.dist)
        object.__setattr__(self, "dist", dist)
        n = len(dist)
        for i, row in enumerate(dist):
            if len(row) != n:
                raise ValueError("distance matrix must be square")
            if row[i] != 0:
                raise ValueError(f"dist[{i}][{i}] must be 0")
            if any(x < 0 for x in row):
                raise ValueError(f"row {i} has a negative distance")
        if self.triangle_checked and not self.satisfies_triangle():
            raise ValueError("triangle inequality does not hold")

    @property
    def n(self) -> int:
        return len(self.dist)

    def satisfies_triangle(self) -> bool:
        d = self.dist
        rng = range(self.n)
        return all(d[i][k] <= d[i][j] + d[j][k] for i in rng for j in rng for k in rng)

    def checked(self) -> "Metric":
        """Copy with ``triangle_checked`` set; raises if the inequality fails."""
        return Metric(self.dist, triangle_checked=True)

    def closure(self) -> "Metric":
        """All-pairs shortest-path closure, which always satisfies the triangle inequality."""
        n = self.n
        d = [list(row) for row in self.dist]
        for k in range(n):
            dk = d[k]
            for i in range(n):
                dik = d[i][k]
                di = d[i]
                for j in range(n):
                    if dik + dk[j] < di[j]:
                        di[j] = dik + dk[j]
        return Metric(d, triangle_checked=True)

    def sub(self, cities: Sequence[int]) -> "Metric":
        d = self.dist
        return Metric([[d[a][b] for b in cities] for a in cities], self.triangle_checked)

    def tour_cost(self, order: Sequence[int]) -> float:
        if not order:
            return 0
        d = self.dist
        return sum(d[order[i]][order[(i + 1) % len(order)]] for i in range(len(order)))
