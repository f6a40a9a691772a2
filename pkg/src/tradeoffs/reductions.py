"""Hardness gadgets built as concrete graphs, with witness builders.

Every gadget carries a per-vertex role so tests and the sidecar files can
point back at the clause, copy or CSP variable a vertex came from.

Roles (all indices 1-based, matching the role sidecar files):

* ``("connector", j, i)``: the linking vertex of clause ``i`` in copy ``j``;
* ``("clause", j, i, ((var, value), ...))``: a satisfying partial assignment
  of clause ``i`` in copy ``j``;
* ``("dummy", v)`` and ``("symbol", v, a)``: the clique of CSP variable ``v``
  (symbols ``a`` stay 0-based);
* ``("pair", e, i, j, t)``: member ``t`` of the independent set for allowed
  pair ``(i, j)`` of constraint ``e``;
* ``("edge", e, t)``: member ``t`` of the per-constraint independent set;
* ``("original", v)``, ``("pendant", v, t)``, ``("universal",)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .errors import NotSatisfying, UnsupportedClause
from .graph import BinaryCsp, CnfFormula, Graph, mask_of


@dataclass(frozen=True)
class GadgetGraph:
    graph: Graph
    roles: tuple[tuple, ...]
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.roles) != self.graph.n:
            raise ValueError("role map must cover every vertex")

    def vertices_with(self, tag: str) -> list[int]:
        return [v for v, role in enumerate(self.roles) if role[0] == tag]


def _satisfying_partials(clause: Sequence[int]) -> list[tuple[tuple[int, bool], ...]]:
    # all-true first, matching the usual x1x2x3, x1x2~x3, ... listing
    out = []
    vars_ = [abs(l) for l in clause]
    for values in product((True, False), repeat=len(clause)):
        if any(val == (lit > 0) for val, lit in zip(values, clause)):
            out.append(tuple(zip(vars_, values)))
    return out


def _contradict(a, b) -> bool:
    da = dict(a)
    return any(var in da and da[var] != val for var, val in b)


def sat_to_induced_path(phi: CnfFormula, r: int) -> GadgetGraph:
    """Chain ``r`` copies of the clause-clique gadget and add all contradicting edges.

    Per copy and clause: a connector vertex followed by a clique of the
    clause's satisfying partial assignments (7 for three literals, 3 for two).
    """
    if r < 1:
        raise ValueError("r must be at least 1")
    for idx, clause in enumerate(phi.clauses):
        if len(clause) < 2:
            raise UnsupportedClause(f"clause {idx + 1} has a single literal")
    partials = [_satisfying_partials(c) for c in phi.clauses]
    m = phi.m
    roles: list[tuple] = []
    connector: dict[tuple[int, int], int] = {}
    clique: dict[tuple[int, int], list[int]] = {}
    for j in range(1, r + 1):
        for i in range(1, m + 1):
            connector[j, i] = len(roles)
            roles.append(("connector", j, i))
            members = []
            for pa in partials[i - 1]:
                members.append(len(roles))
                roles.append(("clause", j, i, pa))
            clique[j, i] = members
    n = len(roles)
    adj = [0] * n

    def link(u, v):
        adj[u] |= 1 << v
        adj[v] |= 1 << u

    for (j, i), members in clique.items():
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                link(members[a], members[b])
        c = connector[j, i]
        for v in members:
            link(c, v)
        if i >= 2:
            for v in clique[j, i - 1]:
                link(c, v)
        elif j >= 2:
            for v in clique[j - 1, m]:
                link(c, v)
    clause_vertices = [v for v, role in enumerate(roles) if role[0] == "clause"]
    for x in range(len(clause_vertices)):
        u = clause_vertices[x]
        ru = roles[u]
        for y in range(x + 1, len(clause_vertices)):
            v = clause_vertices[y]
            rv = roles[v]
            if (ru[1], ru[2]) != (rv[1], rv[2]) and _contradict(ru[3], rv[3]):
                link(u, v)
    return GadgetGraph(Graph(n, tuple(adj)), tuple(roles), {"r": r, "source": "cnf", "m": m})


def induced_path_witness(phi: CnfFormula, tau: Sequence[bool], r: int, gadget: GadgetGraph | None = None) -> int:
    """Connectors plus the clique vertex agreeing with ``tau`` in every clique (2rm vertices).

    ``tau[k]`` is the value of variable ``k + 1``.
    """
    if not phi.satisfied_by(tau):
        raise NotSatisfying("assignment violates the formula")
    if gadget is None:
        gadget = sat_to_induced_path(phi, r)
    chosen = []
    for v, role in enumerate(gadget.roles):
        if role[0] == "connector":
            chosen.append(v)
        elif role[0] == "clause" and all(tau[var - 1] == val for var, val in role[3]):
            chosen.append(v)
    return mask_of(chosen)


def csp_to_mids(csp: BinaryCsp, r: int) -> GadgetGraph:
    """Independent-dominating-set gadget of a binary CSP.

    Variable ``v`` becomes a clique on a dummy plus one vertex per symbol.
    Constraint ``e = uv`` with allowed pairs ``C_e`` gets, per allowed pair
    ``(i, j)``, an independent set of ``r`` vertices seen by ``w[u, a]`` for
    every ``a != i`` and by ``w[v, b]`` whenever ``(i, b)`` is allowed, plus
    one more independent set of ``r`` vertices seen by ``w[u, a]`` whenever
    some ``(a, .)`` is allowed.
    """
    if r < 1:
        raise ValueError("r must be at least 1")
    s = csp.alphabet_size
    roles: list[tuple] = []
    dummy = []
    symbol = []
    for v in range(csp.num_vars):
        dummy.append(len(roles))
        roles.append(("dummy", v + 1))
        row = []
        for a in range(s):
            row.append(len(roles))
            roles.append(("symbol", v + 1, a))
        symbol.append(row)
    links: list[tuple[int, int]] = []
    for v in range(csp.num_vars):
        members = [dummy[v]] + symbol[v]
        links.extend((members[a], members[b]) for a in range(len(members)) for b in range(a + 1, len(members)))
    for e, (u, v, allowed) in enumerate(csp.edges, start=1):
        for i, j in sorted(allowed):
            block = []
            for t in range(1, r + 1):
                block.append(len(roles))
                roles.append(("pair", e, i, j, t))
            for a in range(s):
                if a != i:
                    links.extend((symbol[u][a], x) for x in block)
            for b in range(s):
                if (i, b) in allowed:
                    links.extend((symbol[v][b], x) for x in block)
        block = []
        for t in range(1, r + 1):
            block.append(len(roles))
            roles.append(("edge", e, t))
        for a in range(s):
            if any(p[0] == a for p in allowed):
                links.extend((symbol[u][a], x) for x in block)
    graph = Graph.from_edges(len(roles), links)
    return GadgetGraph(graph, tuple(roles), {"r": r, "source": "csp"})


def mids_witness(csp: BinaryCsp, assign: Sequence[int], gadget: GadgetGraph) -> int:
    """The symbol vertex ``w[v, assign[v]]`` of every variable."""
    if len(assign) != csp.num_vars or any(not 0 <= a < csp.alphabet_size for a in assign):
        raise NotSatisfying("assignment does not fit the CSP")
    if csp.violated(assign):
        raise NotSatisfying("assignment violates at least one constraint")
    want = {("symbol", v + 1, a) for v, a in enumerate(assign)}
    return mask_of(v for v, role in enumerate(gadget.roles) if role in want)


def pendant_gadget(g: Graph, r) -> GadgetGraph:
    """Attach ceil(r) degree-one vertices to every vertex of ``g``."""
    k = math.ceil(r)
    if k < 1:
        raise ValueError("r must be at least 1")
    roles = [("original", v + 1) for v in range(g.n)]
    edges = list(g.edges())
    for v in range(g.n):
        for t in range(1, k + 1):
            edges.append((v, len(roles)))
            roles.append(("pendant", v + 1, t))
    return GadgetGraph(Graph.from_edges(len(roles), edges), tuple(roles), {"r": k, "source": "graph"})


def add_pendants(g: Graph, r) -> Graph:
    return pendant_gadget(g, r).graph


def universal_gadget(g: Graph) -> GadgetGraph:
    roles = [("original", v + 1) for v in range(g.n)] + [("universal",)]
    edges = list(g.edges()) + [(v, g.n) for v in range(g.n)]
    return GadgetGraph(Graph.from_edges(g.n + 1, edges), tuple(roles), {"source": "graph"})


def add_universal_vertex(g: Graph) -> Graph:
    return universal_gadget(g).graph
