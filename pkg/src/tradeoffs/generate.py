"""Seeded random instances. The seed fully determines the output."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Mapping

from .errors import BadSpec
from .graph import BinaryCsp, CnfFormula, Graph, Metric, SetSystem

KINDS = ("graph", "metric", "cnf", "csp", "setsystem")

_DEFAULTS = {
    "graph": {"n": 8, "p": 0.5},
    "metric": {"n": 6, "max_weight": 100},
    "cnf": {"num_vars": 4, "clauses": 4, "k": 3},
    "csp": {"num_vars": 3, "alphabet": 2, "edge_p": 0.5, "allow_p": 0.5},
    "setsystem": {"n": 10, "m": 6, "density": 0.3},
}


@dataclass(frozen=True)
class InstanceSpec:
    kind: str
    params: Mapping[str, Any] = field(default_factory=dict)
    seed: int = 0

    def resolved(self) -> dict:
        if self.kind not in _DEFAULTS:
            raise BadSpec(f"unknown instance kind {self.kind!r}; expected one of {', '.join(KINDS)}")
        unknown = set(self.params) - set(_DEFAULTS[self.kind])
        if unknown:
            raise BadSpec(f"unknown parameter(s) for {self.kind}: {', '.join(sorted(unknown))}")
        return {**_DEFAULTS[self.kind], **self.params}


def _need(cond, message):
    if not cond:
        raise BadSpec(message)


def _prob(name, p):
    _need(isinstance(p, (int, float)) and 0.0 <= p <= 1.0, f"{name} must lie in [0, 1], got {p!r}")


def _count(name, x, low=0):
    _need(isinstance(x, int) and not isinstance(x, bool) and x >= low, f"{name} must be an integer >= {low}, got {x!r}")


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


def random_metric(n: int, max_weight: int, rng: random.Random) -> Metric:
    dist = [[0 if i == j else rng.randint(1, max_weight) for j in range(n)] for i in range(n)]
    return Metric(dist).closure()


def random_3sat(num_vars: int, clauses: int, rng: random.Random, k: int = 3) -> CnfFormula:
    out = []
    for _ in range(clauses):
        vars_ = rng.sample(range(1, num_vars + 1), k)
        out.append(tuple(v if rng.random() < 0.5 else -v for v in vars_))
    return CnfFormula(num_vars, tuple(out))


def random_csp(num_vars: int, alphabet: int, edge_p: float, allow_p: float, rng: random.Random) -> BinaryCsp:
    edges = []
    for u in range(num_vars):
        for v in range(u + 1, num_vars):
            if rng.random() < edge_p:
                allowed = frozenset(
                    (a, b) for a in range(alphabet) for b in range(alphabet) if rng.random() < allow_p
                )
                edges.append((u, v, allowed))
    return BinaryCsp(num_vars, alphabet, tuple(edges))


def planted_set_system(n: int, m: int, density: float, rng: random.Random) -> SetSystem:
    """A few sets partition the universe; the rest are random. Positions are shuffled."""
    planted = rng.randint(1, min(m, max(n, 1)))
    sets = [0] * planted
    for e in range(n):
        sets[rng.randrange(planted)] |= 1 << e
    for _ in range(m - planted):
        mask = 0
        for e in range(n):
            if rng.random() < density:
                mask |= 1 << e
        sets.append(mask)
    rng.shuffle(sets)
    return SetSystem(n, tuple(sets))


def generate(spec: InstanceSpec):
    p = spec.resolved()
    rng = random.Random(spec.seed)
    if spec.kind == "graph":
        _count("n", p["n"])
        _prob("p", p["p"])
        return random_graph(p["n"], p["p"], rng)
    if spec.kind == "metric":
        _count("n", p["n"], 1)
        _count("max_weight", p["max_weight"], 1)
        return random_metric(p["n"], p["max_weight"], rng)
    if spec.kind == "cnf":
        _count("k", p["k"], 2)
        _need(p["k"] <= 3, "k must be 2 or 3")
        _count("num_vars", p["num_vars"], p["k"])
        _count("clauses", p["clauses"])
        return random_3sat(p["num_vars"], p["clauses"], rng, p["k"])
    if spec.kind == "csp":
        _count("num_vars", p["num_vars"])
        _count("alphabet", p["alphabet"], 1)
        _prob("edge_p", p["edge_p"])
        _prob("allow_p", p["allow_p"])
        return random_csp(p["num_vars"], p["alphabet"], p["edge_p"], p["allow_p"], rng)
    _count("n", p["n"])
    _count("m", p["m"], 1)
    _prob("density", p["density"])
    return planted_set_system(p["n"], p["m"], p["density"], rng)
