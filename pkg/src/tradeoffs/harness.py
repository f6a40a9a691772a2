"""Scheme/oracle dispatch, ratio certification and sweep reports."""
from __future__ import annotations

import csv
import io as _io
import json
import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Any, Callable

from . import exact, schemes
from .graph import Graph, Metric, ProblemKind, SetSystem

CSV_HEADER = ("problem", "instance", "size", "r", "guarantee", "value", "opt", "ratio", "nodes", "ms")


@dataclass(frozen=True)
class Problem:
    name: str
    instance_type: type
    sense: str  # "min" or "max"
    run: Callable[[Any, Any], schemes.SolutionReport]
    oracle: Callable[[Any], Any]

    @property
    def default_format(self) -> str:
        return {Graph: "dimacs", Metric: "matrix", SetSystem: "sets"}[self.instance_type]


def _induced(name, kind):
    return Problem(
        name=name,
        instance_type=Graph,
        sense="max",
        run=lambda g, r: schemes.generic_max_scheme(g, kind, r),
        oracle=lambda g: exact.max_induced_exact(g, kind)[0],
    )


PROBLEMS: dict[str, Problem] = {
    "mids": Problem(
        "mids", Graph, "min",
        lambda g, r: schemes.generic_min_scheme(g, r),
        lambda g: exact.min_ids_exact(g)[0],
    ),
    "mmvc": Problem(
        "mmvc", Graph, "max",
        lambda g, r: schemes.mmvc_scheme(g, schemes.mmvc_groups_for_ratio(r)),
        lambda g: exact.max_minimal_vc_exact(g)[0],
    ),
    "ipath": _induced("ipath", ProblemKind.INDUCED_PATH),
    "itree": _induced("itree", ProblemKind.INDUCED_TREE),
    "iforest": _induced("iforest", ProblemKind.INDUCED_FOREST),
    "mis": Problem(
        "mis", Graph, "max",
        lambda g, r: schemes.partition_scheme_mis(g, r),
        lambda g: exact.max_independent_set_exact(g)[0],
    ),
    "atsp": Problem(
        "atsp", Metric, "min",
        lambda d, r: schemes.atsp_scheme(d, r),
        lambda d: exact.held_karp(d).cost,
    ),
    "grundy": Problem(
        "grundy", Graph, "max",
        lambda g, r: schemes.grundy_scheme(g, r),
        lambda g: exact.grundy_exact(g)[0],
    ),
    "setcover": Problem(
        "setcover", SetSystem, "min",
        lambda s, r: schemes.setcover_report(s, r),
        lambda s: exact.set_cover_exact(s)[0],
    ),
}


def instance_size(instance) -> int:
    """``n`` for graphs and metrics, ``m`` for set systems."""
    if isinstance(instance, SetSystem):
        return instance.m
    return instance.n


def certifies(sense: str, value, opt, guarantee) -> bool:
    """Exact check of value <= g*opt (min) or value*g >= opt (max)."""
    g = Fraction(guarantee)
    v, o = Fraction(value), Fraction(opt)
    if sense == "min":
        return v <= g * o
    return v * g >= o


def achieved_ratio(sense: str, value, opt) -> float:
    """Ratio >= 1 between the optimum and the returned value."""
    num, den = (value, opt) if sense == "min" else (opt, value)
    if den == 0:
        return 1.0 if num == 0 else math.inf
    return float(Fraction(num) / Fraction(den))


@dataclass(frozen=True)
class SweepRow:
    problem: str
    instance: str
    size: int
    r: float
    guarantee: float
    value: Any
    opt: Any
    ratio: float | None
    nodes: int
    ms: float

    @property
    def certified(self) -> bool | None:
        if self.opt is None:
            return None
        return certifies(PROBLEMS[self.problem].sense, self.value, self.opt, self.guarantee)


def sweep(problem: str, instances, ratios, oracle: bool = False) -> list[SweepRow]:
    """One row per (instance, r), sorted by instance id then r.

    ``instances`` is an iterable of ``(instance_id, instance)`` pairs.
    """
    spec = PROBLEMS[problem]
    rows = []
    for inst_id, inst in instances:
        opt = spec.oracle(inst) if oracle else None
        for r in ratios:
            rep = spec.run(inst, r)
            rows.append(
                SweepRow(
                    problem=problem,
                    instance=inst_id,
                    size=instance_size(inst),
                    r=float(r),
                    guarantee=float(rep.guarantee),
                    value=rep.value,
                    opt=opt,
                    ratio=None if opt is None else achieved_ratio(spec.sense, rep.value, opt),
                    nodes=rep.nodes_enumerated,
                    ms=rep.wall_time_ms,
                )
            )
    rows.sort(key=lambda row: (row.instance, row.r))
    return rows


@dataclass(frozen=True)
class Verdict:
    instance: str
    value: Any
    opt: Any
    guarantee: float
    passed: bool


def verify(problem: str, instances, r) -> list[Verdict]:
    spec = PROBLEMS[problem]
    out = []
    for inst_id, inst in instances:
        rep = spec.run(inst, r)
        opt = spec.oracle(inst)
        out.append(Verdict(inst_id, rep.value, opt, float(rep.guarantee), certifies(spec.sense, rep.value, opt, rep.guarantee)))
    return out


def _cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, float):
        if math.isinf(x):
            return "inf"
        if x == int(x):
            return str(int(x))
        return f"{x:.6g}"
    return str(x)


def rows_to_csv(rows, include_ms: bool = True) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    header = CSV_HEADER if include_ms else CSV_HEADER[:-1]
    w.writerow(header)
    for row in rows:
        cells = [
            row.problem, row.instance, row.size, row.r, row.guarantee,
            row.value, row.opt, row.ratio, row.nodes,
        ]
        if include_ms:
            cells.append(f"{row.ms:.3f}")
        w.writerow([_cell(c) for c in cells])
    return buf.getvalue()


def rows_to_json(rows) -> str:
    out = []
    for row in rows:
        d = asdict(row)
        d["ms"] = round(d["ms"], 3)
        if d["ratio"] is not None and math.isinf(d["ratio"]):
            d["ratio"] = "inf"
        out.append(d)
    return json.dumps(out, indent=2, sort_keys=True) + "\n"
