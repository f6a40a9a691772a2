"""Command-line front end: ``tradeoffs {solve,verify,sweep,reduce,generate}``.

Exit codes: 0 success, 1 a verification failed, 2 infeasible instance,
3 an exact-solver cap was exceeded, 64 usage error, 65 bad input data,
66 missing input file.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import generate as gen
from . import harness, io, kernels, reductions, schemes
from . import __version__
from .errors import (
    BadSpec,
    CapExceeded,
    Infeasible,
    NotSatisfying,
    ParseError,
    UnsupportedClause,
)
from .graph import Graph, Metric, ProblemKind, bits, is_feasible, popcount

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INFEASIBLE = 2
EXIT_CAP = 3
EXIT_USAGE = 64
EXIT_DATA = 65
EXIT_NOINPUT = 66


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text):
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not x > 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return int(x) if x == int(x) and "." not in text else x


def _ratio_list(text):
    try:
        return [_positive(t) for t in text.split(",") if t.strip()]
    except argparse.ArgumentTypeError as exc:
        raise argparse.ArgumentTypeError(f"bad --ratios value: {exc}") from None


def _load(path, fmt, problem, closure=False):
    spec = harness.PROBLEMS[problem]
    fmt = fmt or spec.default_format
    expected = spec.default_format
    if fmt != expected:
        raise UsageError(f"--problem {problem} reads the {expected} format, not {fmt}")
    inst = io.read_instance(path, fmt)
    if isinstance(inst, Metric):
        inst = inst.closure() if closure else inst
        if not inst.triangle_checked and not inst.satisfies_triangle():
            raise ParseError(f"{path}: distances violate the triangle inequality (use --closure)")
    return inst


def _instance_id(path) -> str:
    return Path(path).name


# ---------------------------------------------------------------- subcommands


def cmd_solve(args) -> int:
    if args.delta is not None and args.problem != "setcover":
        raise UsageError("--delta applies to --problem setcover only")
    inst = _load(args.input, args.format, args.problem, args.closure)
    if args.delta is not None:
        rep = schemes.setcover_mdelta(inst, args.delta)
    else:
        rep = harness.PROBLEMS[args.problem].run(inst, args.ratio)
    if args.csv:
        row = harness.SweepRow(
            problem=args.problem,
            instance=_instance_id(args.input),
            size=harness.instance_size(inst),
            r=float(args.ratio if args.delta is None else args.delta),
            guarantee=float(rep.guarantee),
            value=rep.value,
            opt=None,
            ratio=None,
            nodes=rep.nodes_enumerated,
            ms=rep.wall_time_ms,
        )
        sys.stdout.write(harness.rows_to_csv([row]))
    else:
        d = rep.as_dict()
        d["instance"] = _instance_id(args.input)
        d["backend"] = kernels.BACKEND
        # vertices, cities and set indices are 1-based on disk
        d["solution"] = [v + 1 for v in d["solution"]]
        sys.stdout.write(json.dumps(d, indent=2, sort_keys=True, default=str) + "\n")
    return EXIT_OK


def _random_instances(problem, count, max_size, seed):
    spec = harness.PROBLEMS[problem]
    out = []
    for i in range(count):
        s = seed + i
        size = 1 + (i % max_size)
        if spec.instance_type is Graph:
            p = (0.2, 0.35, 0.5, 0.65)[i % 4]
            inst = gen.generate(gen.InstanceSpec("graph", {"n": size, "p": p}, s))
        elif spec.instance_type is Metric:
            inst = gen.generate(gen.InstanceSpec("metric", {"n": size, "max_weight": 50}, s))
        else:
            inst = gen.generate(gen.InstanceSpec("setsystem", {"n": 2 * size, "m": size, "density": 0.3}, s))
        out.append((f"random-{s}", inst))
    return out


def cmd_verify(args) -> int:
    if args.input:
        instances = [(_instance_id(p), _load(p, args.format, args.problem, args.closure)) for p in args.input]
    elif args.random:
        instances = _random_instances(args.problem, args.random, args.max_size, args.seed)
    else:
        raise UsageError("verify needs --input FILE... or --random N")
    verdicts = harness.verify(args.problem, instances, args.ratio)
    failed = 0
    for v in verdicts:
        status = "PASS" if v.passed else "FAIL"
        failed += not v.passed
        print(f"{status} {args.problem} {v.instance} value={v.value} opt={v.opt} guarantee={v.guarantee:g}")
    print(f"{len(verdicts) - failed}/{len(verdicts)} passed")
    return EXIT_OK if failed == 0 else EXIT_FAILED


def cmd_sweep(args) -> int:
    if not args.ratios:
        raise UsageError("--ratios needs at least one value")
    instances = [(_instance_id(p), _load(p, args.format, args.problem, args.closure)) for p in args.input]
    rows = harness.sweep(args.problem, instances, args.ratios, oracle=args.oracle)
    text = harness.rows_to_json(rows) if args.json else harness.rows_to_csv(rows, include_ms=not args.no_ms)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    if args.oracle and not all(row.certified for row in rows):
        print("certification failed on at least one row", file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


_REDUCTIONS = {
    ("cnf", "ipath"): "cnf",
    ("csp", "mids"): "csp",
    ("graph", "mmvc"): "dimacs",
    ("graph", "itree"): "dimacs",
}


def cmd_reduce(args) -> int:
    key = (args.source, args.target)
    if key not in _REDUCTIONS:
        pairs = ", ".join(f"{a}->{b}" for a, b in _REDUCTIONS)
        raise UsageError(f"no reduction {args.source}->{args.target}; available: {pairs}")
    if args.r < 1:
        raise UsageError("--r must be at least 1")
    if args.witness and args.source == "graph":
        raise UsageError("--witness applies to cnf and csp sources only")
    inst = io.read_instance(args.input, _REDUCTIONS[key])
    if key == ("cnf", "ipath"):
        gadget = reductions.sat_to_induced_path(inst, args.r)
    elif key == ("csp", "mids"):
        gadget = reductions.csp_to_mids(inst, args.r)
    elif key == ("graph", "mmvc"):
        gadget = reductions.pendant_gadget(inst, args.r)
    else:
        gadget = reductions.universal_gadget(inst)
    prefix = args.output or str(Path(args.input).with_suffix("")) + f".{args.target}.r{args.r}"
    g = gadget.graph
    Path(prefix + ".dimacs").write_text(
        io.emit_dimacs_graph(g, comments=[f"{args.source} -> {args.target} gadget, r={args.r}"])
    )
    Path(prefix + ".roles").write_text(io.emit_roles(gadget.roles))
    print(f"gadget: {g.n} vertices, {g.m} edges -> {prefix}.dimacs, {prefix}.roles")
    if not args.witness:
        return EXIT_OK
    text = Path(args.witness).read_text()
    if args.source == "cnf":
        tau = io.parse_cnf_assignment(text, inst.num_vars)
        w = reductions.induced_path_witness(inst, tau, args.r, gadget)
        ok = is_feasible(g, w, ProblemKind.INDUCED_PATH) and popcount(w) == 2 * args.r * inst.m
        kind = "induced path"
    else:
        assign = io.parse_csp_assignment(text, inst.num_vars)
        w = reductions.mids_witness(inst, assign, gadget)
        ok = is_feasible(g, w, ProblemKind.INDEPENDENT_DOMINATING_SET) and popcount(w) == inst.num_vars
        kind = "independent dominating set"
    Path(prefix + ".witness").write_text(" ".join(str(v + 1) for v in bits(w)) + "\n")
    print(f"witness: {popcount(w)} vertices, {'verified' if ok else 'NOT verified'} as {kind} -> {prefix}.witness")
    return EXIT_OK if ok else EXIT_FAILED


_GEN_FLAGS = {
    "graph": ("n", "p"),
    "metric": ("n", "max_weight"),
    "cnf": ("num_vars", "clauses", "k"),
    "csp": ("num_vars", "alphabet", "edge_p", "allow_p"),
    "setsystem": ("n", "m", "density"),
}


def cmd_generate(args) -> int:
    params = {k: getattr(args, k) for k in _GEN_FLAGS[args.kind] if getattr(args, k) is not None}
    inst = gen.generate(gen.InstanceSpec(args.kind, params, args.seed))
    text = io.emit(inst)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tradeoffs", description="Time-approximation trade-off schemes and exact oracles.")
    parser.add_argument("--version", action="version", version=f"tradeoffs {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    problems = sorted(harness.PROBLEMS)

    def instance_flags(p, multiple=False):
        p.add_argument("--problem", required=True, choices=problems)
        if multiple:
            p.add_argument("--input", nargs="+", metavar="FILE")
        else:
            p.add_argument("--input", required=True, metavar="FILE")
        p.add_argument("--format", choices=("dimacs", "cnf", "matrix", "sets"))
        p.add_argument("--closure", action="store_true", help="replace ATSP distances by shortest-path distances")

    p = sub.add_parser("solve", help="run one scheme on one instance")
    instance_flags(p)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--ratio", type=_positive, metavar="R")
    g.add_argument("--delta", type=float, metavar="D", help="set cover m**delta mode")
    out = p.add_mutually_exclusive_group()
    out.add_argument("--json", action="store_true", help="JSON report (default)")
    out.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check the ratio guarantee against the exact oracle")
    instance_flags(p, multiple=True)
    p.add_argument("--ratio", type=_positive, required=True, metavar="R")
    p.add_argument("--random", type=int, metavar="N", help="verify on N seeded random instances instead")
    p.add_argument("--max-size", type=int, default=10, metavar="K")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="one report row per (instance, ratio)")
    instance_flags(p, multiple=True)
    p.add_argument("--ratios", type=_ratio_list, required=True, metavar="R1,R2,...")
    p.add_argument("--oracle", action="store_true", help="add exact optimum and achieved ratio columns")
    out = p.add_mutually_exclusive_group()
    out.add_argument("--csv", action="store_true", help="CSV report (default)")
    out.add_argument("--json", action="store_true")
    p.add_argument("--no-ms", action="store_true", help="drop the timing column")
    p.add_argument("--output", metavar="FILE")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("reduce", help="build a hardness gadget")
    p.add_argument("--from", dest="source", required=True, choices=("cnf", "csp", "graph"))
    p.add_argument("--to", dest="target", required=True, choices=("ipath", "mids", "mmvc", "itree"))
    p.add_argument("--r", type=int, default=1, metavar="K")
    p.add_argument("--input", required=True, metavar="FILE")
    p.add_argument("--witness", metavar="ASSIGNFILE")
    p.add_argument("--output", metavar="PREFIX")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("generate", help="write a seeded random instance")
    p.add_argument("--kind", required=True, choices=gen.KINDS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--max-weight", dest="max_weight", type=int)
    p.add_argument("--vars", dest="num_vars", type=int)
    p.add_argument("--clauses", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--alphabet", type=int)
    p.add_argument("--edge-p", dest="edge_p", type=float)
    p.add_argument("--allow-p", dest="allow_p", type=float)
    p.add_argument("--density", type=float)
    p.add_argument("--output", metavar="FILE")
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"tradeoffs: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Infeasible as exc:
        print(f"tradeoffs: infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except CapExceeded as exc:
        print(f"tradeoffs: {exc}", file=sys.stderr)
        return EXIT_CAP
    except FileNotFoundError as exc:
        print(f"tradeoffs: {exc}", file=sys.stderr)
        return EXIT_NOINPUT
    except (ParseError, BadSpec, UnsupportedClause, NotSatisfying, ValueError) as exc:
        print(f"tradeoffs: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
