"""Plain-text instance formats. Vertex and element indices are 1-based on disk.

* graph: DIMACS ``p edge n m`` / ``e u v`` with ``c`` comments;
* cnf: DIMACS ``p cnf vars clauses``, zero-terminated clauses;
* matrix: ``n`` then ``n`` rows of non-negative integers (``-1`` is accepted
  on the diagonal only, as the forbidden self-assignment marker);
* sets: ``n m`` then ``m`` lines ``k e1 .. ek``;
* csp: ``n s e`` then per constraint ``u v k a1 b1 .. ak bk`` (symbols 0-based).
"""
from __future__ import annotations

from pathlib import Path

from .errors import ParseError
from .graph import BinaryCsp, CnfFormula, Graph, Metric, SetSystem, bits

FORMATS = ("dimacs", "cnf", "matrix", "sets", "csp")

_SUFFIX = {
    ".dimacs": "dimacs",
    ".col": "dimacs",
    ".gr": "dimacs",
    ".graph": "dimacs",
    ".cnf": "cnf",
    ".mat": "matrix",
    ".matrix": "matrix",
    ".metric": "matrix",
    ".sets": "sets",
    ".csp": "csp",
}


def _content_lines(text):
    """``(line_number, tokens)`` for non-blank, non-comment lines."""
    for no, line in enumerate(text.splitlines(), start=1):
        toks = line.split()
        if not toks or toks[0] in ("c", "%") or toks[0].startswith("#"):
            continue
        yield no, toks


def _int(tok, no):
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", no) from None


# ---------------------------------------------------------------- graphs


def parse_dimacs_graph(text: str) -> Graph:
    n = None
    declared = None
    edges = set()
    for no, toks in _content_lines(text):
        if toks[0] == "p":
            if n is not None:
                raise ParseError("second problem line", no)
            if len(toks) != 4 or toks[1] not in ("edge", "col"):
                raise ParseError("problem line must be 'p edge <n> <m>'", no)
            n, declared = _int(toks[2], no), _int(toks[3], no)
            if n < 0 or declared < 0:
                raise ParseError("negative size in problem line", no)
        elif toks[0] == "e":
            if n is None:
                raise ParseError("edge before problem line", no)
            if len(toks) != 3:
                raise ParseError("edge line must be 'e <u> <v>'", no)
            u, v = _int(toks[1], no), _int(toks[2], no)
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"edge ({u}, {v}) outside 1..{n}", no)
            if u == v:
                raise ParseError(f"self-loop at {u}", no)
            key = (min(u, v) - 1, max(u, v) - 1)
            if key in edges:
                raise ParseError(f"duplicate edge ({u}, {v})", no)
            edges.add(key)
        else:
            raise ParseError(f"unknown line type {toks[0]!r}", no)
    if n is None:
        raise ParseError("missing problem line")
    if declared != len(edges):
        raise ParseError(f"problem line declares {declared} edges, found {len(edges)}")
    return Graph.from_edges(n, sorted(edges))


def emit_dimacs_graph(g: Graph, comments=()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p edge {g.n} {g.m}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- CNF


def parse_cnf(text: str) -> CnfFormula:
    num_vars = None
    declared = None
    clauses = []
    current = []
    last_no = 0
    for no, toks in _content_lines(text):
        last_no = no
        if toks[0] == "p":
            if num_vars is not None:
                raise ParseError("second problem line", no)
            if len(toks) != 4 or toks[1] != "cnf":
                raise ParseError("problem line must be 'p cnf <vars> <clauses>'", no)
            num_vars, declared = _int(toks[2], no), _int(toks[3], no)
            continue
        if num_vars is None:
            raise ParseError("clause before problem line", no)
        for tok in toks:
            lit = _int(tok, no)
            if lit == 0:
                if not current:
                    raise ParseError("empty clause", no)
                try:
                    clauses.append(tuple(current))
                    CnfFormula(num_vars, [current])
                except ValueError as exc:
                    raise ParseError(str(exc), no) from None
                current = []
            else:
                current.append(lit)
    if num_vars is None:
        raise ParseError("missing problem line")
    if current:
        raise ParseError("last clause is not terminated by 0", last_no)
    if declared != len(clauses):
        raise ParseError(f"problem line declares {declared} clauses, found {len(clauses)}")
    return CnfFormula(num_vars, tuple(clauses))


def emit_cnf(phi: CnfFormula, comments=()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p cnf {phi.num_vars} {phi.m}")
    lines.extend(" ".join(str(l) for l in c) + " 0" for c in phi.clauses)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- metrics


def parse_metric(text: str) -> Metric:
    rows = list(_content_lines(text))
    if not rows:
        raise ParseError("empty metric file")
    no, head = rows[0]
    if len(head) != 1:
        raise ParseError("first line must hold the city count", no)
    n = _int(head[0], no)
    if len(rows) - 1 != n:
        raise ParseError(f"expected {n} matrix rows, found {len(rows) - 1}")
    dist = []
    for i, (no, toks) in enumerate(rows[1:]):
        if len(toks) != n:
            raise ParseError(f"row {i + 1} has {len(toks)} entries, expected {n}", no)
        row = []
        for j, tok in enumerate(toks):
            x = _int(tok, no)
            if i == j:
                if x not in (0, -1):
                    raise ParseError(f"diagonal entry must be 0 or -1, got {x}", no)
                x = 0
            elif x < 0:
                raise ParseError(f"negative distance {x} off the diagonal", no)
            row.append(x)
        dist.append(row)
    return Metric(dist)


def emit_metric(metric: Metric, diagonal_sentinel: bool = False) -> str:
    lines = [str(metric.n)]
    for i, row in enumerate(metric.dist):
        cells = []
        for j, x in enumerate(row):
            if i == j and diagonal_sentinel:
                cells.append("-1")
            else:
                if x != int(x):
                    raise ValueError("matrix format stores integer distances only")
                cells.append(str(int(x)))
        lines.append(" ".join(cells))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- set systems


def parse_sets(text: str) -> SetSystem:
    rows = list(_content_lines(text))
    if not rows:
        raise ParseError("empty set-system file")
    no, head = rows[0]
    if len(head) != 2:
        raise ParseError("first line must be '<n> <m>'", no)
    n, m = _int(head[0], no), _int(head[1], no)
    if len(rows) - 1 != m:
        raise ParseError(f"expected {m} set lines, found {len(rows) - 1}")
    sets = []
    for no, toks in rows[1:]:
        k = _int(toks[0], no)
        if len(toks) != k + 1:
            raise ParseError(f"set line declares {k} elements, found {len(toks) - 1}", no)
        mask = 0
        for tok in toks[1:]:
            e = _int(tok, no)
            if not 1 <= e <= n:
                raise ParseError(f"element {e} outside 1..{n}", no)
            mask |= 1 << (e - 1)
        sets.append(mask)
    return SetSystem(n, tuple(sets))


def emit_sets(system: SetSystem) -> str:
    lines = [f"{system.universe_size} {system.m}"]
    for s in system.sets:
        elems = [e + 1 for e in bits(s)]
        lines.append(" ".join(str(x) for x in [len(elems)] + elems))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- CSP


def parse_csp(text: str) -> BinaryCsp:
    rows = list(_content_lines(text))
    if not rows:
        raise ParseError("empty CSP file")
    no, head = rows[0]
    if len(head) != 3:
        raise ParseError("first line must be '<n> <s> <e>'", no)
    n, s, e = (_int(t, no) for t in head)
    if len(rows) - 1 != e:
        raise ParseError(f"expected {e} constraint lines, found {len(rows) - 1}")
    edges = []
    for no, toks in rows[1:]:
        if len(toks) < 3:
            raise ParseError("constraint line must be 'u v k a1 b1 ...'", no)
        u, v, k = (_int(t, no) for t in toks[:3])
        if len(toks) != 3 + 2 * k:
            raise ParseError(f"constraint declares {k} pairs, found {(len(toks) - 3) / 2:g}", no)
        vals = [_int(t, no) for t in toks[3:]]
        pairs = {(vals[2 * i], vals[2 * i + 1]) for i in range(k)}
        edges.append((u - 1, v - 1, pairs))
    try:
        return BinaryCsp(n, s, tuple(edges))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def emit_csp(csp: BinaryCsp) -> str:
    lines = [f"{csp.num_vars} {csp.alphabet_size} {len(csp.edges)}"]
    for u, v, allowed in csp.edges:
        pairs = sorted(allowed)
        flat = " ".join(f"{a} {b}" for a, b in pairs)
        lines.append(f"{u + 1} {v + 1} {len(pairs)}" + (f" {flat}" if flat else ""))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- gadget sidecars and witnesses


def emit_roles(roles) -> str:
    """One line per vertex: 1-based index, role tag, ``key=value`` parameters."""
    lines = []
    for v, role in enumerate(roles, start=1):
        tag = role[0]
        if tag == "connector":
            extra = f"j={role[1]} i={role[2]}"
        elif tag == "clause":
            lits = " ".join(f"x{var}={int(val)}" for var, val in role[3])
            extra = f"j={role[1]} i={role[2]} {lits}"
        elif tag == "dummy":
            extra = f"v={role[1]}"
        elif tag == "symbol":
            extra = f"v={role[1]} a={role[2]}"
        elif tag == "pair":
            extra = f"e={role[1]} i={role[2]} j={role[3]} t={role[4]}"
        elif tag == "edge":
            extra = f"e={role[1]} t={role[2]}"
        elif tag == "original":
            extra = f"v={role[1]}"
        elif tag == "pendant":
            extra = f"v={role[1]} t={role[2]}"
        elif tag == "universal":
            extra = ""
        else:
            raise ValueError(f"unknown role tag {tag!r}")
        lines.append(f"{v} {tag} {extra}".rstrip())
    return "\n".join(lines) + "\n"


def parse_roles(text: str) -> tuple[tuple, ...]:
    roles = []
    for no, toks in _content_lines(text):
        if _int(toks[0], no) != len(roles) + 1:
            raise ParseError("role lines must be numbered 1, 2, ...", no)
        tag = toks[1]
        kv = []
        for tok in toks[2:]:
            key, sep, val = tok.partition("=")
            if not sep:
                raise ParseError(f"expected key=value, got {tok!r}", no)
            kv.append((key, _int(val, no)))
        vals = [v for _, v in kv]
        if tag == "clause":
            lits = tuple((int(k[1:]), bool(v)) for k, v in kv[2:])
            roles.append(("clause", vals[0], vals[1], lits))
        else:
            roles.append((tag, *vals))
    return tuple(roles)


def parse_cnf_assignment(text: str, num_vars: int) -> tuple[bool, ...]:
    """Signed literals (DIMACS ``v`` lines allowed, 0 terminates); unset variables are false."""
    values = [False] * num_vars
    for no, toks in _content_lines(text):
        for tok in toks:
            if tok in ("v", "s", "SAT", "SATISFIABLE"):
                continue
            lit = _int(tok, no)
            if lit == 0:
                continue
            if abs(lit) > num_vars:
                raise ParseError(f"literal {lit} outside 1..{num_vars}", no)
            values[abs(lit) - 1] = lit > 0
    return tuple(values)


def parse_csp_assignment(text: str, num_vars: int) -> tuple[int, ...]:
    vals = [_int(tok, no) for no, toks in _content_lines(text) for tok in toks]
    if len(vals) != num_vars:
        raise ParseError(f"expected {num_vars} symbols, found {len(vals)}")
    return tuple(vals)


# ---------------------------------------------------------------- dispatch

PARSERS = {
    "dimacs": parse_dimacs_graph,
    "cnf": parse_cnf,
    "matrix": parse_metric,
    "sets": parse_sets,
    "csp": parse_csp,
}


def emit(instance) -> str:
    if isinstance(instance, Graph):
        return emit_dimacs_graph(instance)
    if isinstance(instance, CnfFormula):
        return emit_cnf(instance)
    if isinstance(instance, Metric):
        return emit_metric(instance)
    if isinstance(instance, SetSystem):
        return emit_sets(instance)
    if isinstance(instance, BinaryCsp):
        return emit_csp(instance)
    raise TypeError(f"no file format for {type(instance).__name__}")


def format_for(path, default=None) -> str:
    fmt = _SUFFIX.get(Path(path).suffix.lower(), default)
    if fmt is None:
        raise ParseError(f"cannot infer the format of {path}; pass --format")
    return fmt


def read_instance(path, fmt=None):
    fmt = fmt or format_for(path)
    if fmt not in PARSERS:
        raise ParseError(f"unknown format {fmt!r}")
    return PARSERS[fmt](Path(path).read_text())


def write_instance(path, instance) -> None:
    Path(path).write_text(emit(instance))
