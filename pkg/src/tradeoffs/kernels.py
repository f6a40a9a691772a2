"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when it imports and the graph
fits in 64 bits; everything else runs on ``_pykernels``. Set
``TRADEOFFS_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _pykernels

IS, IDS, MVC, PATH, TREE, FOREST = (
    _pykernels.IS,
    _pykernels.IDS,
    _pykernels.MVC,
    _pykernels.PATH,
    _pykernels.TREE,
    _pykernels.FOREST,
)

_compiled = None
if os.environ.get("TRADEOFFS_PURE_PYTHON") != "1":
    try:
        from . import _ckernels as _compiled
    except ImportError:
        _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"

# compiled limits, beyond which the fallback takes over
BITSET_LIMIT = 64
HK_LIMIT = 31
GRUNDY_LIMIT = 30


def backend_for(n, limit=BITSET_LIMIT):
    if _compiled is not None and n <= limit:
        return _compiled
    return _pykernels


def scan_subsets(adj, n, k, kind, maximize):
    return backend_for(n).scan_subsets(adj, n, k, kind, maximize)


def held_karp(dist):
    return backend_for(len(dist), HK_LIMIT).held_karp(dist)


def grundy(adj, n):
    return backend_for(n, GRUNDY_LIMIT).grundy(adj, n)


def max_independent_set(adj, n):
    return backend_for(n).max_independent_set(adj, n)
