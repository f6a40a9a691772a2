"""Compare the compiled kernels with the pure-Python fallback.

Both backends are imported directly, so one process times both. Each case
checks that the two backends agree before reporting timings.

    python benchmarks/bench_kernels.py [--repeat 3] [--quick]
"""
import argparse
import random
import time

from tradeoffs import _pykernels
from tradeoffs.generate import InstanceSpec, generate

try:
    from tradeoffs import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def cases(quick):
    n_scan, n_hk, n_gr, n_mis = (14, 10, 8, 30) if quick else (18, 13, 9, 50)
    g = generate(InstanceSpec("graph", {"n": n_scan, "p": 0.3}, seed=1))
    yield f"scan_subsets IDS n={n_scan} k={n_scan // 2}", "scan_subsets", (g.adj, g.n, n_scan // 2, _pykernels.IDS, False)
    yield f"scan_subsets path n={n_scan} k={n_scan // 2}", "scan_subsets", (g.adj, g.n, n_scan // 2, _pykernels.PATH, True)
    d = generate(InstanceSpec("metric", {"n": n_hk}, seed=2))
    yield f"held_karp n={n_hk}", "held_karp", ([list(row) for row in d.dist],)
    h = generate(InstanceSpec("graph", {"n": n_gr, "p": 0.5}, seed=3))
    yield f"grundy n={n_gr}", "grundy", (h.adj, h.n)
    m = generate(InstanceSpec("graph", {"n": n_mis, "p": 0.2}, seed=4))
    yield f"max_independent_set n={n_mis}", "max_independent_set", (m.adj, m.n)


def best_of(fn, args, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def value_of(name, out):
    # compare objective values, since ties may pick different witnesses
    if name == "held_karp":
        return out[0]
    if name == "scan_subsets":
        return bin(out[0]).count("1"), out[1]
    if name == "max_independent_set":
        return out[0] if isinstance(out, tuple) else bin(out).count("1")
    return out[0] if isinstance(out, tuple) else out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="smaller instances")
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled extension not available; only the fallback can run")
    print(f"{'case':36s} {'python ms':>11s} {'compiled ms':>12s} {'speedup':>8s}")
    random.seed(0)
    for label, name, call in cases(args.quick):
        t_py, out_py = best_of(getattr(_pykernels, name), call, args.repeat)
        if _ckernels is None:
            print(f"{label:36s} {t_py * 1e3:11.2f} {'-':>12s} {'-':>8s}")
            continue
        t_c, out_c = best_of(getattr(_ckernels, name), call, args.repeat)
        if value_of(name, out_py) != value_of(name, out_c):
            raise SystemExit(f"backends disagree on {label}: {out_py!r} vs {out_c!r}")
        print(f"{label:36s} {t_py * 1e3:11.2f} {t_c * 1e3:12.2f} {t_py / max(t_c, 1e-9):7.1f}x")


if __name__ == "__main__":
    main()
