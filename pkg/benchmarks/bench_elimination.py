"""Compiled versus pure-numpy elimination kernels.

Times the panel kernel on its own and full ``rank`` / ``rref`` calls with each
backend swapped in, and checks that both backends return identical results.

    python3 benchmarks/bench_elimination.py --sizes 256 1024 --p 3 5
"""

from __future__ import annotations

import argparse
import timeit
from contextlib import contextmanager

import numpy as np

from hopfgalois import _kernels_py, fp_linalg

try:
    from hopfgalois import _kernels as _compiled
except ImportError:
    _compiled = None


@contextmanager
def backend(module):
    saved = fp_linalg._kernels
    fp_linalg._kernels = module
    try:
        yield
    finally:
        fp_linalg._kernels = saved


def random_matrix(n: int, p: int, rank_deficit: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    r = n - rank_deficit
    return (rng.integers(0, p, (n, r)) @ rng.integers(0, p, (r, n))) % p


def best_of(stmt, repeat: int) -> float:
    return min(timeit.repeat(stmt, number=1, repeat=repeat))


def bench_panel(p: int, rows: int, repeat: int) -> dict[str, float]:
    P = np.random.default_rng(0).integers(0, p, (rows, fp_linalg.PANEL))
    out = {}
    for name, mod in (("python", _kernels_py), ("compiled", _compiled)):
        if mod is None:
            continue
        out[name] = best_of(lambda m=mod: m.factor_panel(P.copy(), p), repeat)
    return out


def bench_rref(p: int, n: int, repeat: int) -> tuple[dict[str, float], bool]:
    M = random_matrix(n, p, rank_deficit=n // 8, seed=n)
    times, results = {}, {}
    for name, mod in (("python", _kernels_py), ("compiled", _compiled)):
        if mod is None:
            continue
        with backend(mod):
            results[name] = fp_linalg.rref(M, p)
            times[name] = best_of(lambda: fp_linalg.rref(M, p), repeat)
    vals = list(results.values())
    same = all(np.array_equal(v[0], vals[0][0]) and v[1] == vals[0][1] for v in vals)
    return times, same


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[128, 512, 1024])
    ap.add_argument("--p", type=int, nargs="+", default=[2, 3, 5])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if _compiled is None:
        print("compiled kernels are not built; timing the numpy fallback only")
    print(f"{'kernel':<8} {'p':>3} {'n':>6} {'python s':>10} {'compiled s':>11} {'speedup':>8}  agree")
    for p in args.p:
        for n in args.sizes:
            t = bench_panel(p, n, args.repeat)
            _row("panel", p, n, t, True)
            t, same = bench_rref(p, n, args.repeat)
            _row("rref", p, n, t, same)
    return 0


def _row(kind: str, p: int, n: int, t: dict[str, float], same: bool) -> None:
    py, co = t.get("python"), t.get("compiled")
    speed = f"{py / co:8.1f}" if py and co else f"{'-':>8}"
    co_s = f"{co:11.4f}" if co is not None else f"{'-':>11}"
    print(f"{kind:<8} {p:>3} {n:>6} {py:10.4f} {co_s} {speed}  {'yes' if same else 'NO'}")


if __name__ == "__main__":
    raise SystemExit(main())
