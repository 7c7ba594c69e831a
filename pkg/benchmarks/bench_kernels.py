"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--degrees 3 4 5] [--repeat 3]

For each degree it times orbit labelling and the antisymmetrizer blocks
on the S3 calculus with both conjugacy classes (the largest desk-scale
case), checks that both backends agree, and finally times a full wedge
space build with each backend.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from bicalc import build_group, make_calculus
from bicalc import kernels
from bicalc.exterior import ExteriorAlgebra


def _best(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def _all_blocks(mod, tables, d, p):
    lf, ls, jf, js = tables
    labels = mod.braid_orbits(lf, ls, jf, js, d, p)
    order = np.argsort(labels, kind="stable")
    bounds = np.flatnonzero(np.diff(labels[order])) + 1
    local = np.empty(d ** p, dtype=np.int32)
    blocks = []
    for codes in np.split(order, bounds):
        codes = np.sort(codes).astype(np.int64)
        local[codes] = np.arange(len(codes), dtype=np.int32)
        blocks.append(mod.antisym_block(lf, ls, d, p, codes, local))
    return labels, blocks


def _same(a, b):
    la, ba = a
    lb, bb = b
    if not np.array_equal(la, lb) or len(ba) != len(bb):
        return False
    return all(all(np.array_equal(x, y) for x, y in zip(u, v)) for u, v in zip(ba, bb))


def _space_time(backend, spec, p, repeat):
    saved = kernels.braid_orbits, kernels.antisym_block
    kernels.braid_orbits, kernels.antisym_block = backend.braid_orbits, backend.antisym_block
    try:
        def build():
            alg = ExteriorAlgebra(spec)
            for q in range(p + 1):
                alg.space(q)
            return alg.space(p).dimension
        return _best(build, repeat)
    finally:
        kernels.braid_orbits, kernels.antisym_block = saved


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--degrees", type=int, nargs="+", default=[3, 4, 5])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    spec = make_calculus(build_group("s3"), "a,ab")
    tables = spec.braiding.tables()
    d = spec.dim
    py = kernels.python_backend
    cc = kernels.compiled_backend
    if cc is None:
        print("compiled extension not available; only the Python backend is timed")

    print(f"{'degree':>6} {'monomials':>9} {'python s':>10} {'compiled s':>11} {'speedup':>8}  agree")
    for p in args.degrees:
        tp, rp = _best(lambda: _all_blocks(py, tables, d, p), args.repeat)
        if cc is None:
            print(f"{p:>6} {d ** p:>9} {tp:>10.4f} {'-':>11} {'-':>8}  -")
            continue
        tc, rc = _best(lambda: _all_blocks(cc, tables, d, p), args.repeat)
        print(f"{p:>6} {d ** p:>9} {tp:>10.4f} {tc:>11.4f} {tp / tc:>7.1f}x  {_same(rp, rc)}")

    p = max(args.degrees)
    print(f"\nfull wedge space build up to degree {p}")
    tp, dim = _space_time(py, spec, p, 1)
    print(f"  python   {tp:.3f} s  (dimension {dim})")
    if cc is not None:
        tc, dim = _space_time(cc, spec, p, 1)
        print(f"  compiled {tc:.3f} s  (dimension {dim})")


if __name__ == "__main__":
    main()
