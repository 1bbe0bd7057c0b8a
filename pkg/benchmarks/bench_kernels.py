"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Checks that both backends give identical results before timing them.
"""
import argparse
import random
import time

import numpy as np

from stabclass import _kernels, library
from stabclass.braiding import braiding_form
from stabclass.groebner import ModulePresentation, groebner, term_key, to_vec
from stabclass.ring import LaurentPoly


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def rref_case(backend, mats, p):
    def run():
        out = []
        for A in mats:
            B = A.copy()
            out.append((backend.rref_inplace(B, p), B))
        return out
    return run


def reduce_case(backend, gb, vecs, p):
    basis = gb._index.by_pos

    def run():
        return [backend.reduce_vector(dict(v), basis, term_key, p) for v in vecs]
    return run


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _kernels.compiled is None:
        raise SystemExit("compiled kernels are not built; run pip install -e . first")
    rng = np.random.default_rng(0)
    rows = []

    for n, p in ((60, 2), (120, 2), (200, 3)):
        mats = [rng.integers(0, p, size=(n, n + 20), dtype=np.int64) for _ in range(5)]
        a = rref_case(_kernels.pure, mats, p)
        b = rref_case(_kernels.compiled, mats, p)
        for (pa, A), (pb, B) in zip(a(), b()):
            assert pa == pb and np.array_equal(A, B)
        rows.append((f"rref {n}x{n + 20} p={p}", _time(a, args.repeat), _time(b, args.repeat)))

    r = random.Random(0)
    p, m = 3, 2
    gens = []
    for _ in range(3):
        terms = {(r.randint(-2, 2), r.randint(-2, 2)): r.randint(1, p - 1) for _ in range(4)}
        gens.append([LaurentPoly(p, m, terms)])
    gb = groebner(ModulePresentation(p, m, 1, gens))
    vecs = []
    for _ in range(200):
        terms = {(r.randint(-6, 6), r.randint(-6, 6)): r.randint(1, p - 1) for _ in range(8)}
        vecs.append(to_vec([LaurentPoly(p, m, terms)]))
    a = reduce_case(_kernels.pure, gb, vecs, p)
    b = reduce_case(_kernels.compiled, gb, vecs, p)
    assert a() == b()
    rows.append(("reduce_vector 200 vectors", _time(a, args.repeat), _time(b, args.repeat)))

    code = library.get("toric2d")

    def pipeline():
        braiding_form(code)
    rows.append(("braiding_form toric2d (active backend)", None, _time(pipeline, 1)))

    print(f"{'case':42s} {'python':>10s} {'cython':>10s} {'speedup':>8s}")
    for name, tp, tc in rows:
        if tp is None:
            print(f"{name:42s} {'':>10s} {tc:10.4f}")
        else:
            print(f"{name:42s} {tp:10.4f} {tc:10.4f} {tp / tc:8.1f}x")


if __name__ == "__main__":
    main()
