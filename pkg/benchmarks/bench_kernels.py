"""Compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Both backends are imported directly, so no environment variable is needed.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from linefree import _fallback, corpus, diophantine
from linefree.linalg import PRIMES
from linefree.syzygy import JacobianEngine

try:
    from linefree import _kernels
except ImportError:  # extension not built
    _kernels = None


def _time(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def cases():
    p = PRIMES[0]
    eng = JacobianEngine(corpus.grid13())
    jac = eng.jacobian_matrix_mod(6, p)
    rng = np.random.default_rng(0)
    rand = rng.integers(0, p, size=(120, 160), dtype=np.int64)
    a = rng.integers(0, p, size=(80, 80), dtype=np.int64)
    b = rng.integers(0, p, size=(80, 80), dtype=np.int64)
    system = diophantine.predefined("lemma33_n5_0")

    def rref(mod):
        return lambda: [mod.rref_mod(np.ascontiguousarray(m.copy()), p, False) for m in (jac, rand)]

    def matmul(mod):
        return lambda: mod.matmul_mod(a, b, p)

    def enum(mod):
        def run():
            orig = diophantine.kernels.enumerate_box
            diophantine.kernels.enumerate_box = mod.enumerate_box
            try:
                diophantine.enumerate_nonneg(system, threads=1)
            finally:
                diophantine.kernels.enumerate_box = orig
        return run

    return [("rref_mod (G13 Jacobian + 120x160)", rref), ("matmul_mod 80x80", matmul),
            ("enumerate lemma33_n5_0", enum)]


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    print(f"{'kernel':40s} {'cython [s]':>11s} {'python [s]':>11s} {'speedup':>8s}")
    for name, make in cases():
        py = _time(make(_fallback), args.repeat)
        if _kernels is None:
            print(f"{name:40s} {'n/a':>11s} {py:11.4f} {'':>8s}")
            continue
        cy = _time(make(_kernels), args.repeat)
        print(f"{name:40s} {cy:11.4f} {py:11.4f} {py / cy:7.1f}x")


if __name__ == "__main__":
    main()
