"""Compare the compiled and pure-Python coefficient kernels.

Run with ``python benchmarks/bench_backends.py``. Kernel timings call both
modules directly; the end-to-end sweep runs in subprocesses so that each
backend is selected at import as in normal use.
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from qvl import _pykernels

try:
    from qvl import _ckernels
except ImportError:
    _ckernels = None

SWEEP = """
import time
from qvl import _backend
from qvl.gsum import g_enum, g_recursion_rhs
from qvl.invariants import g_closed
t = time.perf_counter()
for a in range(1, {amax} + 1):
    for b in range(1, 5):
        for c in range(4):
            for d in range(4):
                for e in range(9):
                    p = (a, b, c, d, e)
                    assert g_enum(p) == g_closed(p) == g_recursion_rhs(p)
print(_backend.BACKEND, time.perf_counter() - t)
"""


def random_vec(rng, n, width):
    v = [rng.randint(-width, width) for _ in range(n)]
    v[0] = v[0] or 1
    v[-1] = v[-1] or 1
    return tuple(v)


def bench_kernels(n, repeat):
    rng = random.Random(0)
    a, b = random_vec(rng, n, 1000), random_vec(rng, n, 1000)
    big = tuple(x * 10**30 for x in a)
    prod = _pykernels.poly_mul(a, b)
    cases = [
        ("poly_mul small", lambda k: k.poly_mul(a, b)),
        ("poly_mul bigint", lambda k: k.poly_mul(big, b)),
        ("poly_divmod exact", lambda k: k.poly_divmod(prod, b)),
    ]
    print(f"kernels, length {n}, best of {repeat}")
    for name, fn in cases:
        line = f"  {name:20s} python {min(timeit.repeat(lambda: fn(_pykernels), number=20, repeat=repeat)) / 20 * 1e6:10.1f} us"
        if _ckernels is not None:
            assert fn(_ckernels) == fn(_pykernels)
            t = min(timeit.repeat(lambda: fn(_ckernels), number=20, repeat=repeat)) / 20
            line += f"   cython {t * 1e6:10.1f} us"
        print(line)


def bench_sweep(amax):
    print(f"G identity and recursion sweep, a <= {amax}")
    for pure in ("1", "0"):
        env = dict(os.environ, QVL_PURE_PYTHON=pure)
        res = subprocess.run(
            [sys.executable, "-c", SWEEP.format(amax=amax)],
            env=env, capture_output=True, text=True, check=True,
        )
        backend, secs = res.stdout.split()
        print(f"  {backend:8s} {float(secs):8.3f} s")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--length", type=int, default=200)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--amax", type=int, default=6)
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled kernels not built; only the Python backend is timed")
    bench_kernels(args.length, args.repeat)
    bench_sweep(args.amax)


if __name__ == "__main__":
    main()
