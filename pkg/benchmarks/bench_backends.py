#!/usr/bin/env python3
"""Benchmark the compiled kernel against the numpy fallback.

Times the batched conditional-MI kernel on workloads shaped like the hot
grid searches, plus one end-to-end rate-splitting optimization per backend
(the end-to-end runs happen in subprocesses so each backend is selected at
import).  Usage: python benchmarks/bench_backends.py [--quick]
"""

import argparse
import os
import subprocess
import sys
import time
import timeit

import numpy as np

from gifrc import _mi_py

try:
    from gifrc import _mi_core
except ImportError:
    _mi_core = None

END_TO_END = r"""
import time
from gifrc import backend
from gifrc.channel import SymmetricChannel, db_to_linear
from gifrc.schemes import optimize_cf
ch = SymmetricChannel(1.0, 1.0, 1.0, 1.0, db_to_linear(1), db_to_linear(1)).expand()
t0 = time.perf_counter()
res = optimize_cf(ch, "split")
print(f"{backend.backend_name()}: optimize_cf(split) {time.perf_counter()-t0:.2f}s "
      f"sum={res.value:.6f}")
"""


def kernel_workloads(rng, quick):
    n = 20_000 if quick else 200_000
    # channel-like layout: 9 sources, queries of growing size
    coef = rng.standard_normal((1, 6, 9))
    var = rng.uniform(0.1, 3.0, (n, 9))
    yield "6x6 blocks, variance batch", (coef, var, 2, 2, 2)
    coef = rng.standard_normal((1, 4, 9))
    yield "4x4 blocks, variance batch", (coef, var, 1, 1, 2)
    m = n // 10
    coef_b = rng.standard_normal((m, 5, 9))
    var_b = rng.uniform(0.1, 3.0, (m, 9))
    yield "5x5 blocks, coefficient batch", (coef_b, var_b, 1, 2, 2)


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true", help="smaller batches")
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    print(f"{'workload':<34} {'numpy':>10} {'cython':>10} {'speedup':>8}")
    for name, wl in kernel_workloads(rng, args.quick):
        n_evals = max(wl[0].shape[0], wl[1].shape[0])
        t_py = timeit.timeit(lambda: _mi_py.mi_bits_batch(*wl), number=3) / 3
        if _mi_core is not None:
            t_cy = timeit.timeit(lambda: _mi_core.mi_bits_batch(*wl), number=3) / 3
            ref = _mi_py.mi_bits_batch(*wl)
            got = _mi_core.mi_bits_batch(*wl)
            np.testing.assert_allclose(got, ref, atol=1e-9)
            print(f"{name:<34} {1e9*t_py/n_evals:>7.0f} ns {1e9*t_cy/n_evals:>7.0f} ns "
                  f"{t_py/t_cy:>7.1f}x")
        else:
            print(f"{name:<34} {1e9*t_py/n_evals:>7.0f} ns {'n/a':>10}")

    print("\nend-to-end (subprocess per backend):", flush=True)
    for backend_choice in ("python", "cython"):
        if backend_choice == "cython" and _mi_core is None:
            print("cython: extension not built")
            continue
        env = dict(os.environ, GIFRC_BACKEND=backend_choice)
        subprocess.run([sys.executable, "-c", END_TO_END], env=env, check=True)
    return 0


if __name__ == "__main__":
    sys.exit(main())
