#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Micro-benchmarks call both kernel modules directly; the optional
end-to-end mode times a small fuzz campaign in a subprocess per backend
(selection happens at import, so separate interpreters are required).

Run:  python benchmarks/bench_backends.py [--end-to-end]
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from qmonogamy import _kernels_py

try:
    from qmonogamy import _kernels_cy
except ImportError:
    _kernels_cy = None


def random_hermitian_batch(n, count, seed):
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((count, n, n)) + 1j * rng.standard_normal((count, n, n))
    return (g + np.conj(np.transpose(g, (0, 2, 1)))) / 2


def random_branch_batch(m, count, seed):
    rng = np.random.default_rng(seed)
    dim = 1 << m
    z = rng.standard_normal((count, 2, dim)) + 1j * rng.standard_normal((count, 2, dim))
    return z / np.linalg.norm(z, axis=2, keepdims=True)


def time_kernel(fn, args_list, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        for args in args_list:
            fn(*args)
        best = min(best, time.perf_counter() - start)
    return best / len(args_list)


def bench_jacobi(modules, count):
    print(f"\ncyclic Jacobi eigensolver ({count} matrices per size)")
    print(f"{'size':>6} " + "".join(f"{m.BACKEND:>14}" for m in modules) + f"{'speedup':>10}")
    for n in (2, 4, 8, 16):
        batch = [(h,) for h in random_hermitian_batch(n, count, seed=n)]
        per = [time_kernel(m.jacobi_eigh, batch) for m in modules]
        row = f"{n:>4}x{n:<2}" + "".join(f"{t * 1e6:>11.1f} us" for t in per)
        if len(per) == 2:
            row += f"{per[0] / per[1]:>9.1f}x"
        print(row)


def bench_discriminant(modules, count):
    print(f"\nper-qubit discriminant kernel ({count} branch pairs per size)")
    print(f"{'qubits':>6} " + "".join(f"{m.BACKEND:>14}" for m in modules) + f"{'speedup':>10}")
    for m_qubits in (2, 3, 5, 7):
        batch = [(pair[0], pair[1]) for pair in random_branch_batch(m_qubits, count, seed=m_qubits)]
        per = [time_kernel(mod.discriminant_per_qubit, batch) for mod in modules]
        row = f"{m_qubits:>6}" + "".join(f"{t * 1e6:>11.1f} us" for t in per)
        if len(per) == 2:
            row += f"{per[0] / per[1]:>9.1f}x"
        print(row)


def bench_end_to_end(samples):
    print(f"\nend-to-end fuzz campaign (n_qubits=4, {samples} samples, fresh interpreter)")
    code = (
        "import time, qmonogamy as qm\n"
        "from qmonogamy import harness\n"
        "cfg = harness.RunConfig(command='fuzz', n_qubits=4, samples=%d, seed=1)\n"
        "s = harness.fuzz_campaign(cfg)\n"
        "assert s.total_violations == 0\n"
        "print(f'{qm.backend_name()}: {s.wall_time_s:.2f}s "
        "({%d / s.wall_time_s:.0f} states/s)')\n" % (samples, samples)
    )
    for backend in ("python", "cython"):
        env = dict(os.environ, QMONOGAMY_BACKEND=backend)
        proc = subprocess.run(
            [sys.executable, "-c", code], env=env, capture_output=True, text=True
        )
        if proc.returncode:
            print(f"{backend}: unavailable ({proc.stderr.strip().splitlines()[-1]})")
        else:
            print(proc.stdout.strip())


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=300, help="matrices per micro-bench")
    parser.add_argument("--samples", type=int, default=500, help="fuzz samples for --end-to-end")
    parser.add_argument("--end-to-end", action="store_true")
    args = parser.parse_args()

    modules = [_kernels_py] + ([_kernels_cy] if _kernels_cy else [])
    if _kernels_cy is None:
        print("compiled extension not built; benchmarking the fallback only")
    bench_jacobi(modules, args.count)
    bench_discriminant(modules, args.count)
    if args.end_to_end:
        bench_end_to_end(args.samples)


if __name__ == "__main__":
    main()
