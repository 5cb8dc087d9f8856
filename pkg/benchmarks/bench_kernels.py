"""Compare the compiled and pure-Python kernels.

Times ``matmul`` and ``rref`` directly on random inputs, then the full
key-exchange attack bench in a subprocess with ``MATBREAK_PURE_PYTHON=1``
(backend choice is fixed at import).

    python3 benchmarks/bench_kernels.py [--dims 4,8,12,16] [--reps 3]
"""

import argparse
import os
import statistics
import subprocess
import sys
import time

from matbreak import kernels
from matbreak.rng import Xoshiro256

P = 2147483647


def _time(fn, reps):
    out = []
    for _ in range(reps):
        t0 = time.perf_counter()
        fn()
        out.append(time.perf_counter() - t0)
    return statistics.median(out) * 1e3


def kernel_table(dims, reps):
    rng = Xoshiro256(1)
    rows = []
    for n in dims:
        a = rng.residues(n * n, P)
        b = rng.residues(n * n, P)
        size = n * n  # shape of the relinearized system
        aug = rng.residues(size * (size + 1), P)
        row = [n]
        for mod in (kernels.compiled, kernels.python):
            if mod is None:
                row += [float("nan"), float("nan")]
                continue
            row.append(_time(lambda: mod.matmul(a, b, n, P), reps))
            row.append(_time(lambda: mod.rref(aug, size, size + 1, P, size), reps))
        rows.append(row)
    return rows


def attack_bench(dims, pure):
    env = dict(os.environ)
    if pure:
        env["MATBREAK_PURE_PYTHON"] = "1"
    cmd = [sys.executable, "-m", "matbreak", "bench", "--dims", ",".join(map(str, dims)), "--trials", "1"]
    t0 = time.perf_counter()
    proc = subprocess.run(cmd, env=env, capture_output=True, text=True, check=True)
    wall = time.perf_counter() - t0
    med = {}
    for line in proc.stdout.splitlines():
        f = line.split(",")
        if len(f) == 7 and f[2] == "median":
            med[int(f[0])] = float(f[5])
    return med, wall, proc.stderr.strip()


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dims", default="4,8,12,16")
    ap.add_argument("--reps", type=int, default=3)
    args = ap.parse_args()
    dims = [int(d) for d in args.dims.split(",")]

    if kernels.compiled is None:
        print("compiled core not built; only the Python column is meaningful", file=sys.stderr)
    print("kernel timings, median ms (rref is on the n^2 x (n^2+1) system)")
    print(f"{'n':>3} {'matmul C':>10} {'rref C':>10} {'matmul py':>10} {'rref py':>10} {'rref speedup':>13}")
    for n, mc, rc, mp, rp in kernel_table(dims, args.reps):
        print(f"{n:>3} {mc:>10.3f} {rc:>10.3f} {mp:>10.3f} {rp:>10.3f} {rp / rc:>12.1f}x")

    print("\nfull attack bench (median total_ms per n, one trial)")
    fast, fast_wall, _ = attack_bench(dims, pure=False)
    slow, slow_wall, _ = attack_bench(dims, pure=True)
    print(f"{'n':>3} {'compiled':>10} {'python':>10} {'speedup':>8}")
    for n in dims:
        print(f"{n:>3} {fast[n]:>10.2f} {slow[n]:>10.2f} {slow[n] / fast[n]:>7.1f}x")
    print(f"wall: compiled {fast_wall:.1f} s, python {slow_wall:.1f} s")


if __name__ == "__main__":
    main()
