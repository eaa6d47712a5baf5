"""Benchmark the lattice-scan kernels: numba JIT against the pure-numpy
fallback (selected with LCPLAB_DISABLE_NUMBA=1).

Run:  python3 benchmarks/bench_scan.py [grid_points]

The scan evaluates a matrix exponential and a characteristic polynomial
per grid point; it is the only hot numeric loop in the package, so this
is where JIT compilation pays.
"""

import os
import subprocess
import sys
import time

WORKLOAD = r"""
import time
import numpy as np
from lcplab import kernels

n_points = %d
c = np.array(
    [
        [1.0, 0, 0, 0, 0],
        [0, -0.25, -1.0, 0, 0],
        [0, 1.0, -0.25, 0, 0],
        [0, 0, 0, -0.5, 0],
        [0, 0, 0, 0, 0.0],
    ]
)
ts = np.linspace(1e-3, 6.0, n_points)
kernels.scan_defects(c, ts[:2])  # warm-up / JIT compile
t0 = time.perf_counter()
d = kernels.scan_defects(c, ts)
dt = time.perf_counter() - t0
print("%%s,%%.6f,%%.3e" %% ("numba" if kernels.HAS_NUMBA else "numpy", dt, d.min()))
"""


def run(disable_numba: bool, n_points: int) -> str:
    env = dict(os.environ)
    if disable_numba:
        env["LCPLAB_DISABLE_NUMBA"] = "1"
    else:
        env.pop("LCPLAB_DISABLE_NUMBA", None)
    out = subprocess.run(
        [sys.executable, "-c", WORKLOAD % n_points],
        capture_output=True,
        text=True,
        env=env,
    )
    if out.returncode != 0:
        raise RuntimeError(out.stderr)
    return out.stdout.strip()


def main():
    n_points = int(sys.argv[1]) if len(sys.argv) > 1 else 20000
    print(f"scan of {n_points} grid points on a 5x5 trace-free matrix")
    print(f"{'path':<8} {'seconds':>10} {'points/s':>12}  min defect")
    rows = []
    for disable in (False, True):
        label, secs, mindef = run(disable, n_points).split(",")
        rows.append((label, float(secs), mindef))
        print(f"{label:<8} {float(secs):>10.4f} {n_points/float(secs):>12.0f}  {mindef}")
    if len(rows) == 2 and rows[0][0] == "numba":
        print(f"speedup: {rows[1][1] / rows[0][1]:.1f}x")


if __name__ == "__main__":
    main()
