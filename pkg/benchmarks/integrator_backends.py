"""Benchmark the two integration backends (numba kernel vs pure numpy).

The backend is chosen at import time from EQUIVIBE_NUMBA, so each timing
runs in a subprocess with the flag set accordingly.

Usage: python benchmarks/integrator_backends.py [--n 6] [--steps 20000] [--repeat 3]
"""

import argparse
import json
import os
import subprocess
import sys

_WORKER = r"""
import json, sys, time
import numpy as np
from equivibe import PotentialParams, find_equilibrium, integrate
from equivibe._kernels import HAS_NUMBA

n, steps, repeat = json.loads(sys.argv[1])
p = PotentialParams(n=n, A=0.2, B=350.0, sigma=0.25)
eq = find_equilibrium(p)
rng = np.random.default_rng(0)
u0 = eq.u0.u + 0.01 * eq.r0 * (rng.standard_normal(n) + 1j * rng.standard_normal(n))
v0 = np.zeros(n, dtype=complex)
dt = 2 * np.pi / 2000
T = steps * dt

# warm-up (jit compilation for the numba backend)
integrate(u0, v0, 0.2, 10 * dt, dt, p)

best = float("inf")
for _ in range(repeat):
    t0 = time.perf_counter()
    traj = integrate(u0, v0, 0.2, T, dt, p)
    best = min(best, time.perf_counter() - t0)
print(json.dumps({
    "backend": "numba" if HAS_NUMBA else "numpy",
    "seconds": best,
    "steps": steps,
    "energy_drift": traj.energy_drift(),
}))
"""


def run(flag, n, steps, repeat):
    env = dict(os.environ, EQUIVIBE_NUMBA=flag)
    out = subprocess.run(
        [sys.executable, "-c", _WORKER, json.dumps([n, steps, repeat])],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    return json.loads(out.stdout.strip().splitlines()[-1])


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=6)
    ap.add_argument("--steps", type=int, default=20000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    results = [run(flag, args.n, args.steps, args.repeat) for flag in ("1", "0")]
    print(f"{'backend':<8} {'steps':>8} {'seconds':>10} {'steps/s':>12} {'energy drift':>14}")
    for r in results:
        rate = r["steps"] / r["seconds"]
        print(
            f"{r['backend']:<8} {r['steps']:>8} {r['seconds']:>10.3f}"
            f" {rate:>12.0f} {r['energy_drift']:>14.2e}"
        )
    if results[0]["backend"] == "numba":
        print(f"speedup: {results[1]['seconds'] / results[0]['seconds']:.1f}x")


if __name__ == "__main__":
    main()
