"""Integration kernels: numba-compiled when available, pure numpy otherwise.

Both backends integrate u'' = -lambda^2 grad V(u) with velocity Verlet on
interleaved real coordinates and record every `stride`-th step.  Selection:
numba is used when importable unless EQUIVIBE_NUMBA=0.
"""

from __future__ import annotations

import math
import os

import numpy as np

_WANT_NUMBA = os.environ.get("EQUIVIBE_NUMBA", "1") != "0"
if _WANT_NUMBA:
    try:
        from numba import njit

        HAS_NUMBA = True
    except ImportError:
        HAS_NUMBA = False
else:
    HAS_NUMBA = False


def _force_numpy(x, n, A, B, sigma, out):
    """Force -grad V at interleaved positions x, written into out."""
    u = x[0::2] + 1j * x[1::2]
    d = u[:, None] - u[None, :]
    t = (d * d.conjugate()).real
    np.fill_diagonal(t, 1.0)
    f1 = np.zeros_like(t)
    # bond derivative on ring edges
    idx = np.arange(n)
    for shift in (1, n - 1):
        j, k = idx, (idx + shift) % n
        f1[j, k] += 1.0 - 1.0 / np.sqrt(t[j, k])
    if A != 0.0 or B != 0.0 or sigma != 0.0:
        f1 += -6.0 * B / t**7 + 3.0 * A / t**4 - 0.5 * sigma / t**1.5
        np.fill_diagonal(f1, 0.0)
    g = 2.0 * (f1 * d).sum(axis=1)
    out[0::2] = -g.real
    out[1::2] = -g.imag
    return out


def _energy_numpy(x, v, lam, n, A, B, sigma):
    u = x[0::2] + 1j * x[1::2]
    d = u[:, None] - u[None, :]
    t = (d * d.conjugate()).real
    total = 0.0
    for j in range(n):
        tb = t[j, (j + 1) % n]
        total += tb - 2.0 * math.sqrt(tb)
        for k in range(j + 1, n):
            if A != 0.0 or B != 0.0 or sigma != 0.0:
                tt = t[j, k]
                total += B / tt**6 - A / tt**3 + sigma / math.sqrt(tt)
    return 0.5 * float(v @ v) + lam * lam * total


def integrate_numpy(x0, v0, lam, dt, steps, stride, n, A, B, sigma, min_dist):
    m = steps // stride + 1
    xs = np.empty((m, x0.size))
    vs = np.empty((m, x0.size))
    xs[0], vs[0] = x0, v0
    x, v = x0.copy(), v0.copy()
    acc = np.empty_like(x0)
    _force_numpy(x, n, A, B, sigma, acc)
    acc *= lam * lam
    rec = 1
    for step in range(1, steps + 1):
        v += 0.5 * dt * acc
        x += dt * v
        _force_numpy(x, n, A, B, sigma, acc)
        acc *= lam * lam
        v += 0.5 * dt * acc
        if step % stride == 0:
            u = x[0::2] + 1j * x[1::2]
            dmin = min(
                abs(u[j] - u[k]) for j in range(n) for k in range(j + 1, n)
            )
            if dmin < min_dist:
                return xs[:rec], vs[:rec], True
            xs[rec], vs[rec] = x, v
            rec += 1
    return xs, vs, False


if HAS_NUMBA:

    @njit(cache=True)
    def _force_nb(x, n, A, B, sigma, out):
        for i in range(2 * n):
            out[i] = 0.0
        for j in range(n):
            xj = x[2 * j]
            yj = x[2 * j + 1]
            for k in range(j + 1, n):
                dx = xj - x[2 * k]
                dy = yj - x[2 * k + 1]
                t = dx * dx + dy * dy
                f1 = 0.0
                if k - j == 1 or k - j == n - 1:
                    f1 += 1.0 - 1.0 / math.sqrt(t)
                if A != 0.0 or B != 0.0 or sigma != 0.0:
                    f1 += -6.0 * B / t**7 + 3.0 * A / t**4 - 0.5 * sigma / t**1.5
                fx = 2.0 * f1 * dx
                fy = 2.0 * f1 * dy
                out[2 * j] -= fx
                out[2 * j + 1] -= fy
                out[2 * k] += fx
                out[2 * k + 1] += fy
        return out

    @njit(cache=True)
    def integrate_nb(x0, v0, lam, dt, steps, stride, n, A, B, sigma, min_dist):
        m = steps // stride + 1
        dim = x0.size
        xs = np.empty((m, dim))
        vs = np.empty((m, dim))
        for i in range(dim):
            xs[0, i] = x0[i]
            vs[0, i] = v0[i]
        x = x0.copy()
        v = v0.copy()
        acc = np.empty(dim)
        _force_nb(x, n, A, B, sigma, acc)
        for i in range(dim):
            acc[i] *= lam * lam
        rec = 1
        lam2 = lam * lam
        for step in range(1, steps + 1):
            for i in range(dim):
                v[i] += 0.5 * dt * acc[i]
                x[i] += dt * v[i]
            _force_nb(x, n, A, B, sigma, acc)
            for i in range(dim):
                acc[i] *= lam2
                v[i] += 0.5 * dt * acc[i]
            if step % stride == 0:
                dmin = 1e300
                for j in range(n):
                    for k in range(j + 1, n):
                        dx = x[2 * j] - x[2 * k]
                        dy = x[2 * j + 1] - x[2 * k + 1]
                        dd = math.sqrt(dx * dx + dy * dy)
                        if dd < dmin:
                            dmin = dd
                if dmin < min_dist:
                    return xs[:rec], vs[:rec], True
                for i in range(dim):
                    xs[rec, i] = x[i]
                    vs[rec, i] = v[i]
                rec += 1
        return xs, vs, False


def integrate_kernel(x0, v0, lam, dt, steps, stride, n, A, B, sigma, min_dist):
    if HAS_NUMBA:
        return integrate_nb(
            x0, v0, float(lam), float(dt), steps, stride, n, A, B, sigma, min_dist
        )
    return integrate_numpy(x0, v0, lam, dt, steps, stride, n, A, B, sigma, min_dist)
