"""Energy functional for n identical particles bonded in a planar ring.

Adjacent particles interact through the bond potential U(t) = t - 2*sqrt(t)
and every pair interacts through W(t) = B/t**6 - A/t**3 + sigma/sqrt(t),
where t is the squared distance.  The module provides the energy, its
analytic gradient and Hessian, the radial profile phi of the energy on the
ring of dihedrally symmetric configurations, and the symmetric equilibrium.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, SolverError

_MIN_SEPARATION = 1e-12


@dataclasses.dataclass(frozen=True)
class PotentialParams:
    """Coefficients of the pair potential and the particle count."""

    n: int
    A: float = 0.0
    B: float = 0.0
    sigma: float = 0.0

    def __post_init__(self):
        if self.n < 3:
            raise DomainError(f"need at least 3 particles, got n={self.n}")
        if self.B < 0:
            raise DomainError(f"repulsion coefficient must be nonnegative, got B={self.B}")

    @property
    def pair_interaction(self) -> bool:
        """True when W is not identically zero."""
        return self.A != 0.0 or self.B != 0.0 or self.sigma != 0.0


class Configuration:
    """Positions of n pairwise distinct particles in the plane.

    Stored as a complex vector; ``real_view`` exposes the interleaved
    (x0, y0, x1, y1, ...) coordinates used by gradient and Hessian.
    """

    __slots__ = ("u",)

    def __init__(self, u):
        u = np.asarray(u, dtype=complex)
        if u.ndim != 1:
            raise DomainError("configuration must be a flat list of points")
        self.u = u

    @classmethod
    def from_real(cls, x) -> "Configuration":
        x = np.asarray(x, dtype=float)
        return cls(x[0::2] + 1j * x[1::2])

    @property
    def n(self) -> int:
        return self.u.shape[0]

    def real_view(self) -> np.ndarray:
        out = np.empty(2 * self.n)
        out[0::2] = self.u.real
        out[1::2] = self.u.imag
        return out

    def check_distinct(self):
        u = self.u
        n = self.n
        for j in range(n):
            for k in range(j + 1, n):
                if abs(u[j] - u[k]) < _MIN_SEPARATION:
                    raise DomainError(f"particles {j} and {k} coincide")

    def __repr__(self):
        return f"Configuration({self.u!r})"


@dataclasses.dataclass(frozen=True)
class Equilibrium:
    """Dihedrally symmetric critical configuration u0_k = r0 * gamma**k."""

    r0: float
    u0: Configuration
    a: float
    a_jk: np.ndarray
    phi_min: float


def _bond_derivs(t: float):
    """U'(t), U''(t) for the bond potential U(t) = t - 2*sqrt(t)."""
    s = math.sqrt(t)
    return 1.0 - 1.0 / s, 0.5 / (s * t)


def _pair_derivs(t: float, p: PotentialParams):
    """W'(t), W''(t) for W(t) = B/t^6 - A/t^3 + sigma/sqrt(t)."""
    w1 = -6.0 * p.B / t**7 + 3.0 * p.A / t**4 - 0.5 * p.sigma / t**1.5
    w2 = 42.0 * p.B / t**8 - 12.0 * p.A / t**5 + 0.75 * p.sigma / t**2.5
    return w1, w2


def _bond_value(t: float) -> float:
    return t - 2.0 * math.sqrt(t)


def _pair_value(t: float, p: PotentialParams) -> float:
    return p.B / t**6 - p.A / t**3 + p.sigma / math.sqrt(t)


def _interactions(p: PotentialParams):
    """Yield (j, k, has_bond) over all unordered pairs of a ring of n particles."""
    n = p.n
    for j in range(n):
        for k in range(j + 1, n):
            bonded = (k - j == 1) or (j == 0 and k == n - 1)
            yield j, k, bonded


def potential_energy(u: Configuration, p: PotentialParams) -> float:
    """Total energy: bond terms over ring edges plus pair terms over all pairs."""
    if u.n != p.n:
        raise DomainError(f"configuration has {u.n} points, params expect {p.n}")
    u.check_distinct()
    z = u.u
    total = 0.0
    for j, k, bonded in _interactions(p):
        t = abs(z[j] - z[k]) ** 2
        if bonded:
            total += _bond_value(t)
        if p.pair_interaction:
            total += _pair_value(t, p)
    return total


def gradient(u: Configuration, p: PotentialParams) -> np.ndarray:
    """Analytic gradient as 2n interleaved reals (x0, y0, x1, y1, ...)."""
    if u.n != p.n:
        raise DomainError(f"configuration has {u.n} points, params expect {p.n}")
    u.check_distinct()
    z = u.u
    g = np.zeros(p.n, dtype=complex)
    for j, k, bonded in _interactions(p):
        d = z[j] - z[k]
        t = abs(d) ** 2
        f1 = 0.0
        if bonded:
            f1 += _bond_derivs(t)[0]
        if p.pair_interaction:
            f1 += _pair_derivs(t, p)[0]
        g[j] += 2.0 * f1 * d
        g[k] -= 2.0 * f1 * d
    out = np.empty(2 * p.n)
    out[0::2] = g.real
    out[1::2] = g.imag
    return out


def hessian(u: Configuration, p: PotentialParams) -> np.ndarray:
    """Analytic Hessian, a symmetric 2n x 2n matrix in interleaved coordinates.

    Each pair contributes the 2x2 block 2*f'*I + 4*f''*d d^T on the diagonal
    entries of both particles and its negative on the cross blocks.
    """
    if u.n != p.n:
        raise DomainError(f"configuration has {u.n} points, params expect {p.n}")
    u.check_distinct()
    z = u.u
    H = np.zeros((2 * p.n, 2 * p.n))
    eye = np.eye(2)
    for j, k, bonded in _interactions(p):
        d = z[j] - z[k]
        t = abs(d) ** 2
        f1 = f2 = 0.0
        if bonded:
            b1, b2 = _bond_derivs(t)
            f1 += b1
            f2 += b2
        if p.pair_interaction:
            w1, w2 = _pair_derivs(t, p)
            f1 += w1
            f2 += w2
        dv = np.array([d.real, d.imag])
        blk = 2.0 * f1 * eye + 4.0 * f2 * np.outer(dv, dv)
        sj, sk = 2 * j, 2 * k
        H[sj : sj + 2, sj : sj + 2] += blk
        H[sk : sk + 2, sk : sk + 2] += blk
        H[sj : sj + 2, sk : sk + 2] -= blk
        H[sk : sk + 2, sj : sj + 2] -= blk
    return H


def ring_gaps(n: int) -> np.ndarray:
    """Matrix a_jk = 4*sin((k-j)*pi/n)**2 of squared chord lengths on the unit ring."""
    idx = np.arange(n)
    diff = idx[None, :] - idx[:, None]
    return 4.0 * np.sin(diff * math.pi / n) ** 2


def phi(t: float, p: PotentialParams) -> float:
    """Energy of the symmetric ring of radius t: n*U(a t^2) + sum of W(a_jk t^2)."""
    if t <= 0:
        raise DomainError(f"ring radius must be positive, got {t}")
    n = p.n
    a = 4.0 * math.sin(math.pi / n) ** 2
    total = n * _bond_value(a * t * t)
    if p.pair_interaction:
        for s in range(1, n):
            # n - s unordered pairs have index separation s
            a_s = 4.0 * math.sin(s * math.pi / n) ** 2
            total += (n - s) * _pair_value(a_s * t * t, p)
    return total


def phi_prime(t: float, p: PotentialParams) -> float:
    """Analytic derivative of phi with respect to the ring radius."""
    if t <= 0:
        raise DomainError(f"ring radius must be positive, got {t}")
    n = p.n
    a = 4.0 * math.sin(math.pi / n) ** 2
    total = n * _bond_derivs(a * t * t)[0] * 2.0 * a * t
    if p.pair_interaction:
        for s in range(1, n):
            a_s = 4.0 * math.sin(s * math.pi / n) ** 2
            total += (n - s) * _pair_derivs(a_s * t * t, p)[0] * 2.0 * a_s * t
    return total


def symmetric_configuration(r: float, n: int) -> Configuration:
    """The ring configuration u_k = r * exp(2*pi*i*k/n)."""
    gamma = np.exp(2j * math.pi * np.arange(n) / n)
    return Configuration(r * gamma)


def find_equilibrium(p: PotentialParams, bracket=None) -> Equilibrium:
    """Minimize phi over the ring radius and return the symmetric equilibrium.

    Without pair interaction the minimizer is 1/(2*sin(pi/n)) in closed form.
    Otherwise the root of phi' is bracketed by scanning and polished with
    Brent's method to machine precision.
    """
    n = p.n
    if not p.pair_interaction:
        r0 = 1.0 / (2.0 * math.sin(math.pi / n))
    else:
        if p.B == 0:
            raise DomainError("need B > 0 (or no pair interaction) for a guaranteed minimizer")
        lo, hi = bracket if bracket is not None else (1e-3, 10.0 * n)
        grid = np.geomspace(lo, hi, 400)
        vals = [phi_prime(t, p) for t in grid]
        root_bracket = None
        for i in range(len(grid) - 1):
            if vals[i] < 0 <= vals[i + 1]:
                root_bracket = (grid[i], grid[i + 1])
                break
        if root_bracket is None:
            raise SolverError(
                "no sign change of phi' found in bracket",
                diagnostics={"bracket": (lo, hi), "phi_prime_lo": vals[0], "phi_prime_hi": vals[-1]},
            )
        r0 = brentq(lambda t: phi_prime(t, p), *root_bracket, xtol=1e-14, rtol=8.9e-16)
    if abs(phi_prime(r0, p)) > 1e-10 * max(1.0, abs(r0)):
        raise SolverError(
            "phi' residual too large at computed radius",
            diagnostics={"r0": r0, "phi_prime": phi_prime(r0, p)},
        )
    return Equilibrium(
        r0=r0,
        u0=symmetric_configuration(r0, n),
        a=4.0 * math.sin(math.pi / n) ** 2,
        a_jk=ring_gaps(n),
        phi_min=phi(r0, p),
    )
