"""Exact group elements of D_n x O(2) and their action on configurations.

Dihedral elements are pairs (rotation index mod n, reflection flag).
O(2) elements are pairs (angle as an exact fraction of a full turn,
reflection flag); both factors share the same composition law.
"""

from __future__ import annotations

import dataclasses
import math
from fractions import Fraction

import numpy as np

from ..model import Configuration


@dataclasses.dataclass(frozen=True, order=True)
class DihedralElement:
    """Element of D_n: rotation by 2*pi*r/n, composed with a reflection if s=1."""

    n: int
    r: int
    s: int

    def __post_init__(self):
        object.__setattr__(self, "r", self.r % self.n)
        object.__setattr__(self, "s", self.s % 2)

    def __mul__(self, other: "DihedralElement") -> "DihedralElement":
        if self.n != other.n:
            raise ValueError("mixed dihedral orders")
        r = self.r + (other.r if self.s == 0 else -other.r)
        return DihedralElement(self.n, r, self.s ^ other.s)

    def inverse(self) -> "DihedralElement":
        if self.s == 0:
            return DihedralElement(self.n, -self.r, 0)
        return DihedralElement(self.n, self.r, 1)

    @property
    def is_identity(self) -> bool:
        return self.r == 0 and self.s == 0

    def permutation(self) -> np.ndarray:
        """Index permutation sigma with (g u)_k = u_{sigma(k)} on ring labels."""
        k = np.arange(self.n)
        if self.s == 0:
            return (k - self.r) % self.n
        return (self.r - k) % self.n

    def plane_matrix_angle(self) -> Fraction:
        """Turn fraction of the planar rotation/reflection this element maps to."""
        return Fraction(self.r, self.n)


@dataclasses.dataclass(frozen=True, order=True)
class O2Element:
    """Element of O(2): z -> e^{2 pi i q} z (s=0) or z -> e^{2 pi i q} conj(z) (s=1)."""

    q: Fraction
    s: int

    def __post_init__(self):
        object.__setattr__(self, "q", self.q % 1)
        object.__setattr__(self, "s", self.s % 2)

    def __mul__(self, other: "O2Element") -> "O2Element":
        q = self.q + (other.q if self.s == 0 else -other.q)
        return O2Element(q, self.s ^ other.s)

    def inverse(self) -> "O2Element":
        if self.s == 0:
            return O2Element(-self.q, 0)
        return O2Element(self.q, 1)

    @property
    def is_identity(self) -> bool:
        return self.q == 0 and self.s == 0

    def apply(self, z: complex) -> complex:
        w = complex(z).conjugate() if self.s else complex(z)
        return np.exp(2j * math.pi * float(self.q)) * w


@dataclasses.dataclass(frozen=True, order=True)
class GroupElement:
    """Element of D_n x O(2)."""

    dihedral: DihedralElement
    planar: O2Element

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.dihedral * other.dihedral, self.planar * other.planar)

    def inverse(self) -> "GroupElement":
        return GroupElement(self.dihedral.inverse(), self.planar.inverse())

    @property
    def is_identity(self) -> bool:
        return self.dihedral.is_identity and self.planar.is_identity


def identity(n: int) -> GroupElement:
    return GroupElement(DihedralElement(n, 0, 0), O2Element(Fraction(0), 0))


def diagonal_embedding(d: DihedralElement) -> GroupElement:
    """The amalgamated copy of D_n: pair each dihedral element with the
    planar rotation/reflection it represents, so the symmetric ring is fixed."""
    return GroupElement(d, O2Element(d.plane_matrix_angle(), d.s))


def act(g: GroupElement, u: Configuration) -> Configuration:
    """Permute ring labels by the dihedral part and rotate/reflect values
    by the planar part: (sigma, A) u = (A u_{sigma(0)}, ..., A u_{sigma(n-1)})."""
    z = u.u
    perm = g.dihedral.permutation()
    w = z[perm]
    if g.planar.s:
        w = np.conj(w)
    return Configuration(np.exp(2j * math.pi * float(g.planar.q)) * w)


def dihedral_group(n: int):
    """All 2n elements of D_n."""
    return [DihedralElement(n, r, s) for s in (0, 1) for r in range(n)]
