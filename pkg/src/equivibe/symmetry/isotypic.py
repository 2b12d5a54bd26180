"""Isotypical decomposition of the slice at the symmetric ring equilibrium.

The slice is the orthogonal complement, inside R^{2n}, of the two
translation directions and the rotation tangent of the symmetric ring.
Its components are built from the Fourier vectors w_m = (gamma^{m k})_k:

* component 0: the radial direction, the real span of w_1;
* component 1: the complex span of w_2 (2 real dimensions);
* component j (1 < j < n/2): complex span of w_{1-j} and w_{1+j} (4 dims);
* component n/2 (even n): complex span of w_{1-n/2} (2 dims).
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from ..errors import DomainError


def fourier_vector(n: int, m: int) -> np.ndarray:
    """Complex vector w_m with entries gamma^{m k}, gamma = exp(2 pi i / n)."""
    k = np.arange(n)
    return np.exp(2j * math.pi * m * k / n)


def _realify(vec: np.ndarray) -> np.ndarray:
    """Embed a complex n-vector into R^{2n} with interleaved coordinates."""
    out = np.empty(2 * vec.shape[0])
    out[0::2] = vec.real
    out[1::2] = vec.imag
    return out


@dataclasses.dataclass(frozen=True)
class IsotypicalComponent:
    """One isotypical component of the slice."""

    index: int
    dimension: int
    basis: np.ndarray  # rows are orthonormal vectors in R^{2n}
    fourier_modes: tuple  # Fourier indices m spanning the component

    def projector(self) -> np.ndarray:
        return self.basis.T @ self.basis


def _orthonormal_rows(vectors) -> np.ndarray:
    m = np.array(vectors)
    q, _ = np.linalg.qr(m.T)
    return q.T[: m.shape[0]]


def isotypical_basis(n: int):
    """Orthonormal bases of the slice components, ordered by component index."""
    if n < 3:
        raise DomainError(f"need n >= 3, got {n}")
    comps = []
    w1 = fourier_vector(n, 1)
    # component 0: radial direction (the imaginary multiple is the rotation tangent)
    comps.append(
        IsotypicalComponent(0, 1, _orthonormal_rows([_realify(w1)]), (1,))
    )
    w2 = fourier_vector(n, 2)
    comps.append(
        IsotypicalComponent(
            1, 2, _orthonormal_rows([_realify(w2), _realify(1j * w2)]), (2,)
        )
    )
    r = n // 2
    for j in range(2, (n - 1) // 2 + 1):
        wa = fourier_vector(n, 1 - j)
        wb = fourier_vector(n, 1 + j)
        comps.append(
            IsotypicalComponent(
                j,
                4,
                _orthonormal_rows(
                    [_realify(wa), _realify(1j * wa), _realify(wb), _realify(1j * wb)]
                ),
                ((1 - j) % n, (1 + j) % n),
            )
        )
    if n % 2 == 0:
        wr = fourier_vector(n, 1 - r)
        comps.append(
            IsotypicalComponent(
                r, 2, _orthonormal_rows([_realify(wr), _realify(1j * wr)]), ((1 - r) % n,)
            )
        )
    return comps
