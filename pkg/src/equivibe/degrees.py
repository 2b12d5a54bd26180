"""Equivariant degree invariants for the symmetric ring.

Basic degrees of D_n-irreducibles live in the Burnside ring A(D_n) and are
lifted to A(D_n x O(2)) through (H) -> (H x O(2)).  Twisted basic degrees of
the folded representations W_{j,l} = V_j (x) U_l are computed directly in
A(D_n x O(2)).  Both use the same recurrence through the orbit-type lattice:

    n_L |W(L)| = (-1)^{dim V^L} - sum_{L < K} n(L,K) n_K |W(K)|

with exact integer divisions.  Orbit types of W_{j,l} are found by solving
the fixed-point conditions exactly: in coordinates (z1, z2) diagonalizing
the D_n-rotation, an element (gamma^p kappa^e, (q, s)) fixes a point iff
l*q is congruent mod 1 to a rational determined by the phases, so each
consistent cell contributes exactly l group elements.

The bifurcation invariant omega at a critical value multiplies the twisted
degrees of all previously crossed folded labels with the degree jump at the
crossing itself.
"""

from __future__ import annotations

import dataclasses
import functools
import math
from fractions import Fraction

from .burnside import BurnsideElement
from .errors import ConsistencyError, DomainError, SolverError
from .spectrum import CriticalValue, SpectralReport
from .symmetry.classes import SubgroupClass, classify, full_class, n_pairs, subconjugate
from .symmetry.group import DihedralElement, GroupElement, O2Element
from .symmetry.subgroups import (
    Subgroup,
    dn_conjugate,
    dn_conjugacy_reps,
    dn_normalizer,
)

_CONDITION_C_TOL = 1e-8


@dataclasses.dataclass(frozen=True)
class IrreducibleLabel:
    """A real irreducible of D_n (plain) or of D_n x O(2) (folded, l >= 1).

    Plain labels: j = 0 is the trivial representation ("" tag) or the
    reflection sign character ("sign"); 1 <= j < n/2 the planar rotation
    representation E_j; j = n/2 one of the two characters with gamma -> -1,
    tagged "re" (kappa -> +1) or "im" (kappa -> -1).  Folded labels tensor
    the plain representation with the l-th O(2) representation; for
    j = n/2 the tag defaults to "im".
    """

    kind: str  # "plain" | "folded"
    j: int
    l: int = 0
    tag: str = ""

    def __post_init__(self):
        if self.kind not in ("plain", "folded"):
            raise DomainError(f"unknown label kind {self.kind!r}")
        if self.kind == "folded" and self.l < 1:
            raise DomainError("folded labels need a mode index l >= 1")
        if self.kind == "plain" and self.l != 0:
            raise DomainError("plain labels carry no mode index")

    @staticmethod
    def plain(j: int, tag: str = "") -> "IrreducibleLabel":
        return IrreducibleLabel("plain", j, 0, tag)

    @staticmethod
    def folded(j: int, l: int, tag: str = "") -> "IrreducibleLabel":
        return IrreducibleLabel("folded", j, l, tag)


def _check_j(n: int, j: int):
    if not 0 <= j <= n // 2:
        raise DomainError(f"irreducible index {j} out of range for n={n}")


def _half_character(p: int, e: int, tag: str) -> int:
    """Character value of the half-index one-dimensional representation."""
    return (-1) ** p if tag == "re" else (-1) ** (p + e)


# ---------------------------------------------------------------------------
# plain basic degrees, computed in A(D_n) and lifted

def _plain_trace(n: int, j: int, tag: str, d: DihedralElement) -> float:
    if j == 0:
        if tag == "sign":
            return -1.0 if d.s else 1.0
        return 1.0
    if n % 2 == 0 and j == n // 2:
        return float(_half_character(d.r, d.s, tag or "im"))
    if d.s:
        return 0.0
    return 2.0 * math.cos(2.0 * math.pi * j * d.r / n)


def _dn_fixdim(n: int, j: int, tag: str, H: frozenset) -> int:
    total = sum(_plain_trace(n, j, tag, d) for d in H)
    dim = total / len(H)
    if abs(dim - round(dim)) > 1e-9:
        raise ConsistencyError("non-integral fixed-space dimension")
    return round(dim)


@functools.lru_cache(maxsize=None)
def _dn_class_data(n: int):
    """(representative, conjugate orbit, weyl order) per D_n subgroup class."""
    rotations = [DihedralElement(n, p, 0) for p in range(n)]
    reflections = [DihedralElement(n, p, 1) for p in range(n)]
    everything = rotations + reflections
    out = []
    for H in dn_conjugacy_reps(n):
        conjugates = {dn_conjugate(H, a) for a in everything}
        weyl = len(dn_normalizer(H, n)) // len(H)
        out.append((H, frozenset(conjugates), weyl))
    out.sort(key=lambda item: -len(item[0]))
    return tuple(out)


@functools.lru_cache(maxsize=None)
def _plain_degree_coeffs(n: int, j: int, tag: str):
    """Coefficients of deg(-Id on the plain irreducible) in A(D_n)."""
    data = _dn_class_data(n)
    coeffs = []  # parallel to data
    for idx, (L, _orbitL, weylL) in enumerate(data):
        total = (-1) ** _dn_fixdim(n, j, tag, L)
        for kdx in range(idx):
            K, orbitK, weylK = data[kdx]
            nK = coeffs[kdx]
            if nK == 0:
                continue
            pairs = sum(1 for C in orbitK if L <= C)
            total -= pairs * nK * weylK
        if total % weylL:
            raise ConsistencyError("non-integral coefficient in plain degree")
        coeffs.append(total // weylL)
    return tuple((data[i][0], c) for i, c in enumerate(coeffs) if c != 0)


def basic_degree(label: IrreducibleLabel, n: int) -> BurnsideElement:
    """Degree of -Id on the unit ball of a plain D_n irreducible, lifted to
    the Burnside ring of D_n x O(2) through (H) -> (H x O(2))."""
    if label.kind != "plain":
        raise DomainError("basic_degree expects a plain label")
    _check_j(n, label.j)
    out = {}
    for H, c in _plain_degree_coeffs(n, label.j, label.tag):
        cls = classify(Subgroup.product_o2(n, H))
        out[cls] = out.get(cls, 0) + c
    return BurnsideElement(n, out)


# ---------------------------------------------------------------------------
# twisted basic degrees

def _cell_constraints(n, j, l, p, e, s, m1, t1, m2, t2):
    """Values that l*q must take (mod 1) for (gamma^p kappa^e, (q,s)) to fix
    the point (m1 e^{2 pi i t1}, m2 e^{2 pi i t2}); None if inconsistent."""
    c = Fraction(j * p, n)
    cons = []
    if e == 0 and s == 0:
        if m1:
            cons.append(-c)
        if m2:
            cons.append(c)
    elif e == 0 and s == 1:
        if m1 != m2:
            return None
        cons = [t1 + t2 - c, t1 + t2 + c]
    elif e == 1 and s == 0:
        if m1 != m2:
            return None
        cons = [t1 - t2 - c, t2 - t1 + c]
    else:
        if m1:
            cons.append(2 * t1 - c)
        if m2:
            cons.append(2 * t2 + c)
    values = {a % 1 for a in cons}
    if len(values) != 1:
        return None
    return values.pop()


def _isotropy_pair(n, j, l, m1, t1, m2, t2) -> frozenset:
    """Isotropy subgroup elements at a point of the four-dimensional W_{j,l}."""
    elems = []
    for p in range(n):
        for e in (0, 1):
            for s in (0, 1):
                A = _cell_constraints(n, j, l, p, e, s, m1, t1, m2, t2)
                if A is None:
                    continue
                for t in range(l):
                    q = (A + t) / l
                    elems.append(
                        GroupElement(DihedralElement(n, p, e), O2Element(q, s))
                    )
    return frozenset(elems)


def _isotropy_character(n, chi, l, theta) -> frozenset:
    """Isotropy at e^{2 pi i theta} in (one-dimensional character) (x) U_l."""
    elems = []
    for p in range(n):
        for e in (0, 1):
            shift = Fraction(1, 2) if chi(p, e) < 0 else Fraction(0)
            for s, A in ((0, -shift), (1, 2 * theta - shift)):
                for t in range(l):
                    q = (A + t) / l
                    elems.append(
                        GroupElement(DihedralElement(n, p, e), O2Element(q, s))
                    )
    return frozenset(elems)


def _twisted_trace(n, j, l, tag, g: GroupElement) -> float:
    d, x = g.dihedral, g.planar
    if x.s == 1:
        return 0.0
    phase = 2.0 * math.pi * l * float(x.q)
    if j == 0:
        return 2.0 * math.cos(phase)
    if n % 2 == 0 and j == n // 2:
        return _half_character(d.r, d.s, tag) * 2.0 * math.cos(phase)
    if d.s:
        return 0.0
    c = 2.0 * math.pi * j * d.r / n
    return 2.0 * math.cos(phase + c) + 2.0 * math.cos(phase - c)


def _fixdim(n, j, l, tag, cls: SubgroupClass) -> int:
    S = cls.representative
    if not S.is_finite:
        # only the full group appears among orbit types with infinite order
        return 0
    total = sum(_twisted_trace(n, j, l, tag, g) for g in S.elements)
    dim = total / len(S.elements)
    if abs(dim - round(dim)) > 1e-9:
        raise ConsistencyError("non-integral fixed-space dimension")
    return round(dim)


def _orbit_type_classes(n, j, l, tag):
    """Sampled orbit types of W_{j,l}, including the full group."""
    sampled = set()
    r = n // 2
    if j == 0 or (n % 2 == 0 and j == r):
        if j == 0:
            chi = lambda p, e: 1
        else:
            chi = (lambda p, e: _half_character(p, e, tag))
        thetas = [Fraction(k, 2 * n) for k in range(2 * n)]
        thetas.append(Fraction(1, 97 * 2 * n))
        for th in thetas:
            sampled.add(_isotropy_character(n, chi, l, th))
    else:
        thetas = [Fraction(k, 2 * n) for k in range(2 * n)]
        thetas.append(Fraction(1, 97 * 2 * n))
        for th in thetas:
            for m1, m2 in ((1, 1), (2, 1)):
                sampled.add(_isotropy_pair(n, j, l, m1, th, m2, Fraction(0)))
        sampled.add(_isotropy_pair(n, j, l, 1, Fraction(0), 0, Fraction(0)))
        sampled.add(_isotropy_pair(n, j, l, 0, Fraction(0), 1, Fraction(0)))
    classes = {full_class(n)}
    for elems in sampled:
        S = Subgroup.from_elements(n, elems)
        # orbit types with infinite Weyl group are circle families with zero
        # Euler characteristic and carry no coefficient
        if S.has_finite_weyl():
            classes.add(classify(S))
    return classes


@functools.lru_cache(maxsize=None)
def _twisted_degree_cached(n: int, j: int, l: int, tag: str) -> BurnsideElement:
    classes = _orbit_type_classes(n, j, l, tag)
    ordering = sorted(
        classes,
        key=lambda c: (
            0 if not c.representative.is_finite else 1,
            -(c.order() if c.representative.is_finite else 0),
            c.family_id,
            c.param,
        ),
    )
    coeffs = {}
    for L in ordering:
        total = (-1) ** _fixdim(n, j, l, tag, L)
        for K, nK in coeffs.items():
            if nK == 0:
                continue
            total -= n_pairs(L, K) * nK * K.weyl_order
        wl = L.weyl_order
        if total % wl:
            raise ConsistencyError(
                f"non-integral coefficient at {L.name} in the twisted degree"
            )
        coeffs[L] = total // wl
    return BurnsideElement(n, {c: v for c, v in coeffs.items() if v})


def twisted_basic_degree(label: IrreducibleLabel, n: int) -> BurnsideElement:
    """Twisted basic degree of the folded representation W_{j,l}."""
    if label.kind != "folded":
        raise DomainError("twisted_basic_degree expects a folded label")
    _check_j(n, label.j)
    tag = label.tag
    if n % 2 == 0 and label.j == n // 2 and not tag:
        tag = "im"
    return _twisted_degree_cached(n, label.j, label.l, tag)


def degree_for_label(label: IrreducibleLabel, n: int) -> BurnsideElement:
    if label.kind == "plain":
        return basic_degree(label, n)
    return twisted_basic_degree(label, n)


def linear_gradient_degree(negative_spectrum, n: int) -> BurnsideElement:
    """Gradient degree of a linear isomorphism: the product over negative
    eigenvalues of the basic degrees of their labels, with multiplicities."""
    out = BurnsideElement.unit(n)
    for _mu, mults in negative_spectrum:
        for label, m in mults.items():
            if m < 0:
                raise DomainError("negative multiplicity")
            for _ in range(m):
                out = out * degree_for_label(label, n)
    return out


# ---------------------------------------------------------------------------
# the bifurcation invariant

@dataclasses.dataclass(frozen=True)
class OmegaInvariant:
    crossing: CriticalValue
    value: BurnsideElement
    maximal_orbit_types: tuple

    def as_dict(self):
        terms = [
            {"class": cls.name, "family": cls.family_id, "param": cls.param, "coefficient": c}
            for cls, c in self.value.items_sorted()
        ]
        return {
            "j": self.crossing.j,
            "l": self.crossing.l,
            "sign": self.crossing.sign,
            "lambda": self.crossing.lam,
            "limit_period": self.crossing.limit_period,
            "expansion": terms,
            "maximal_orbit_types": [cls.name for cls in self.maximal_orbit_types],
            "predicted_branches": len(self.maximal_orbit_types),
        }


def _plain_label_for_record(n: int, rec) -> IrreducibleLabel:
    if rec.j == 0:
        return IrreducibleLabel.plain(0)
    if n % 2 == 0 and rec.j == n // 2:
        return IrreducibleLabel.plain(rec.j, rec.axis or "im")
    return IrreducibleLabel.plain(rec.j)


def _maximal_types(value: BurnsideElement):
    support = [cls for cls, _c in value.items_sorted()]
    out = []
    for cls in support:
        if any(
            other is not cls and subconjugate(cls, other) and other != cls
            for other in support
        ):
            continue
        out.append(cls)
    return tuple(sorted(out))


def omega_invariant(
    crossing: CriticalValue,
    spectrum: SpectralReport,
    mode: str = "paper_style",
    isolation_tol: float = 1e-8,
) -> OmegaInvariant:
    """Bifurcation invariant at an isolated critical value.

    Multiplies the twisted degrees of every previously crossed folded label
    with the degree jump of the crossing label; in literal mode the constant
    Fourier modes of positive eigenvalues contribute plain degree factors."""
    if mode not in ("paper_style", "literal"):
        raise DomainError(f"unknown omega mode {mode!r}")
    n = spectrum.n
    for rec in spectrum.eigenvalues:
        if abs(rec.value) < _CONDITION_C_TOL:
            raise SolverError(
                "zero slice eigenvalue: the equilibrium orbit is degenerate",
                diagnostics={"eigenvalue": rec.value, "component": rec.j},
            )
    lam = crossing.lam
    lam2 = lam * lam
    # isolation: no other critical value within tolerance of the crossing
    for rec in spectrum.eigenvalues:
        if rec.value <= 0:
            continue
        l_hi = int(math.floor(lam * math.sqrt(rec.value) + 2))
        for lp in range(1, l_hi + 1):
            if (rec.j, rec.tag, lp) == (crossing.j, crossing.sign, crossing.l):
                continue
            lam_other = lp / math.sqrt(rec.value)
            if abs(lam_other - lam) <= isolation_tol * max(1.0, lam):
                raise SolverError(
                    "critical value is not isolated",
                    diagnostics={
                        "lambda": lam,
                        "coincident": {"j": rec.j, "tag": rec.tag, "l": lp},
                    },
                )
    value = BurnsideElement.unit(n)
    crossing_rec = None
    for rec in spectrum.eigenvalues:
        if rec.value <= 0:
            continue
        if (rec.j, rec.tag) == (crossing.j, crossing.sign):
            crossing_rec = rec
        tag = rec.axis if (n % 2 == 0 and rec.j == n // 2) else ""
        lp = 1
        while lp * lp < lam2 * rec.value * (1.0 - 1e-12):
            if (rec.j, rec.tag, lp) != (crossing.j, crossing.sign, crossing.l):
                value = value * twisted_basic_degree(
                    IrreducibleLabel.folded(rec.j, lp, tag), n
                )
            lp += 1
        if mode == "literal":
            value = value * basic_degree(_plain_label_for_record(n, rec), n)
    if crossing_rec is None:
        raise DomainError(
            "crossing does not match any positive eigenvalue of the report"
        )
    tag = crossing_rec.axis if (n % 2 == 0 and crossing.j == n // 2) else ""
    jump = twisted_basic_degree(
        IrreducibleLabel.folded(crossing.j, crossing.l, tag), n
    ) - BurnsideElement.unit(n)
    value = value * jump
    return OmegaInvariant(
        crossing=crossing, value=value, maximal_orbit_types=_maximal_types(value)
    )
