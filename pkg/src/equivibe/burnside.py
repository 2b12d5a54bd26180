"""Exact arithmetic in the Burnside ring of D_n x O(2).

Elements are integer combinations of conjugacy classes with finite Weyl
group.  Products of generators (H)*(K) = sum n_L (L) are computed top-down
through the class lattice:

    n_L |W(L)| = n(L,H)|W(H)| n(L,K)|W(K)| - sum_{L' > L} n(L,L') n_{L'} |W(L')|

with every division exact.  When both factors contain {1} x SO(2) (the
products with SO(2) or O(2) and the twisted classes), the product is pulled
back from the finite Burnside ring of the quotient D_n x Z_2, where orbits
are counted directly.
"""

from __future__ import annotations

import functools
import math

from .errors import ConsistencyError, DomainError
from .symmetry.classes import SubgroupClass, _families, classify, full_class, n_pairs, subconjugate
from .symmetry.subgroups import (
    PROD_O2,
    PROD_SO2,
    TWISTED,
    Subgroup,
    all_subgroups,
)


class BurnsideElement:
    """Finite integer combination of finite-Weyl subgroup classes."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs=None):
        self.n = n
        clean = {}
        for cls, c in (coeffs or {}).items():
            if c == 0:
                continue
            if cls.weyl_order == math.inf:
                raise DomainError(
                    f"class {cls.name} has infinite Weyl group and cannot "
                    "carry a Burnside-ring coefficient"
                )
            clean[cls] = int(c)
        self.coeffs = clean

    @staticmethod
    def generator(cls: SubgroupClass) -> "BurnsideElement":
        return BurnsideElement(cls.n, {cls: 1})

    @staticmethod
    def zero(n: int) -> "BurnsideElement":
        return BurnsideElement(n, {})

    @staticmethod
    def unit(n: int) -> "BurnsideElement":
        return BurnsideElement.generator(full_class(n))

    def __add__(self, other: "BurnsideElement") -> "BurnsideElement":
        self._check(other)
        out = dict(self.coeffs)
        for cls, c in other.coeffs.items():
            out[cls] = out.get(cls, 0) + c
        return BurnsideElement(self.n, out)

    def __neg__(self) -> "BurnsideElement":
        return BurnsideElement(self.n, {cls: -c for cls, c in self.coeffs.items()})

    def __sub__(self, other: "BurnsideElement") -> "BurnsideElement":
        return self + (-other)

    def __mul__(self, other: "BurnsideElement") -> "BurnsideElement":
        self._check(other)
        out = BurnsideElement.zero(self.n)
        for h, ch in self.coeffs.items():
            for k, ck in other.coeffs.items():
                prod = generator_product(h, k)
                out = out + BurnsideElement(
                    self.n, {cls: ch * ck * c for cls, c in prod.coeffs.items()}
                )
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BurnsideElement)
            and self.n == other.n
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.n, frozenset(self.coeffs.items())))

    def __bool__(self):
        return bool(self.coeffs)

    def _check(self, other):
        if not isinstance(other, BurnsideElement) or self.n != other.n:
            raise DomainError("Burnside elements from different rings")

    def items_sorted(self):
        return sorted(self.coeffs.items(), key=lambda kv: (kv[0].family_id, kv[0].param))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for cls, c in self.items_sorted():
            sign = "+" if c > 0 else "-"
            mag = abs(c)
            term = f"({cls.name})" if mag == 1 else f"{mag}({cls.name})"
            parts.append(f"{sign} {term}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else text


def recurrence_coefficient(L, H, K, partial) -> int:
    """Coefficient n_L in (H)*(K) given the coefficients of all larger classes."""
    total = n_pairs(L, H) * H.weyl_order * n_pairs(L, K) * K.weyl_order
    for other, n_other in partial.items():
        if other == L or n_other == 0:
            continue
        total -= n_pairs(L, other) * n_other * other.weyl_order
    wl = L.weyl_order
    if total % wl:
        raise ConsistencyError(
            f"non-integral recurrence coefficient for {L.name} in {H.name}*{K.name}"
        )
    return total // wl


@functools.lru_cache(maxsize=None)
def _finite_weyl_subclasses(cls: SubgroupClass):
    """Classes of finite-Weyl subgroups of the representative of a finite class."""
    out = []
    for sub in all_subgroups(cls.representative):
        if not sub.has_finite_weyl():
            continue
        c = classify(sub)
        if c not in out:
            out.append(c)
    return tuple(out)


@functools.lru_cache(maxsize=None)
def _dn_subconjugacy(n: int):
    """Subconjugacy among conjugacy classes of subgroups of D_n, by name."""
    from .symmetry.classes import dn_class_name
    from .symmetry.group import DihedralElement
    from .symmetry.subgroups import dn_conjugacy_reps, dn_conjugate

    reps = {dn_class_name(H, n): H for H in dn_conjugacy_reps(n)}
    table = {}
    for nl, Hl in reps.items():
        for nk, Hk in reps.items():
            table[(nl, nk)] = any(
                dn_conjugate(Hl, DihedralElement(n, r, s)) <= Hk
                for s in (0, 1)
                for r in range(n)
            )
    return table


@functools.lru_cache(maxsize=None)
def _class_profile(cls: SubgroupClass):
    """Cheap invariants of a finite class: dihedral projection name, planar
    rotation order, planar reflection flag."""
    from .symmetry.classes import dn_class_name

    S = cls.representative
    dn_name = dn_class_name(frozenset(g.dihedral for g in S.elements), cls.n)
    rot = {g.planar.q for g in S.elements if g.planar.s == 0}
    refl = any(g.planar.s == 1 for g in S.elements)
    return dn_name, len(rot), refl


def _is_subconjugate(cls: SubgroupClass, X: SubgroupClass) -> bool:
    if X.representative.is_finite:
        if X.order() % cls.order():
            return False
        pl, px = _class_profile(cls), _class_profile(X)
        if not _dn_subconjugacy(cls.n)[(pl[0], px[0])]:
            return False
        if px[1] % pl[1] or (pl[2] and not px[2]):
            return False
        return n_pairs(cls, X) > 0
    return subconjugate(cls, X)


@functools.lru_cache(maxsize=None)
def _candidate_subclasses(H: SubgroupClass, K: SubgroupClass):
    """Finite-Weyl classes subconjugate to both factors; orbit types of
    (H)*(K) are among these.  Enumerated from the global classification:
    a finite orbit type has order dividing the finite factor's order."""
    n = H.n
    bound = min(H.order(), K.order())
    out = []
    for fam in _families(n):
        base = fam.at(1)
        if base.weyl_order == math.inf or not base.representative.is_finite:
            continue
        o1 = base.order()
        m = 1
        while o1 * m <= bound:
            if bound % (o1 * m) == 0:
                cls = fam.at(m)
                if _is_subconjugate(cls, H) and _is_subconjugate(cls, K):
                    out.append(cls)
            m += 1
    return tuple(out)


@functools.lru_cache(maxsize=None)
def generator_product(H: SubgroupClass, K: SubgroupClass) -> BurnsideElement:
    if H.n != K.n:
        raise DomainError("mixed ring sizes")
    n = H.n
    G = full_class(n)
    if H == G:
        return BurnsideElement.generator(K)
    if K == G:
        return BurnsideElement.generator(H)
    if not H.representative.is_finite and not K.representative.is_finite:
        return _product_via_quotient(H, K)
    candidates = list(_candidate_subclasses(H, K))
    candidates.sort(key=lambda c: -c.order())
    coeffs = {}
    for L in candidates:
        coeffs[L] = recurrence_coefficient(L, H, K, coeffs)
    return BurnsideElement(n, coeffs)


# ---------------------------------------------------------------------------
# products of classes containing {1} x SO(2), via the quotient D_n x Z_2

def _quotient_subgroup(S: Subgroup) -> frozenset:
    """Image in D_n x Z_2 of a subgroup containing {1} x SO(2)."""
    H = S.dihedral_part
    if S.kind == PROD_SO2:
        return frozenset((d, 0) for d in H)
    if S.kind == PROD_O2:
        return frozenset((d, z) for d in H for z in (0, 1))
    if S.kind == TWISTED:
        Z = S.kernel_part
        return frozenset((d, 0) for d in Z) | frozenset((d, 1) for d in H - Z)
    raise DomainError("subgroup does not contain the planar rotation circle")


def _lift_quotient_subgroup(n: int, Sbar: frozenset) -> Subgroup:
    H = frozenset(d for d, _z in Sbar)
    kernel = frozenset(d for d, z in Sbar if z == 0)
    if kernel == H and all((d, 1) not in Sbar for d in H):
        return Subgroup.product_so2(n, H)
    if all((d, 1) in Sbar for d in H):
        return Subgroup.product_o2(n, H)
    return Subgroup.twisted(n, H, kernel)


def _product_via_quotient(Hc: SubgroupClass, Kc: SubgroupClass) -> BurnsideElement:
    n = Hc.n
    from .symmetry.subgroups import dn_closure
    from .symmetry.group import DihedralElement

    full_dn = dn_closure(n, [DihedralElement(n, 1, 0), DihedralElement(n, 0, 1)])
    q_elems = [(d, z) for d in sorted(full_dn) for z in (0, 1)]

    def q_mul(a, b):
        return (a[0] * b[0], a[1] ^ b[1])

    def q_inv(a):
        return (a[0].inverse(), a[1])

    def cosets(sub):
        remaining = set(q_elems)
        out = []
        while remaining:
            g = remaining.pop()
            coset = frozenset(q_mul(g, s) for s in sub)
            remaining -= coset
            out.append(coset)
        return out

    S1 = _quotient_subgroup(Hc.representative)
    S2 = _quotient_subgroup(Kc.representative)
    X = [(c1, c2) for c1 in cosets(S1) for c2 in cosets(S2)]
    remaining = set(X)
    coeffs = {}
    while remaining:
        x = next(iter(remaining))
        orbit = set()
        stab = []
        for g in q_elems:
            gx = (frozenset(q_mul(g, e) for e in x[0]), frozenset(q_mul(g, e) for e in x[1]))
            orbit.add(gx)
            if gx == x:
                stab.append(g)
        remaining -= orbit
        lifted = _lift_quotient_subgroup(n, frozenset(stab))
        cls = classify(lifted)
        coeffs[cls] = coeffs.get(cls, 0) + 1
    return BurnsideElement(n, coeffs)


def multiply(x: BurnsideElement, y: BurnsideElement) -> BurnsideElement:
    return x * y
