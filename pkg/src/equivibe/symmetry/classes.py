"""Conjugacy classes of closed subgroups of D_n x O(2).

Every closed subgroup is a fibre product H x_L K of a subgroup H of D_n and
a closed subgroup K of O(2) over a common quotient L.  Classes come in
one-parameter families indexed by the order of the kernel of the planar
epimorphism (K = Z_{cm}, D_{cm}, plus the limits SO(2) and O(2)).  The
enumeration is brute force: for each subgroup H of D_n and each admissible
quotient L, all epimorphisms H -> L are generated and the resulting concrete
subgroups are deduplicated by exact conjugacy.

For n = 6 the result is checked against a reference list of 101 families,
which fixes the stable IDs; for other even n the IDs follow the
lexicographic order of the family signatures.
"""

from __future__ import annotations

import dataclasses
import functools
import math
from fractions import Fraction

from ..errors import ConsistencyError, DomainError, UnsupportedError
from .group import DihedralElement, GroupElement, O2Element, identity
from .subgroups import (
    FINITE,
    PROD_O2,
    PROD_SO2,
    TWISTED,
    Subgroup,
    are_conjugate,
    conjugates_containing,
    count_conjugates_containing,
    dn_all_subgroups,
    dn_closure,
    dn_conjugacy_reps,
    dn_conjugate,
    weyl_order,
)

# family kinds
_CYCLIC = "cyclic"  # K = Z_{cm}, L = Z_c (c = 1 is the product H x Z_m)
_DIHEDRAL = "dihedral"  # K = D_{cm}, L = D_c, kernel Z_m
_REFL = "refl"  # K = D_{2m}, L = Z_2, kernel D_m
_PRODUCT_D = "product_d"  # K = D_m, L trivial
_SO2 = "so2"
_O2 = "o2"
_TWISTED = "twisted"


# ---------------------------------------------------------------------------
# names of subgroups of D_n

def dn_class_name(H: frozenset, n: int) -> str:
    """Conjugacy-class name of a subgroup of D_n: Z_d, D_d or the
    odd-axis variant D~d (distinct from D_d only when n/d is even)."""
    rot = sorted(h.r for h in H if h.s == 0)
    refl = sorted(h.r for h in H if h.s == 1)
    d = len(rot)
    if not refl:
        return f"Z{d}"
    step = n // d
    if step % 2 == 0 and refl[0] % 2 == 1:
        return f"D~{d}"
    return f"D{d}"


# ---------------------------------------------------------------------------
# epimorphisms H -> L for concrete models of L

def _generating_set(H: frozenset, n: int):
    elems = sorted(H)
    for g in elems:
        if dn_closure(n, [g]) == H:
            return [g]
    for g1 in elems:
        for g2 in elems:
            if dn_closure(n, [g1, g2]) == H:
                return [g1, g2]
    raise ConsistencyError("dihedral subgroup needs more than two generators")


def _extend_hom(H, gens, images, mul, id_img):
    # seeded from the identity and the generator images, closed under products
    ident = next(h for h in H if h.r == 0 and h.s == 0)
    mapping = {ident: id_img}
    for g, img in zip(gens, images):
        if mapping.get(g, img) != img:
            return None
        mapping[g] = img
    changed = True
    while changed:
        changed = False
        items = list(mapping.items())
        for a, fa in items:
            for b, fb in items:
                c = a * b
                fc = mul(fa, fb)
                if c in mapping:
                    if mapping[c] != fc:
                        return None
                else:
                    mapping[c] = fc
                    changed = True
    return mapping if len(mapping) == len(H) else None


def _epimorphisms(H: frozenset, n: int, l_elems, mul, id_img):
    """All surjective homomorphisms from H onto the concrete model of L."""
    gens = _generating_set(H, n)
    out = []
    seen = set()
    images_iter = [(a,) for a in l_elems] if len(gens) == 1 else [
        (a, b) for a in l_elems for b in l_elems
    ]
    for images in images_iter:
        hom = _extend_hom(H, gens, images, mul, id_img)
        if hom is None or len(set(hom.values())) != len(l_elems):
            continue
        key = frozenset(hom.items())
        if key not in seen:
            seen.add(key)
            out.append(hom)
    return out


def _cyclic_epis(H, n, c):
    return _epimorphisms(H, n, list(range(c)), lambda a, b: (a + b) % c, 0)


def _dihedral_epis(H, n, c):
    l_elems = [DihedralElement(c, r, s) for s in (0, 1) for r in range(c)]
    return _epimorphisms(H, n, l_elems, lambda a, b: a * b, DihedralElement(c, 0, 0))


# ---------------------------------------------------------------------------
# families and their representatives

@dataclasses.dataclass(frozen=True)
class SubgroupClass:
    """A conjugacy class of closed subgroups, at a concrete family parameter."""

    n: int
    family_id: int
    param: int
    name: str = dataclasses.field(compare=False)
    representative: Subgroup = dataclasses.field(compare=False, repr=False)
    kind: str = dataclasses.field(compare=False)
    # int or math.inf, computed on first use (normalizers are not cheap)
    _weyl: object = dataclasses.field(compare=False, repr=False, default=None)

    @property
    def weyl_order(self):
        w = object.__getattribute__(self, "_weyl")
        if w is None:
            w = weyl_order(self.representative)
            object.__setattr__(self, "_weyl", w)
        return w

    def order(self):
        return self.representative.order()

    def __lt__(self, other):
        return (self.family_id, self.param) < (other.family_id, other.param)

    def __repr__(self):
        return f"SubgroupClass({self.name!r})"


class _Family:
    """One-parameter family of conjugacy classes."""

    def __init__(self, n, kind, H, c=1, phi=None, kernel=None):
        self.n = n
        self.kind = kind
        self.H = H
        self.c = c
        self.phi = phi
        self.kernel = kernel  # twisted kind only
        self.family_id = None
        self._cls_cache = {}
        self._rep_cache = {}
        self._signature = None

    # -- structural signature used for naming and ID assignment ------------

    def signature(self):
        if self._signature is not None:
            return self._signature
        sig = self._build_signature()
        self._signature = sig
        return sig

    def _build_signature(self):
        n = self.n
        h_name = dn_class_name(self.H, n)
        if self.kind == _CYCLIC:
            if self.c == 1:
                return (h_name, "Zn", "Z1", "", "")
            z = frozenset(h for h, v in self.phi.items() if v == 0)
            return (h_name, f"Z{self.c}n", f"Z{self.c}", dn_class_name(z, n), "")
        if self.kind == _DIHEDRAL:
            z = frozenset(h for h, v in self.phi.items() if v.is_identity)
            r_part = frozenset(h for h, v in self.phi.items() if v.s == 0)
            return (
                h_name,
                "Dn" if self.c == 1 else f"D{self.c}n",
                f"D{self.c}",
                dn_class_name(z, n),
                dn_class_name(r_part, n),
            )
        if self.kind == _REFL:
            z = frozenset(h for h, v in self.phi.items() if v == 0)
            return (h_name, "D2n", "Z2", dn_class_name(z, n), "")
        if self.kind == _PRODUCT_D:
            return (h_name, "Dn", "Z1", "", "")
        if self.kind == _SO2:
            return (h_name, "SO2", "Z1", "", "")
        if self.kind == _O2:
            return (h_name, "O2", "Z1", "", "")
        return (h_name, "O2tw", "D1", dn_class_name(self.kernel, n), "")

    def name(self, m=1):
        h_name, kcode, l_label, z_name, r_name = self.signature()
        if kcode == "SO2":
            return f"{h_name} x SO(2)"
        if kcode == "O2":
            return f"{h_name} x O(2)"
        if kcode == "O2tw":
            return f"{h_name} x_{{D1}}^{{{z_name}}} O(2)"
        if self.kind in (_CYCLIC,):
            k_name = f"Z{self.c * m}"
        elif self.kind == _PRODUCT_D:
            k_name = f"D{m}"
        elif self.kind == _DIHEDRAL:
            k_name = f"D{self.c * m}"
        else:  # _REFL
            k_name = f"D{2 * m}"
        if l_label == "Z1":
            return f"{h_name} x {k_name}"
        tag = z_name if not r_name or r_name in ("", z_name) else f"{z_name},{r_name}"
        return f"{h_name} x_{{{l_label}}}^{{{tag}}} {k_name}"

    # -- concrete representative at parameter m -----------------------------

    def representative(self, m=1):
        if m < 1:
            raise DomainError(f"family parameter must be >= 1, got {m}")
        cached = self._rep_cache.get(m)
        if cached is not None:
            return cached
        rep = self._build_representative(m)
        self._rep_cache[m] = rep
        return rep

    def _build_representative(self, m):
        n = self.n
        if self.kind == _SO2:
            return Subgroup.product_so2(n, self.H)
        if self.kind == _O2:
            return Subgroup.product_o2(n, self.H)
        if self.kind == _TWISTED:
            return Subgroup.twisted(n, self.H, self.kernel)
        c = self.c
        elems = []
        if self.kind == _CYCLIC:
            M = c * m
            for h in self.H:
                target = self.phi[h] if self.phi is not None else 0
                for k in range(M):
                    if k % c == target:
                        elems.append(GroupElement(h, O2Element(Fraction(k, M), 0)))
        elif self.kind == _PRODUCT_D:
            for h in self.H:
                for k in range(m):
                    elems.append(GroupElement(h, O2Element(Fraction(k, m), 0)))
                    elems.append(GroupElement(h, O2Element(Fraction(k, m), 1)))
        elif self.kind == _DIHEDRAL:
            M = c * m
            for h in self.H:
                target = self.phi[h]
                for k in range(M):
                    if k % c == target.r:
                        elems.append(
                            GroupElement(h, O2Element(Fraction(k, M), target.s))
                        )
        elif self.kind == _REFL:
            M = 2 * m
            for h in self.H:
                target = self.phi[h]
                for k in range(M):
                    if k % 2 == target:
                        elems.append(GroupElement(h, O2Element(Fraction(k, M), 0)))
                        elems.append(GroupElement(h, O2Element(Fraction(k, M), 1)))
        else:
            raise ConsistencyError(f"unknown family kind {self.kind}")
        return Subgroup.from_elements(n, elems)

    def at(self, m=1) -> SubgroupClass:
        if self.kind in (_SO2, _O2, _TWISTED):
            m = 1
        if m not in self._cls_cache:
            rep = self.representative(m)
            self._cls_cache[m] = SubgroupClass(
                n=self.n,
                family_id=self.family_id,
                param=m,
                name=self.name(m),
                representative=rep,
                kind=rep.kind,
            )
        return self._cls_cache[m]


# ---------------------------------------------------------------------------
# enumeration

def _enumerate_families(n: int):
    families = []
    for H in dn_conjugacy_reps(n):
        per_h = []
        order = len(H)
        # products
        per_h.append(_Family(n, _CYCLIC, H, c=1, phi={h: 0 for h in H}))
        per_h.append(_Family(n, _PRODUCT_D, H))
        per_h.append(_Family(n, _SO2, H))
        per_h.append(_Family(n, _O2, H))
        # cyclic quotients L = Z_c, c >= 2
        for c in range(2, order + 1):
            if order % c:
                continue
            for phi in _cyclic_epis(H, n, c):
                per_h.append(_Family(n, _CYCLIC, H, c=c, phi=phi))
        # reflection quotient L = Z_2 with dihedral kernel, and its O(2) limit
        for phi in _cyclic_epis(H, n, 2):
            per_h.append(_Family(n, _REFL, H, c=2, phi=phi))
            kernel = frozenset(h for h, v in phi.items() if v == 0)
            per_h.append(_Family(n, _TWISTED, H, kernel=kernel))
        # dihedral quotients L = D_c
        for c in range(1, order // 2 + 1):
            if order % (2 * c):
                continue
            for phi in _dihedral_epis(H, n, c):
                per_h.append(_Family(n, _DIHEDRAL, H, c=c, phi=phi))
        # dedupe within this H by concrete conjugacy at two parameters
        kept = []
        for fam in per_h:
            dup = False
            for other in kept:
                if fam.kind != other.kind or fam.c != other.c:
                    continue
                if are_conjugate(fam.representative(1), other.representative(1)) and (
                    fam.kind in (_SO2, _O2, _TWISTED)
                    or are_conjugate(fam.representative(2), other.representative(2))
                ):
                    dup = True
                    break
            if not dup:
                kept.append(fam)
        families.extend(kept)
    return families


# reference list for n = 6: (ID, H, K family, L, kernel of phi, rotation preimage, |W|)
_INF = math.inf
_TABLE6 = [
    (1, "Z1", "Zn", "Z1", "", "", _INF), (2, "D1", "Zn", "Z1", "", "", _INF),
    (3, "Z2", "Zn", "Z1", "", "", _INF), (4, "D~1", "Zn", "Z1", "", "", _INF),
    (5, "Z3", "Zn", "Z1", "", "", _INF), (6, "D2", "Zn", "Z1", "", "", _INF),
    (7, "D3", "Zn", "Z1", "", "", _INF), (8, "Z6", "Zn", "Z1", "", "", _INF),
    (9, "D~3", "Zn", "Z1", "", "", _INF), (10, "D6", "Zn", "Z1", "", "", _INF),
    (11, "D1", "Z2n", "Z2", "Z1", "", _INF), (12, "Z2", "Z2n", "Z2", "Z1", "", _INF),
    (13, "D~1", "Z2n", "Z2", "Z1", "", _INF), (14, "D2", "Z2n", "Z2", "D1", "", _INF),
    (15, "D2", "Z2n", "Z2", "Z2", "", _INF), (16, "D2", "Z2n", "Z2", "D~1", "", _INF),
    (17, "D3", "Z2n", "Z2", "Z3", "", _INF), (18, "Z6", "Z2n", "Z2", "Z3", "", _INF),
    (19, "D~3", "Z2n", "Z2", "Z3", "", _INF), (20, "D6", "Z2n", "Z2", "D3", "", _INF),
    (21, "D6", "Z2n", "Z2", "Z6", "", _INF), (22, "D6", "Z2n", "Z2", "D~3", "", _INF),
    (23, "Z3", "Z3n", "Z3", "Z1", "", _INF), (24, "Z6", "Z3n", "Z3", "Z2", "", _INF),
    (25, "Z6", "Z6n", "Z6", "Z1", "", _INF),
    (26, "D1", "Dn", "D1", "Z1", "Z1", 8), (27, "Z2", "Dn", "D1", "Z1", "Z1", 24),
    (28, "D~1", "Dn", "D1", "Z1", "Z1", 8), (29, "D2", "Dn", "D1", "D1", "D1", 4),
    (30, "D2", "Dn", "D1", "Z2", "Z2", 4), (31, "D2", "Dn", "D1", "D~1", "D~1", 4),
    (32, "D3", "Dn", "D1", "Z3", "Z3", 8), (33, "Z6", "Dn", "D1", "Z3", "Z3", 8),
    (34, "D~3", "Dn", "D1", "Z3", "Z3", 8), (35, "D6", "Dn", "D1", "D3", "D3", 4),
    (36, "D6", "Dn", "D1", "Z6", "Z6", 4), (37, "D6", "Dn", "D1", "D~3", "D~3", 4),
    (38, "D2", "D2n", "D2", "Z1", "D1", 4), (39, "D2", "D2n", "D2", "Z1", "Z2", 4),
    (40, "D2", "D2n", "D2", "Z1", "D~1", 4), (41, "D6", "D2n", "D2", "Z3", "D3", 4),
    (42, "D6", "D2n", "D2", "Z3", "Z6", 4), (43, "D6", "D2n", "D2", "Z3", "D~3", 4),
    (44, "D3", "D3n", "D3", "Z1", "Z3", 4), (45, "D~3", "D3n", "D3", "Z1", "Z3", 4),
    (46, "D6", "D3n", "D3", "Z2", "Z6", 2), (47, "D6", "D6n", "D6", "Z1", "Z6", 2),
    (48, "Z1", "Dn", "Z1", "", "", 24), (49, "D1", "Dn", "Z1", "", "", 4),
    (50, "Z2", "Dn", "Z1", "", "", 12), (51, "D~1", "Dn", "Z1", "", "", 4),
    (52, "Z3", "Dn", "Z1", "", "", 8), (53, "D2", "Dn", "Z1", "", "", 2),
    (54, "D3", "Dn", "Z1", "", "", 4), (55, "Z6", "Dn", "Z1", "", "", 4),
    (56, "D~3", "Dn", "Z1", "", "", 4), (57, "D6", "Dn", "Z1", "", "", 2),
    (58, "D1", "D2n", "Z2", "Z1", "", 4), (59, "Z2", "D2n", "Z2", "Z1", "", 12),
    (60, "D~1", "D2n", "Z2", "Z1", "", 4), (61, "D2", "D2n", "Z2", "D1", "", 2),
    (62, "D2", "D2n", "Z2", "Z2", "", 2), (63, "D2", "D2n", "Z2", "D~1", "", 2),
    (64, "D3", "D2n", "Z2", "Z3", "", 4), (65, "Z6", "D2n", "Z2", "Z3", "", 4),
    (66, "D~3", "D2n", "Z2", "Z3", "", 4), (67, "D6", "D2n", "Z2", "D3", "", 2),
    (68, "D6", "D2n", "Z2", "Z6", "", 2), (69, "D6", "D2n", "Z2", "D~3", "", 2),
    (70, "Z1", "SO2", "Z1", "", "", 24), (71, "D1", "SO2", "Z1", "", "", 4),
    (72, "Z2", "SO2", "Z1", "", "", 12), (73, "D~1", "SO2", "Z1", "", "", 4),
    (74, "Z3", "SO2", "Z1", "", "", 8), (75, "D2", "SO2", "Z1", "", "", 2),
    (76, "D3", "SO2", "Z1", "", "", 4), (77, "Z6", "SO2", "Z1", "", "", 4),
    (78, "D~3", "SO2", "Z1", "", "", 4), (79, "D6", "SO2", "Z1", "", "", 2),
    (80, "D1", "O2tw", "D1", "Z1", "", 4), (81, "Z2", "O2tw", "D1", "Z1", "", 12),
    (82, "D~1", "O2tw", "D1", "Z1", "", 4), (83, "D2", "O2tw", "D1", "D1", "", 2),
    (84, "D2", "O2tw", "D1", "Z2", "", 2), (85, "D2", "O2tw", "D1", "D~1", "", 2),
    (86, "D3", "O2tw", "D1", "Z3", "", 4), (87, "Z6", "O2tw", "D1", "Z3", "", 4),
    (88, "D~3", "O2tw", "D1", "Z3", "", 4), (89, "D6", "O2tw", "D1", "D3", "", 2),
    (90, "D6", "O2tw", "D1", "Z6", "", 2), (91, "D6", "O2tw", "D1", "D~3", "", 2),
    (92, "Z1", "O2", "Z1", "", "", 12), (93, "D1", "O2", "Z1", "", "", 2),
    (94, "Z2", "O2", "Z1", "", "", 6), (95, "D~1", "O2", "Z1", "", "", 2),
    (96, "Z3", "O2", "Z1", "", "", 4), (97, "D2", "O2", "Z1", "", "", 1),
    (98, "D3", "O2", "Z1", "", "", 2), (99, "Z6", "O2", "Z1", "", "", 2),
    (100, "D~3", "O2", "Z1", "", "", 2), (101, "D6", "O2", "Z1", "", "", 1),
]


@functools.lru_cache(maxsize=None)
def _families(n: int):
    if n < 3:
        raise DomainError(f"need n >= 3, got {n}")
    if n % 2:
        raise UnsupportedError(f"subgroup classification implemented for even n, got {n}")
    families = _enumerate_families(n)
    if n == 6:
        by_sig = {}
        for fam in families:
            sig = fam.signature()
            if sig in by_sig:
                raise ConsistencyError(f"duplicate family signature {sig}")
            by_sig[sig] = fam
        if len(by_sig) != len(_TABLE6):
            raise ConsistencyError(
                f"expected {len(_TABLE6)} families for n=6, found {len(by_sig)}"
            )
        ordered = []
        for fid, h, kcode, l_label, z, r, _w in _TABLE6:
            sig = (h, kcode, l_label, z, r)
            if sig not in by_sig:
                raise ConsistencyError(f"missing family {sig}")
            fam = by_sig[sig]
            fam.family_id = fid
            ordered.append(fam)
        return ordered
    families.sort(key=lambda fam: fam.signature())
    for i, fam in enumerate(families):
        fam.family_id = i + 1
    return families


def subgroup_classes(n: int):
    """All conjugacy-class families, each instantiated at parameter 1."""
    return [fam.at(1) for fam in _families(n)]


def class_at(n: int, family_id: int, m: int = 1) -> SubgroupClass:
    for fam in _families(n):
        if fam.family_id == family_id:
            return fam.at(m)
    raise DomainError(f"no family with ID {family_id}")


def make_class(n, h, kcode, l="Z1", z="", r="", param=1) -> SubgroupClass:
    """Look up a class family by its structural signature and instantiate it."""
    sig = (h, kcode, l, z, r)
    for fam in _families(n):
        if fam.signature() == sig:
            return fam.at(param)
    raise DomainError(f"no subgroup-class family with signature {sig}")


def full_class(n: int) -> SubgroupClass:
    """The class of the whole group D_n x O(2)."""
    return make_class(n, f"D{n}", "O2")


@functools.lru_cache(maxsize=None)
def classify(S: Subgroup) -> SubgroupClass:
    """The conjugacy class of a concrete subgroup."""
    n = S.n
    if S.kind != FINITE:
        for fam in _families(n):
            if fam.kind in (_SO2, _O2, _TWISTED):
                rep = fam.representative(1)
                if rep.kind == S.kind and are_conjugate(S, rep):
                    return fam.at(1)
        raise ConsistencyError("unclassifiable infinite subgroup")
    h_name = dn_class_name(frozenset(g.dihedral for g in S.elements), n)
    rot = {g.planar.q for g in S.elements if g.planar.s == 0}
    refl = {g.planar.q for g in S.elements if g.planar.s == 1}
    for fam in _families(n):
        if fam.kind in (_SO2, _O2, _TWISTED):
            continue
        if fam.signature()[0] != h_name:
            continue
        if fam.kind == _CYCLIC:
            if refl or len(rot) % fam.c:
                continue
            m = len(rot) // fam.c
        elif fam.kind == _PRODUCT_D:
            if not refl:
                continue
            m = len(rot)
        elif fam.kind == _DIHEDRAL:
            if not refl or len(rot) % fam.c:
                continue
            m = len(rot) // fam.c
        else:  # _REFL
            if not refl or len(rot) % 2:
                continue
            m = len(rot) // 2
        if m < 1:
            continue
        rep = fam.representative(m)
        if rep.order() == S.order() and are_conjugate(S, rep):
            return fam.at(m)
    raise ConsistencyError("unclassifiable finite subgroup")


# ---------------------------------------------------------------------------
# class-level relations

@functools.lru_cache(maxsize=None)
def n_pairs(L: SubgroupClass, K: SubgroupClass) -> int:
    """Number of subgroups conjugate to K that contain a fixed copy of L."""
    if L.n != K.n:
        raise DomainError("mixed ring sizes")
    return count_conjugates_containing(L.representative, K.representative)


@functools.lru_cache(maxsize=None)
def subconjugate(L: SubgroupClass, K: SubgroupClass) -> bool:
    """Whether some conjugate of L is contained in K."""
    if L.n != K.n:
        raise DomainError("mixed ring sizes")
    SL, SK = L.representative, K.representative
    n = L.n
    if SL.order() > SK.order():
        return False
    if not SK.is_finite:
        for a in [DihedralElement(n, rr, ss) for ss in (0, 1) for rr in range(n)]:
            if SK.contains(SL.conjugated(a, O2Element(Fraction(0), 0))):
                return True
        return False
    if not SL.is_finite:
        return False
    refl = SL.planar_reflections()
    dn_elems = [DihedralElement(n, rr, ss) for ss in (0, 1) for rr in range(n)]
    if not refl:
        for a in dn_elems:
            for s in (0, 1):
                if SK.contains(SL.conjugated(a, O2Element(Fraction(0), s))):
                    return True
        return False
    x0 = refl[0]
    for a in dn_elems:
        d_img = a * x0.dihedral * a.inverse()
        for y in SK.planar_reflections():
            if y.dihedral != d_img:
                continue
            for b in (
                O2Element((y.planar.q - x0.planar.q) / 2, 0),
                O2Element((y.planar.q + x0.planar.q) / 2, 1),
            ):
                if SK.contains(SL.conjugated(a, b)):
                    return True
    return False
