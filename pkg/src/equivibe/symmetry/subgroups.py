"""Closed subgroups of D_n x O(2) with exact arithmetic.

A closed subgroup either is finite or projects onto SO(2) or O(2) in the
planar factor.  This gives four kinds:

* ``finite``   - explicit element set, all planar angles rational turns;
* ``prod_so2`` - H x SO(2) for a subgroup H of D_n;
* ``prod_o2``  - H x O(2);
* ``twisted``  - {(h, x) : h in Z iff x is a rotation} for Z of index 2 in H.

The three infinite kinds all contain {1} x SO(2); membership in them depends
only on the dihedral part and the planar reflection flag of an element.
Conjugation acts on dihedral parts by D_n and shifts planar reflection axes,
which keeps every computation (normalizers, conjugacy tests, counting
conjugates that contain a fixed subgroup) finite.
"""

from __future__ import annotations

import dataclasses
import functools
import math
from fractions import Fraction

from ..errors import ConsistencyError, DomainError, UnsupportedError
from .group import DihedralElement, GroupElement, O2Element

FINITE = "finite"
PROD_SO2 = "prod_so2"
PROD_O2 = "prod_o2"
TWISTED = "twisted"

_MAX_CLOSURE = 20000


# ---------------------------------------------------------------------------
# subgroups of the dihedral factor D_n

def dn_closure(n: int, gens) -> frozenset:
    """Subgroup of D_n generated by the given elements."""
    elems = {DihedralElement(n, 0, 0)}
    frontier = list(gens)
    while frontier:
        g = frontier.pop()
        if g in elems:
            continue
        elems.add(g)
        for h in list(elems):
            for prod in (g * h, h * g):
                if prod not in elems:
                    frontier.append(prod)
    return frozenset(elems)


def dn_all_subgroups(n: int):
    """All subgroups of D_n: cyclic Z_d and dihedral groups <Z_d, gamma^j kappa>."""
    subs = []
    for d in sorted(k for k in range(1, n + 1) if n % k == 0):
        rot = dn_closure(n, [DihedralElement(n, n // d, 0)])
        subs.append(rot)
        for j in range(n // d):
            subs.append(dn_closure(n, list(rot) + [DihedralElement(n, j, 1)]))
    return subs


def dn_conjugate(H: frozenset, a: DihedralElement) -> frozenset:
    ai = a.inverse()
    return frozenset(a * h * ai for h in H)


def dn_normalizer(H: frozenset, n: int):
    return [a for s in (0, 1) for r in range(n)
            if dn_conjugate(H, a := DihedralElement(n, r, s)) == H]


def dn_conjugacy_reps(n: int):
    """One representative per conjugacy class of subgroups of D_n."""
    reps = []
    seen = set()
    for H in dn_all_subgroups(n):
        if H in seen:
            continue
        reps.append(H)
        for s in (0, 1):
            for r in range(n):
                seen.add(dn_conjugate(H, DihedralElement(n, r, s)))
    return reps


# ---------------------------------------------------------------------------
# subgroups of the product

@dataclasses.dataclass(frozen=True)
class Subgroup:
    """A closed subgroup of D_n x O(2), in one of the four kinds above."""

    n: int
    kind: str
    elements: frozenset = None  # GroupElements, finite kind only
    dihedral_part: frozenset = None  # H, infinite kinds only
    kernel_part: frozenset = None  # Z, twisted kind only

    # -- construction -------------------------------------------------------

    @staticmethod
    def from_elements(n: int, elements) -> "Subgroup":
        return Subgroup(n, FINITE, elements=frozenset(elements))

    @staticmethod
    def generate(n: int, gens) -> "Subgroup":
        """Finite subgroup generated by the given elements."""
        from .group import identity

        elems = {identity(n)}
        frontier = list(gens)
        while frontier:
            g = frontier.pop()
            if g in elems:
                continue
            elems.add(g)
            if len(elems) > _MAX_CLOSURE:
                raise ConsistencyError("generated subgroup is not finite")
            for h in list(elems):
                for prod in (g * h, h * g):
                    if prod not in elems:
                        frontier.append(prod)
        return Subgroup.from_elements(n, elems)

    @staticmethod
    def product_so2(n: int, H) -> "Subgroup":
        return Subgroup(n, PROD_SO2, dihedral_part=frozenset(H))

    @staticmethod
    def product_o2(n: int, H) -> "Subgroup":
        return Subgroup(n, PROD_O2, dihedral_part=frozenset(H))

    @staticmethod
    def twisted(n: int, H, Z) -> "Subgroup":
        H, Z = frozenset(H), frozenset(Z)
        if not Z < H or 2 * len(Z) != len(H):
            raise DomainError("twisted kernel must have index 2")
        return Subgroup(n, TWISTED, dihedral_part=H, kernel_part=Z)

    @staticmethod
    def full_group(n: int) -> "Subgroup":
        full_dn = dn_closure(n, [DihedralElement(n, 1, 0), DihedralElement(n, 0, 1)])
        return Subgroup.product_o2(n, full_dn)

    # -- basic queries -------------------------------------------------------

    @property
    def is_finite(self) -> bool:
        return self.kind == FINITE

    def order(self):
        return len(self.elements) if self.is_finite else math.inf

    def contains_element(self, g: GroupElement) -> bool:
        if self.is_finite:
            return g in self.elements
        d, refl = g.dihedral, g.planar.s == 1
        H = self.dihedral_part
        if self.kind == PROD_SO2:
            return d in H and not refl
        if self.kind == PROD_O2:
            return d in H
        return d in (H - self.kernel_part) if refl else d in self.kernel_part

    def contains(self, other: "Subgroup") -> bool:
        """Whether other is a subgroup of self."""
        if self.n != other.n:
            raise DomainError("mixed ring sizes")
        if other.is_finite:
            if self.is_finite:
                return other.elements <= self.elements
            return all(self.contains_element(g) for g in other.elements)
        if self.is_finite:
            return False
        H, Hp = self.dihedral_part, other.dihedral_part
        if self.kind == PROD_SO2:
            return other.kind == PROD_SO2 and Hp <= H
        if self.kind == PROD_O2:
            return Hp <= H
        # self twisted
        if other.kind == PROD_SO2:
            return Hp <= self.kernel_part
        if other.kind == TWISTED:
            return Hp <= H and other.kernel_part == Hp & self.kernel_part
        return False

    # -- conjugation ---------------------------------------------------------

    def conjugated(self, a: DihedralElement, b: O2Element) -> "Subgroup":
        """The subgroup (a,b) S (a,b)^{-1}."""
        if self.is_finite:
            ai, bi = a.inverse(), b.inverse()
            return Subgroup.from_elements(
                self.n,
                (GroupElement(a * g.dihedral * ai, b * g.planar * bi)
                 for g in self.elements),
            )
        H = dn_conjugate(self.dihedral_part, a)
        if self.kind == PROD_SO2:
            return Subgroup.product_so2(self.n, H)
        if self.kind == PROD_O2:
            return Subgroup.product_o2(self.n, H)
        return Subgroup.twisted(self.n, H, dn_conjugate(self.kernel_part, a))

    def planar_reflections(self):
        """Finite-kind elements whose planar part is a reflection."""
        return sorted(g for g in self.elements if g.planar.s == 1)

    def has_finite_weyl(self) -> bool:
        if self.is_finite:
            return any(g.planar.s == 1 for g in self.elements)
        return True


def _dn_elements(n: int):
    return [DihedralElement(n, r, s) for s in (0, 1) for r in range(n)]


def _aligning_conjugators(S: Subgroup, targets):
    """Candidate conjugators (a, b) sending a fixed planar-reflection element
    of S onto one of the target elements; exhaustive up to equal action on S."""
    n = S.n
    refl = S.planar_reflections()
    out = []
    if not refl:
        # planar rotations are unmoved by axis shifts; only the reflection
        # flag of the conjugator matters
        for a in _dn_elements(n):
            for s in (0, 1):
                out.append((a, O2Element(Fraction(0), s)))
        return out
    x0 = refl[0]
    for a in _dn_elements(n):
        d_img = a * x0.dihedral * a.inverse()
        for y in targets:
            if y.planar.s != 1 or y.dihedral != d_img:
                continue
            # rotation conjugator: axis shift 2*beta = q_y - q_0
            out.append((a, O2Element((y.planar.q - x0.planar.q) / 2, 0)))
            # reflection conjugator: axis map q -> 2p - q
            out.append((a, O2Element((y.planar.q + x0.planar.q) / 2, 1)))
    return out


@functools.lru_cache(maxsize=None)
def _scaled_base(S: Subgroup):
    """Finite subgroup at its own phase denominator D, as integer tuples
    (dihedral, phase numerator mod D, planar flag)."""
    D = 1
    for g in S.elements:
        d = g.planar.q.denominator
        D = D * d // math.gcd(D, d)
    els = tuple(
        (g.dihedral, int(g.planar.q * D) % D, g.planar.s) for g in S.elements
    )
    return D, els


def _phase_denominator(*subs) -> int:
    D = 1
    for S in subs:
        d = _scaled_base(S)[0]
        D = D * d // math.gcd(D, d)
    return D


def _scaled_elements(S: Subgroup, D: int):
    """Finite subgroup as (dihedral, phase numerator mod D, planar flag)."""
    D0, els = _scaled_base(S)
    f = D // D0
    if f == 1:
        return list(els)
    return [(gd, p * f, s) for gd, p, s in els]


@functools.lru_cache(maxsize=None)
def _search_form(S: Subgroup, D: int):
    """Scaled element set, rotation/reflection split and reflections indexed
    by dihedral part, cached per denominator."""
    els = _scaled_elements(S, D)
    full = frozenset((gd.r, gd.s, p, s) for gd, p, s in els)
    rot = tuple((gd, p) for gd, p, s in els if s == 0)
    refl = tuple((gd, p) for gd, p, s in els if s == 1)
    by_part = {}
    for gd, p in refl:
        by_part.setdefault(gd, []).append(p)
    by_part = {gd: tuple(ps) for gd, ps in by_part.items()}
    return full, rot, refl, by_part


@functools.lru_cache(maxsize=None)
def _dihedral_maps(n: int):
    """For each a in D_n, the conjugation map g -> a g a^{-1} and its inverse."""
    maps = []
    for a in _dn_elements(n):
        ai = a.inverse()
        fwd = {g: a * g * ai for g in _dn_elements(n)}
        inv = {h: g for g, h in fwd.items()}
        maps.append((a, fwd, inv))
    return tuple(maps)


def are_conjugate(S: Subgroup, T: Subgroup) -> bool:
    if S.n != T.n or S.kind != T.kind or S.order() != T.order():
        return False
    n = S.n
    if not S.is_finite:
        for a in _dn_elements(n):
            if dn_conjugate(S.dihedral_part, a) == T.dihedral_part and (
                S.kind != TWISTED
                or dn_conjugate(S.kernel_part, a) == T.kernel_part
            ):
                return True
        return False
    if len(S.planar_reflections()) != len(T.planar_reflections()):
        return False
    # scaled-integer enumeration: conjugation sends phases q to +-q + 2*beta
    D = _phase_denominator(S, T)
    Tset, _Trot, _Trefl, Tby_part = _search_form(T, D)
    _Sset, Srot, Srefl, _Sby = _search_form(S, D)
    if not Srefl:
        for _, dmap, _inv in _dihedral_maps(n):
            for t in (0, 1):
                if all(
                    ((h := dmap[gd]).r, h.s, (-p if t else p) % D, 0) in Tset
                    for gd, p in Srot
                ):
                    return True
        return False
    x0d, px = Srefl[0]
    for _, dmap, _inv in _dihedral_maps(n):
        targets = Tby_part.get(dmap[x0d])
        if not targets:
            continue
        for t in (0, 1):
            if not all(
                ((h := dmap[gd]).r, h.s, (-p if t else p) % D, 0) in Tset
                for gd, p in Srot
            ):
                continue
            for py in targets:
                two_beta = (py + px) % D if t else (py - px) % D
                if all(
                    ((h := dmap[gd]).r, h.s,
                     (two_beta - p if t else p + two_beta) % D, 1) in Tset
                    for gd, p in Srefl
                ):
                    return True
    return False


def normalizer_order(S: Subgroup):
    """Order of the normalizer of a finite-Weyl subgroup; used via weyl_order."""
    n = S.n
    if S.kind == PROD_SO2 or S.kind == PROD_O2:
        return math.inf
    if S.kind == TWISTED:
        return math.inf
    if not S.has_finite_weyl():
        return math.inf
    D = _phase_denominator(S)
    _full, rot, refl, by_part = _search_form(S, D)
    rot_set = frozenset((gd.r, gd.s, p) for gd, p in rot)
    refl_set = frozenset((gd.r, gd.s, p) for gd, p in refl)
    x0d, px = refl[0]
    count = 0
    seen = set()
    for a, dmap, _inv in _dihedral_maps(n):
        targets = by_part.get(dmap[x0d])
        if not targets:
            continue
        for t in (0, 1):
            # the rotation part does not feel the planar shift of the conjugator
            if not all(
                ((h := dmap[gd]).r, h.s, (-p if t else p) % D) in rot_set
                for gd, p in rot
            ):
                continue
            for py in targets:
                two_beta = (py + px) % D if t else (py - px) % D
                if (a, t, two_beta) in seen:
                    continue
                seen.add((a, t, two_beta))
                if all(
                    ((h := dmap[gd]).r, h.s,
                     (two_beta - p if t else p + two_beta) % D) in refl_set
                    for gd, p in refl
                ):
                    # the two planar lifts (b and b shifted by a half turn) act alike
                    count += 2
    return count


def weyl_order(S: Subgroup):
    """Order of N(S)/S; math.inf for finite subgroups without planar reflections."""
    n = S.n
    if S.kind == PROD_SO2:
        return 2 * len(dn_normalizer(S.dihedral_part, n)) // len(S.dihedral_part)
    if S.kind == PROD_O2:
        return len(dn_normalizer(S.dihedral_part, n)) // len(S.dihedral_part)
    if S.kind == TWISTED:
        nprime = [a for a in dn_normalizer(S.dihedral_part, n)
                  if dn_conjugate(S.kernel_part, a) == S.kernel_part]
        return 2 * len(nprime) // len(S.dihedral_part)
    if not S.has_finite_weyl():
        return math.inf
    norm = normalizer_order(S)
    if norm % len(S.elements) != 0:
        raise ConsistencyError("normalizer order not divisible by subgroup order")
    return norm // len(S.elements)


def conjugates_containing(L: Subgroup, K: Subgroup):
    """Distinct conjugates of K that contain L; both of finite Weyl order."""
    if L.n != K.n:
        raise DomainError("mixed ring sizes")
    if not (L.has_finite_weyl() and K.has_finite_weyl()):
        raise UnsupportedError("conjugate counting requires finite Weyl groups")
    n = L.n
    found = []
    if not K.is_finite:
        for a in _dn_elements(n):
            C = K.conjugated(a, O2Element(Fraction(0), 0))
            if C not in found and C.contains(L):
                found.append(C)
        return found
    if not L.is_finite:
        return []
    if L.order() > K.order():
        return []
    # a conjugate of K containing L must contain the reference planar
    # reflection of L, which pins the conjugator up to finitely many choices
    x0 = L.planar_reflections()[0]
    seen = set()
    for y in K.planar_reflections():
        for a in _dn_elements(n):
            if a * y.dihedral * a.inverse() != x0.dihedral:
                continue
            for b in (
                O2Element((x0.planar.q - y.planar.q) / 2, 0),
                O2Element((x0.planar.q + y.planar.q) / 2, 1),
            ):
                C = K.conjugated(a, b)
                if C.elements in seen:
                    continue
                seen.add(C.elements)
                if C.contains(L):
                    found.append(C)
    return found


def count_conjugates_containing(L: Subgroup, K: Subgroup) -> int:
    """len(conjugates_containing(L, K)), with a scaled-integer fast path.

    Conjugation only maps planar phases q to +-q + 2*beta, so with all
    phases scaled to integers modulo a common denominator the enumeration
    is pure integer arithmetic."""
    if not (L.is_finite and K.is_finite):
        return len(conjugates_containing(L, K))
    if L.order() > K.order() or K.order() % L.order():
        return 0
    if all(g.planar.s == 0 for g in L.elements):
        return len(conjugates_containing(L, K))
    n = L.n
    D = _phase_denominator(L, K)
    Kset, _Krot, _Krefl, Kby_part = _search_form(K, D)
    _Lset, Lrot, Lrefl, _Lby = _search_form(L, D)
    x0d, px = Lrefl[0]
    hits = 0
    for a, dmap, inv in _dihedral_maps(n):
        targets = Kby_part.get(inv[x0d])
        if not targets:
            continue
        for t in (0, 1):
            # pull L back into K; its rotation part ignores the planar shift
            if not all(
                ((h := inv[gd]).r, h.s, (-p if t else p) % D, 0) in Kset
                for gd, p in Lrot
            ):
                continue
            for py in targets:
                two_beta = (px + py) % D if t else (px - py) % D
                if all(
                    ((h := inv[gd]).r, h.s,
                     (two_beta - p if t else p - two_beta) % D, 1) in Kset
                    for gd, p in Lrefl
                ):
                    hits += 1
    if not hits:
        return 0
    # each distinct conjugate arises from equally many conjugator actions,
    # namely the actions that map K onto itself
    stab = _stabilizing_action_count(K)
    if hits % stab:
        raise ConsistencyError("conjugator hit count not divisible by stabilizer")
    return hits // stab


@functools.lru_cache(maxsize=None)
def _stabilizing_action_count(K: Subgroup) -> int:
    """Conjugation actions of D_n x O(2) that map the finite subgroup K onto
    itself and send some planar reflection of K onto a fixed one."""
    n = K.n
    D = _phase_denominator(K)
    _full, rot, refl, by_part = _search_form(K, D)
    rot_set = frozenset((gd.r, gd.s, p) for gd, p in rot)
    refl_set = frozenset((gd.r, gd.s, p) for gd, p in refl)
    x0d, px = refl[0]
    count = 0
    for a, dmap, inv in _dihedral_maps(n):
        targets = by_part.get(inv[x0d])
        if not targets:
            continue
        for t in (0, 1):
            if not all(
                ((h := dmap[gd]).r, h.s, (-p if t else p) % D) in rot_set
                for gd, p in rot
            ):
                continue
            for py in targets:
                two_beta = (px + py) % D if t else (px - py) % D
                if all(
                    ((h := dmap[gd]).r, h.s,
                     (two_beta - p if t else p + two_beta) % D) in refl_set
                    for gd, p in refl
                ):
                    count += 1
    return count


def all_subgroups(S: Subgroup):
    """All subgroups of a finite subgroup, by closure saturation.

    Closures run over an integer Cayley table of S rather than on the
    group elements themselves."""
    if not S.is_finite:
        raise DomainError("subgroup enumeration needs a finite group")
    from .group import identity

    elems = sorted(S.elements)
    index = {g: i for i, g in enumerate(elems)}
    m = len(elems)
    table = [[index[a * b] for b in elems] for a in elems]

    def close(seed):
        cur = set(seed)
        frontier = list(cur)
        while frontier:
            g = frontier.pop()
            row = table[g]
            for h in list(cur):
                for prod in (row[h], table[h][g]):
                    if prod not in cur:
                        cur.add(prod)
                        frontier.append(prod)
        return frozenset(cur)

    triv = frozenset([index[identity(S.n)]])
    found = {triv}
    frontier = [triv]
    while frontier:
        A = frontier.pop()
        for g in range(m):
            if g in A:
                continue
            B = close(A | {g})
            if B not in found:
                found.add(B)
                frontier.append(B)
    groups = [frozenset(elems[i] for i in A) for A in found]
    return [
        Subgroup.from_elements(S.n, A)
        for A in sorted(groups, key=lambda A: (len(A), sorted(A)))
    ]
