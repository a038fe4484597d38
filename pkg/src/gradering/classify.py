"""Units, nilpotents, radicals, ideal lattices and the nil-good family of predicates."""
from __future__ import annotations

import weakref
from dataclasses import dataclass, field
from enum import Enum
from math import log2
from typing import Sequence

import numpy as np

from .abelian import Subgroup
from .algebra import Element, FiniteRing
from .errors import IdealLatticeCap, NotHomogeneousIdeal, NotTwoSided
from .graded import GradedRing, validate_grading

DEFAULT_IDEAL_CAP = 20_000

_classes_cache: "weakref.WeakKeyDictionary[FiniteRing, ElementClasses]" = weakref.WeakKeyDictionary()
_radical_cache: "weakref.WeakKeyDictionary[FiniteRing, frozenset[int]]" = weakref.WeakKeyDictionary()
_lattice_cache: "weakref.WeakKeyDictionary[GradedRing, tuple]" = weakref.WeakKeyDictionary()


# --------------------------------------------------------------------------- element classes


def _primes(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _singular_mod_p(mats: np.ndarray, p: int) -> np.ndarray:
    """Batched Gaussian elimination over F_p; True where the matrix is singular."""
    mats = mats % p
    n, d, _ = mats.shape
    singular = np.zeros(n, dtype=bool)
    inv = np.array([0] + [pow(a, p - 2, p) for a in range(1, p)], dtype=np.int64)
    rows = np.arange(n)
    for c in range(d):
        nz = mats[:, c:, c] != 0
        has = nz.any(axis=1)
        singular |= ~has
        piv = c + nz.argmax(axis=1)
        pivot_rows = mats[rows, piv].copy()
        mats[rows, piv] = mats[:, c]
        mats[:, c] = pivot_rows
        scale = inv[mats[:, c, c]]
        mats[:, c] = (mats[:, c] * scale[:, None]) % p
        if c + 1 < d:
            factors = mats[:, c + 1 :, c : c + 1]
            mats[:, c + 1 :] = (mats[:, c + 1 :] - factors * mats[:, c : c + 1]) % p
    return singular


def unit_mask(R: FiniteRing) -> np.ndarray:
    """Boolean mask of units over the canonical element order.

    x is a unit iff y -> x*y is injective (finite ring), iff it is injective on
    every p-torsion layer A[p] of the additive group; each layer is an F_p
    vector space, so this is a batched rank computation.
    """
    N = R.order
    if N == 1:
        return np.ones(1, dtype=bool)
    E = R.elements
    mods = R._mods
    L = np.einsum("ni,ijl->njl", E, R._C) % mods  # L[x, j] = x * g_j
    ok = np.ones(N, dtype=bool)
    for p in _primes(N):
        cols = [i for i, m in enumerate(R.additive_orders) if m % p == 0]
        scale = np.array([R.additive_orders[i] // p for i in cols], dtype=np.int64)
        # image of (m_j/p) g_j, read in the basis (m_l/p) g_l of A[p]
        M = (L[:, cols][:, :, cols] * scale[None, :, None]) % mods[cols]
        M = M // scale[None, None, :]
        ok &= ~_singular_mod_p(M, p)
    return ok


def nilpotency_indices(R: FiniteRing) -> np.ndarray:
    """Nilpotency index per element (0 for non-nilpotent elements).

    A nilpotent x of index t gives a strictly decreasing chain
    R > xR > x^2R > ... > x^tR = 0, so t <= log2|R| + 1.
    """
    N = R.order
    E = R.elements
    bound = int(log2(N)) + 1 if N > 1 else 1
    idx = np.zeros(N, dtype=np.int64)
    P = E.copy()
    for t in range(1, bound + 1):
        zero = ~P.any(axis=1) & (idx == 0)
        idx[zero] = t
        if t < bound:
            P = R.mul_rows(P, E)
    return idx


@dataclass(eq=False)
class ElementClasses:
    ring: FiniteRing
    unit_mask: np.ndarray
    nil_index: np.ndarray
    idempotent_mask: np.ndarray
    _inverse: dict[int, int] = field(default_factory=dict)

    @property
    def nil_mask(self) -> np.ndarray:
        return self.nil_index > 0

    @property
    def unit_indices(self) -> np.ndarray:
        return np.flatnonzero(self.unit_mask)

    @property
    def nil_indices(self) -> np.ndarray:
        return np.flatnonzero(self.nil_mask)

    @property
    def units(self) -> list[Element]:
        return [self.ring.element(int(i)) for i in self.unit_indices]

    @property
    def nilpotents(self) -> list[Element]:
        return [self.ring.element(int(i)) for i in self.nil_indices]

    @property
    def idempotents(self) -> list[Element]:
        return [self.ring.element(int(i)) for i in np.flatnonzero(self.idempotent_mask)]

    def is_unit(self, x: Sequence[int]) -> bool:
        return bool(self.unit_mask[self.ring.index(x)])

    def is_nilpotent(self, x: Sequence[int]) -> bool:
        return bool(self.nil_index[self.ring.index(x)] > 0)

    def inverse(self, x: Sequence[int]) -> Element:
        """Two-sided inverse of a unit, found among its powers."""
        R = self.ring
        i = R.index(x)
        if not self.unit_mask[i]:
            raise ValueError(f"{tuple(x)} is not a unit")
        if i not in self._inverse:
            prev, cur = R.unity, tuple(x)
            while cur != R.unity:
                prev, cur = cur, R.mul(cur, x)
            self._inverse[i] = R.index(prev)
        return R.element(self._inverse[i])


def element_classes(R: FiniteRing) -> ElementClasses:
    cached = _classes_cache.get(R)
    if cached is None:
        E = R.elements
        idem = (R.mul_rows(E, E) == E).all(axis=1)
        cached = ElementClasses(R, unit_mask(R), nilpotency_indices(R), idem)
        _classes_cache[R] = cached
    return cached


# --------------------------------------------------------------------------- radicals


def jacobson_radical(R: FiniteRing) -> frozenset[int]:
    """J(R) = {x : 1 - a*x is a unit for every a}, as element indices."""
    cached = _radical_cache.get(R)
    if cached is not None:
        return cached
    cls = element_classes(R)
    E = R.elements
    one = np.array(R.unity, dtype=np.int64)
    mods = R._mods
    cand = np.flatnonzero(cls.unit_mask[R.indices(one - E)])
    for a in range(R.order):
        if not len(cand):
            break
        prods = R.mul_rows(np.broadcast_to(E[a], (len(cand), R.rank)), E[cand])
        cand = cand[cls.unit_mask[R.indices((one - prods) % mods)]]
    out = frozenset(int(i) for i in cand)
    _radical_cache[R] = out
    return out


def index_subgroup(R: FiniteRing, indices) -> Subgroup:
    return R.subgroup([R.element(int(i)) for i in indices])


# --------------------------------------------------------------------------- homogeneous right ideals


@dataclass(frozen=True)
class HomogeneousRightIdeal:
    ideal: Subgroup
    generators: tuple[Element, ...]

    @property
    def elements(self) -> list[Element]:
        return self.ideal.elements()

    def __len__(self) -> int:
        return self.ideal.order


def _cyclic_homogeneous(GR: GradedRing) -> dict[Subgroup, Element]:
    R = GR.ring
    out: dict[Subgroup, Element] = {}
    for i in GR.homogeneous_indices:
        if i == 0:
            continue
        x = R.element(int(i))
        I = R.right_ideal_of(x)
        out.setdefault(I, x)
    return out


def _lattice(GR: GradedRing, cap: int) -> tuple[list[HomogeneousRightIdeal], list[Subgroup]]:
    cached = _lattice_cache.get(GR)
    if cached is not None:
        if len(cached[0]) > cap:
            raise IdealLatticeCap(f"more than {cap} homogeneous right ideals")
        return cached
    R = GR.ring
    cyclic = _cyclic_homogeneous(GR)
    zero = R.subgroup([])
    whole = Subgroup.whole(R.additive_orders) if R.rank else zero
    gens: dict[Subgroup, tuple[Element, ...]] = {zero: ()}
    frontier = [zero]
    maximal: list[Subgroup] = []
    while frontier:
        nxt = []
        for I in frontier:
            proper = R.unity not in I
            is_max = proper
            for C, x in cyclic.items():
                if C <= I:
                    continue
                J = I + C
                if proper and R.unity not in J:
                    is_max = False
                if J not in gens:
                    if len(gens) >= cap:
                        raise IdealLatticeCap(f"more than {cap} homogeneous right ideals")
                    gens[J] = gens[I] + (x,)
                    nxt.append(J)
            if is_max:
                maximal.append(I)
        frontier = nxt
    if whole not in gens:
        gens[whole] = ()
    ideals = sorted(gens, key=lambda S: (S.order, S.basis))
    result = [HomogeneousRightIdeal(S, gens[S]) for S in ideals]
    maximal.sort(key=lambda S: (S.order, S.basis))
    _lattice_cache[GR] = (result, maximal)
    return result, maximal


def homogeneous_right_ideals(GR: GradedRing, cap: int = DEFAULT_IDEAL_CAP) -> list[HomogeneousRightIdeal]:
    """Every homogeneous right ideal, as the join-closure of the cyclic ideals xR (x homogeneous)."""
    return _lattice(GR, cap)[0]


def graded_maximal_right_ideals(GR: GradedRing, cap: int = DEFAULT_IDEAL_CAP) -> list[Subgroup]:
    return _lattice(GR, cap)[1]


def graded_jacobson_radical(GR: GradedRing, cap: int = DEFAULT_IDEAL_CAP) -> Subgroup:
    maximal = graded_maximal_right_ideals(GR, cap)
    R = GR.ring
    if not maximal:
        return Subgroup.whole(R.additive_orders) if R.rank else R.subgroup([])
    J = maximal[0]
    for M in maximal[1:]:
        J = J.intersection(M)
    return J


def is_graded_local(GR: GradedRing, cap: int = DEFAULT_IDEAL_CAP) -> bool:
    return len(graded_maximal_right_ideals(GR, cap)) == 1


def is_homogeneous_subgroup(GR: GradedRing, I: Subgroup) -> bool:
    """I is the direct sum of its intersections with the components."""
    size = 1
    for S in GR.components:
        size *= I.intersection(S).order
    return size == I.order


def homogeneous_parts(GR: GradedRing, I: Subgroup) -> list[np.ndarray]:
    """Indices of I ∩ R_g for each g."""
    return [GR.ring.indices(I.intersection(S).element_array) for S in GR.components]


def is_graded_nil_ideal(GR: GradedRing, I: Subgroup) -> bool:
    if not is_homogeneous_subgroup(GR, I):
        raise NotHomogeneousIdeal("ideal is not homogeneous")
    nil = element_classes(GR.ring).nil_mask
    return all(nil[idx].all() for idx in homogeneous_parts(GR, I))


def is_graded_nil(GR: GradedRing) -> bool:
    nil = element_classes(GR.ring).nil_mask
    return bool(nil[GR.homogeneous_indices].all())


# --------------------------------------------------------------------------- witnesses


class WitnessKind(str, Enum):
    NILPOTENT = "Nilpotent"
    UNIT_PLUS_NILPOTENT = "UnitPlusNilpotent"


@dataclass(frozen=True)
class NilGoodWitness:
    element: Element
    kind: WitnessKind
    nilpotent_part: Element
    unit_part: Element | None
    nilpotency_index: int
    degree: int | None = None

    def to_json(self) -> dict:
        return {
            "element": list(self.element),
            "kind": self.kind.value,
            "unit": None if self.unit_part is None else list(self.unit_part),
            "nilpotent": list(self.nilpotent_part),
            "index": self.nilpotency_index,
            "degree": self.degree,
        }


def _witness(R: FiniteRing, cls: ElementClasses, x: int, n: int | None, degree=None) -> NilGoodWitness:
    xe = R.element(x)
    if n is None:
        return NilGoodWitness(xe, WitnessKind.NILPOTENT, xe, None, int(cls.nil_index[x]), degree)
    ne = R.element(n)
    return NilGoodWitness(xe, WitnessKind.UNIT_PLUS_NILPOTENT, ne, R.sub(xe, ne), int(cls.nil_index[n]), degree)


def _first_unit_split(R: FiniteRing, cls: ElementClasses, x: int, nils: np.ndarray, units: np.ndarray) -> int | None:
    """First n in ``nils`` (canonical order) with x - n in ``units`` (a mask)."""
    if not len(nils):
        return None
    diff = R.indices(R.elements[x] - R.elements[nils])
    hits = np.flatnonzero(units[diff])
    return int(nils[hits[0]]) if len(hits) else None


def nil_good_decomposition(R: FiniteRing, x: Sequence[int]) -> NilGoodWitness | None:
    cls = element_classes(R)
    i = R.index(x)
    if cls.nil_index[i]:
        return _witness(R, cls, i, None)
    n = _first_unit_split(R, cls, i, cls.nil_indices, cls.unit_mask)
    return None if n is None else _witness(R, cls, i, n)


@dataclass
class PredicateResult:
    holds: bool
    witnesses: list[NilGoodWitness]
    counterexample: Element | None
    checked: int

    def __bool__(self) -> bool:
        return self.holds


def is_nil_good_ring(R: FiniteRing, keep_witnesses: bool = True) -> PredicateResult:
    cls = element_classes(R)
    nils = cls.nil_indices
    out = []
    for i in range(R.order):
        if cls.nil_index[i]:
            w = _witness(R, cls, i, None) if keep_witnesses else None
        else:
            n = _first_unit_split(R, cls, i, nils, cls.unit_mask)
            if n is None:
                return PredicateResult(False, out, R.element(i), i + 1)
            w = _witness(R, cls, i, n) if keep_witnesses else None
        if w is not None:
            out.append(w)
    return PredicateResult(True, out, None, R.order)


def _degree_masks(GR: GradedRing, cls: ElementClasses, g: int) -> tuple[np.ndarray, np.ndarray]:
    comp = GR.component_indices(g)
    nils = comp[cls.nil_mask[comp]]
    umask = np.zeros(GR.ring.order, dtype=bool)
    umask[comp[cls.unit_mask[comp]]] = True
    return nils, umask


def graded_nil_good_decomposition(GR: GradedRing, x: Sequence[int], allow_nilpotent: bool = True) -> NilGoodWitness | None:
    """Witness for a homogeneous x: nilpotent, or u + n with u, n homogeneous of deg x.

    With ``allow_nilpotent=False`` a nilpotent x still needs a u + n split
    (the graded-fine condition).
    """
    R = GR.ring
    cls = element_classes(R)
    i = R.index(x)
    g = int(GR.degree_array[i])
    if g < 0:
        raise NotHomogeneousIdeal(f"{tuple(x)} is not homogeneous")
    if allow_nilpotent and cls.nil_index[i]:
        return _witness(R, cls, i, None, g)
    nils, umask = _degree_masks(GR, cls, g)
    n = _first_unit_split(R, cls, i, nils, umask)
    return None if n is None else _witness(R, cls, i, n, g)


def unrestricted_homogeneous_decomposition(GR: GradedRing, x: Sequence[int]) -> tuple[Element, Element] | None:
    """Search u + n over homogeneous units and nilpotents of any degrees (no same-degree restriction)."""
    R = GR.ring
    cls = element_classes(R)
    homog = GR.homogeneous_indices
    units = homog[cls.unit_mask[homog]]
    hmask = GR.degree_array >= 0
    ok = cls.nil_mask & hmask
    i = R.index(x)
    diff = R.indices(R.elements[i] - R.elements[units])
    hits = np.flatnonzero(ok[diff])
    if not len(hits):
        return None
    u = int(units[hits[0]])
    return R.element(u), R.element(int(diff[hits[0]]))


def _graded_scan(GR: GradedRing, allow_nilpotent: bool, keep_witnesses: bool) -> PredicateResult:
    R = GR.ring
    cls = element_classes(R)
    out = []
    checked = 0
    masks = {}
    for i in GR.homogeneous_indices:
        i = int(i)
        g = int(GR.degree_array[i])
        if not allow_nilpotent and i == 0:
            continue
        checked += 1
        if allow_nilpotent and cls.nil_index[i]:
            if keep_witnesses:
                out.append(_witness(R, cls, i, None, g))
            continue
        if g not in masks:
            masks[g] = _degree_masks(GR, cls, g)
        nils, umask = masks[g]
        n = _first_unit_split(R, cls, i, nils, umask)
        if n is None:
            return PredicateResult(False, out, R.element(i), checked)
        if keep_witnesses:
            out.append(_witness(R, cls, i, n, g))
    return PredicateResult(True, out, None, checked)


def is_graded_nil_good(GR: GradedRing, keep_witnesses: bool = True) -> PredicateResult:
    return _graded_scan(GR, True, keep_witnesses)


def is_graded_fine(GR: GradedRing, keep_witnesses: bool = True) -> PredicateResult:
    return _graded_scan(GR, False, keep_witnesses)


def is_nil_clean_ring(R: FiniteRing) -> PredicateResult:
    """Every element is idempotent + nilpotent."""
    cls = element_classes(R)
    idem = np.flatnonzero(cls.idempotent_mask)
    E = R.elements
    for i in range(R.order):
        diff = R.indices(E[i] - E[idem])
        if not cls.nil_mask[diff].any():
            return PredicateResult(False, [], R.element(i), i + 1)
    return PredicateResult(True, [], None, R.order)


# --------------------------------------------------------------------------- quotients


@dataclass(eq=False)
class GradedQuotient:
    graded: GradedRing
    project: callable
    lift: callable
    ideal: Subgroup
    source: FiniteRing

    def representative(self, c: Sequence[int]) -> Element:
        """Smallest (canonical-order) member of the coset with quotient coordinates c."""
        src = np.asarray(self.lift(c), dtype=np.int64)
        idx = self.source.indices(src + self.ideal.element_array)
        return self.source.element(int(idx.min()))


def quotient_graded(GR: GradedRing, I: Subgroup, name: str = "") -> GradedQuotient:
    R = GR.ring
    if not R.is_two_sided_ideal(I):
        raise NotTwoSided("ideal is not two-sided")
    if not is_homogeneous_subgroup(GR, I):
        raise NotHomogeneousIdeal("ideal is not homogeneous")
    Q, project, lift = R.quotient(I, name=name or f"{R.name}/I")
    comps = {g: [project(v) for v in S.generators()] for g, S in enumerate(GR.components)}
    QG = validate_grading(Q, GR.group, comps, name=name or f"{GR.name}/I")
    return GradedQuotient(QG, project, lift, I, R)


# --------------------------------------------------------------------------- report


@dataclass
class ClassificationReport:
    is_nil_good: bool
    is_graded_nil_good: bool
    is_graded_fine: bool
    is_graded_local: bool
    is_commutative: bool
    degenerate: bool
    radical: list[Element]
    graded_radical: list[Element]
    witnesses: list[NilGoodWitness]
    counterexamples: dict[str, Element | None]
    counts: dict[str, int]

    def to_json(self) -> dict:
        return {
            "flags": {
                "is_nil_good": self.is_nil_good,
                "is_graded_nil_good": self.is_graded_nil_good,
                "is_graded_fine": self.is_graded_fine,
                "is_graded_local": self.is_graded_local,
                "is_commutative": self.is_commutative,
                "degenerate": self.degenerate,
            },
            "radical": [list(x) for x in self.radical],
            "graded_radical": [list(x) for x in self.graded_radical],
            "witnesses": [w.to_json() for w in self.witnesses],
            "counterexamples": {k: (None if v is None else list(v)) for k, v in self.counterexamples.items()},
            "counts": self.counts,
        }


def classify(GR: GradedRing, cap: int = DEFAULT_IDEAL_CAP) -> ClassificationReport:
    R = GR.ring
    cls = element_classes(R)
    ng = is_nil_good_ring(R, keep_witnesses=False)
    gng = is_graded_nil_good(GR)
    fine = is_graded_fine(GR, keep_witnesses=False)
    J = sorted(jacobson_radical(R))
    Jg = graded_jacobson_radical(GR, cap)
    return ClassificationReport(
        is_nil_good=ng.holds,
        is_graded_nil_good=gng.holds,
        is_graded_fine=fine.holds,
        is_graded_local=is_graded_local(GR, cap),
        is_commutative=R.is_commutative(),
        degenerate=R.degenerate,
        radical=[R.element(i) for i in J],
        graded_radical=Jg.elements(),
        witnesses=gng.witnesses,
        counterexamples={
            "nil_good": ng.counterexample,
            "graded_nil_good": gng.counterexample,
            "graded_fine": fine.counterexample,
        },
        counts={
            "order": R.order,
            "units": int(cls.unit_mask.sum()),
            "nilpotents": int(cls.nil_mask.sum()),
            "idempotents": int(cls.idempotent_mask.sum()),
            "homogeneous": int(len(GR.homogeneous_indices)),
            "graded_maximal_right_ideals": len(graded_maximal_right_ideals(GR, cap)),
        },
    )
