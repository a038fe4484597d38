"""Theorem registry: hypothesis/conclusion checks evaluated over a corpus with vacuity accounting."""
from __future__ import annotations

import time
import weakref
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Sequence

import numpy as np

from .abelian import Subgroup
from .algebra import FiniteRing, max_ring_order
from .classify import (
    DEFAULT_IDEAL_CAP,
    element_classes,
    graded_jacobson_radical,
    graded_nil_good_decomposition,
    index_subgroup,
    is_graded_local,
    is_graded_nil,
    is_graded_nil_good,
    is_graded_nil_ideal,
    is_nil_clean_ring,
    is_nil_good_ring,
    is_graded_fine,
    jacobson_radical,
    quotient_graded,
)
from .constructions import (
    MatrixGradingSpec,
    group_ring_coarse,
    group_ring_graded,
    lift_entrywise,
    matrix_graded,
)
from .errors import GraderingError, IdealLatticeCap, OrderCapExceeded, UnknownTheoremId
from .graded import GradedRing, coarsen
from .laurent import Kind, SymbolicGradedRing, symbolic_is_graded_nil_good
from .recipes import build


class Scope(str, Enum):
    IN = "in-scope"
    PARTIAL = "partial"
    OUT = "out-of-scope"
    AUDIT = "audit"


HOLDS = "holds"
VACUOUS = "hypothesis-false"
VIOLATED = "VIOLATED"
SKIPPED = "skipped"

FINITIZATIONS = (
    "locally finite p-group: finite p-group of order > 1",
    "p nilpotent in R: the image of p*1 is nilpotent",
    "PI-ring: automatic for finite rings, not checked",
    "semiprimary: automatic for finite rings, not checked",
    "finite support: automatic, grading groups are finite",
    "torsion-free grading group: only the trivial group",
)


@dataclass(frozen=True)
class Budget:
    """Limits for rings built while checking (group rings, matrix rings) and the ideal lattice."""

    derived_max_order: int = 19683
    ideal_cap: int = DEFAULT_IDEAL_CAP
    max_ideal_cases: int = 4

    def to_json(self) -> dict:
        return {
            "derived_max_order": self.derived_max_order,
            "ideal_cap": self.ideal_cap,
            "max_ideal_cases": self.max_ideal_cases,
            "max_ring_order": max_ring_order(),
        }


@dataclass
class Check:
    hypothesis: bool
    conclusion: bool | None = None
    witness: Any = None
    note: str = ""


@dataclass(frozen=True)
class TheoremSpec:
    id: str
    anchor: str
    hypothesis: str
    conclusion: str
    scope: Scope
    check: Callable[[GradedRing, dict, Budget], Check] | None = None
    cases: Callable[[GradedRing, Budget], list[dict]] | None = None
    reason: str = ""
    discrepancy: bool = False

    def to_json(self) -> dict:
        d = {
            "id": self.id,
            "anchor": self.anchor,
            "hypothesis": self.hypothesis,
            "conclusion": self.conclusion,
            "scope": self.scope.value,
            "discrepancy_audit": self.discrepancy,
        }
        if self.reason:
            d["reason"] = self.reason
        return d


# --------------------------------------------------------------------------- cached predicates

_memo: "weakref.WeakKeyDictionary[Any, dict]" = weakref.WeakKeyDictionary()


def _cached(obj, key, fn):
    slot = _memo.setdefault(obj, {})
    if key not in slot:
        slot[key] = fn()
    return slot[key]


def _plain(x):
    if x is None:
        return None
    if isinstance(x, dict):
        return {k: _plain(v) for k, v in x.items()}
    if isinstance(x, (tuple, list, np.ndarray)):
        return [_plain(v) for v in x]
    if isinstance(x, (np.integer,)):
        return int(x)
    return x


def gng(GR: GradedRing):
    return _cached(GR, "gng", lambda: is_graded_nil_good(GR, keep_witnesses=False))


def nil_good(R: FiniteRing):
    return _cached(R, "ng", lambda: is_nil_good_ring(R, keep_witnesses=False))


def identity_ring(GR: GradedRing) -> FiniteRing:
    return GR.identity_component[0]


def re_nil_good(GR: GradedRing):
    return nil_good(identity_ring(GR))


def graded_radical(GR: GradedRing, budget: Budget) -> Subgroup:
    return _cached(GR, ("jg", budget.ideal_cap), lambda: graded_jacobson_radical(GR, budget.ideal_cap))


def radical_graded_nil(GR: GradedRing, budget: Budget) -> bool:
    return _cached(GR, "jg_nil", lambda: is_graded_nil_ideal(GR, graded_radical(GR, budget)))


def graded_local(GR: GradedRing, budget: Budget) -> bool:
    return _cached(GR, "local", lambda: is_graded_local(GR, budget.ideal_cap))


def quotient_by(GR: GradedRing, I: Subgroup) -> GradedRing | None:
    """R/I as a graded ring, or None when I is not a homogeneous two-sided ideal."""

    def make():
        try:
            return quotient_graded(GR, I).graded
        except GraderingError:
            return None

    return _cached(GR, ("quotient", I), make)


def first_non_unit_non_nil(GR: GradedRing) -> int | None:
    cls = element_classes(GR.ring)
    h = GR.homogeneous_indices
    bad = h[~cls.unit_mask[h] & ~cls.nil_mask[h]]
    return int(bad[0]) if len(bad) else None


def units_in_identity_component(GR: GradedRing) -> bool:
    cls = element_classes(GR.ring)
    return bool(np.all(GR.degree_array[cls.unit_indices] == GR.e))


def units_and_nilpotents_homogeneous(GR: GradedRing) -> bool:
    cls = element_classes(GR.ring)
    idx = np.flatnonzero(cls.unit_mask | cls.nil_mask)
    return bool(np.all(GR.degree_array[idx] >= 0))


def p_nilpotent(R: FiniteRing, p: int) -> bool:
    return bool(element_classes(R).nil_mask[R.index(R.char_element(p))])


def p_group_prime(GR: GradedRing) -> int | None:
    return GR.group.prime_of_p_group()


def unity_splits_into_units(GR: GradedRing) -> bool:
    """1 = u + v with u, v units of R_e."""
    R = GR.ring
    cls = element_classes(R)
    comp = GR.component_indices(GR.e)
    units = comp[cls.unit_mask[comp]]
    if not len(units):
        return False
    rest = R.indices(np.asarray(R.unity) - R.elements[units])
    return bool(cls.unit_mask[rest].any())


def opposite_products_vanish(GR: GradedRing) -> bool:
    """R_g R_{g^-1} = 0 for every g != e."""
    G, R = GR.group, GR.ring
    for g in G:
        if g == G.identity:
            continue
        for x in GR.components[g].generators():
            for y in GR.components[G.inv(g)].generators():
                if any(R.mul(x, y)):
                    return False
    return True


def _derived(GR: GradedRing, key, order: int, budget: Budget, make):
    if order > budget.derived_max_order:
        raise OrderCapExceeded(f"derived ring of order {order} exceeds {budget.derived_max_order}")
    return _cached(GR, key, make)


def group_ring_of(GR: GradedRing, budget: Budget) -> GradedRing:
    order = GR.ring.order ** GR.group.order
    return _derived(GR, "group_ring", order, budget, lambda: group_ring_graded(GR))


def coarse_pair(GR: GradedRing, H: Sequence[int], budget: Budget) -> tuple[GradedRing, GradedRing]:
    """(R as G/H-graded, R[H] as G/H-graded)."""
    H = tuple(sorted(H))
    order = GR.ring.order ** len(H)

    def make():
        C = group_ring_coarse(GR, H)
        return coarsen(GR, H)[0], C.graded

    return _derived(GR, ("coarse", H), order, budget, make)


def matrix_of(GR: GradedRing, n: int, budget: Budget) -> GradedRing:
    order = GR.ring.order ** (n * n)
    return _derived(GR, ("matrix", n), order, budget, lambda: matrix_graded(GR, MatrixGradingSpec.uniform(n, GR.group)))


def _elem(R: FiniteRing, i) -> list[int] | None:
    return None if i is None else list(R.element(int(i)))


# --------------------------------------------------------------------------- checks


def _single(GR: GradedRing, budget: Budget) -> list[dict]:
    return [{}]


def _conclude(ok: bool, witness=None, note: str = "") -> Check:
    return Check(True, ok, None if ok else _plain(witness), note)


def _p31(GR, case, budget):
    A = GR.ring
    if not nil_good(A).holds:
        return Check(False)
    v = symbolic_is_graded_nil_good(SymbolicGradedRing(A, Kind.LAURENT))
    return _conclude(v.holds, None if v.witness is None else [list(v.witness[0]), v.witness[1]])


def _p321(GR, case, budget):
    if not gng(GR).holds:
        return Check(False)
    r = re_nil_good(GR)
    return _conclude(r.holds, r.counterexample)


def _p322(GR, case, budget):
    if not (GR.ring.is_commutative() and gng(GR).holds):
        return Check(False)
    bad = first_non_unit_non_nil(GR)
    return _conclude(bad is None, _elem(GR.ring, bad))


def _p323(GR, case, budget):
    if not (gng(GR).holds and units_in_identity_component(GR)):
        return Check(False)
    cls = element_classes(GR.ring)
    h = GR.homogeneous_indices
    off = h[(GR.degree_array[h] != GR.e) & ~cls.nil_mask[h]]
    return _conclude(len(off) == 0, _elem(GR.ring, off[0] if len(off) else None))


def _p33(GR, case, budget):
    R = GR.ring
    cls = element_classes(R)
    if R.degenerate or int(cls.unit_mask.sum()) != 1 or not gng(GR).holds:
        return Check(False)
    ok = GR.support() <= {GR.e} and R.order == 2
    return _conclude(ok, None, "" if ok else f"order {R.order}, support {sorted(GR.support())}")


def _ideal_cases(GR: GradedRing, budget: Budget) -> list[dict]:
    R = GR.ring
    cases: list[dict] = [{"ideal": "zero"}, {"ideal": "graded_jacobson"}]
    cls = element_classes(R)
    h = GR.homogeneous_indices
    seen = set()
    for i in h[cls.nil_mask[h]]:
        if len(cases) >= 2 + budget.max_ideal_cases:
            break
        if i == 0:
            continue
        x = R.element(int(i))
        I = R.two_sided_ideal_of([x])
        if I in seen:
            continue
        seen.add(I)
        cases.append({"ideal": "generated_by", "generators": [list(x)]})
    return cases


def _ideal_of(GR: GradedRing, case: dict, budget: Budget) -> Subgroup:
    R = GR.ring
    kind = case.get("ideal")
    if kind == "zero":
        return R.subgroup([])
    if kind == "graded_jacobson":
        return graded_radical(GR, budget)
    return R.two_sided_ideal_of([tuple(v) for v in case["generators"]])


def _t31(forward: bool):
    def check(GR, case, budget):
        I = _ideal_of(GR, case, budget)
        if not is_graded_nil_ideal(GR, I):
            return Check(False, note="ideal is not graded-nil")
        Q = quotient_by(GR, I)
        if Q is None:
            return Check(False, note="ideal is not a homogeneous two-sided ideal")
        src, dst = (GR, Q) if forward else (Q, GR)
        if not gng(src).holds:
            return Check(False)
        r = gng(dst)
        return _conclude(r.holds, r.counterexample)

    return check


def _p34(GR, case, budget):
    if not gng(GR).holds:
        return Check(False)
    return _conclude(radical_graded_nil(GR, budget))


def _radical_quotient(GR, budget) -> GradedRing | None:
    return quotient_by(GR, graded_radical(GR, budget))


def _c31(forward: bool, commutative: bool = False):
    def check(GR, case, budget):
        if commutative and not GR.ring.is_commutative():
            return Check(False, note="not commutative")
        Q = _radical_quotient(GR, budget)
        if Q is None:
            return Check(False, note="graded radical is not two-sided")
        right = radical_graded_nil(GR, budget) and gng(Q).holds
        if forward:
            if not gng(GR).holds:
                return Check(False)
            return _conclude(right)
        if not right:
            return Check(False)
        r = gng(GR)
        return _conclude(r.holds, r.counterexample)

    return check


def _c31_literal(GR, case, budget):
    if not gng(GR).holds:
        return Check(False)
    Q = _radical_quotient(GR, budget)
    if Q is None or not radical_graded_nil(GR, budget):
        return _conclude(False, None, "graded radical is not a graded-nil two-sided ideal")
    cls = element_classes(Q.ring)
    h = Q.homogeneous_indices
    bad = h[~cls.nil_mask[h]]
    if not len(bad):
        return _conclude(True)
    note = "R/J^g(R) has a non-nilpotent homogeneous element (quotient coordinates)"
    return _conclude(False, _elem(Q.ring, bad[0]), note)


def _l31(GR, case, budget):
    if not (GR.ring.is_commutative() and gng(GR).holds):
        return Check(False)
    return _conclude(radical_graded_nil(GR, budget))


def _p35(forward: bool):
    def check(GR, case, budget):
        if not graded_local(GR, budget):
            return Check(False, note="not graded-local")
        if forward:
            if not gng(GR).holds:
                return Check(False)
            return _conclude(radical_graded_nil(GR, budget))
        if not radical_graded_nil(GR, budget):
            return Check(False)
        r = gng(GR)
        return _conclude(r.holds, r.counterexample)

    return check


def _te_base(GR) -> GradedRing | None:
    return GR.meta.get("base") if GR.meta.get("construction") == "trivial_extension" else None


def _t41(forward: bool):
    def check(GR, case, budget):
        A = _te_base(GR)
        if A is None:
            return Check(False, note="not a trivial extension")
        src, dst = (A, GR) if forward else (GR, A)
        if not gng(src).holds:
            return Check(False)
        r = gng(dst)
        return _conclude(r.holds, r.counterexample)

    return check


def _t42(forward: bool):
    """forward: R nil-good => A nil-good; backward: A nil-good => R nil-good."""

    def check(GR, case, budget):
        A = _te_base(GR)
        if A is None:
            return Check(False, note="not a trivial extension")
        src, dst = (GR.ring, A.ring) if forward else (A.ring, GR.ring)
        if not nil_good(src).holds:
            return Check(False)
        r = nil_good(dst)
        return _conclude(r.holds, r.counterexample)

    return check


def _normal_cases(GR: GradedRing, budget: Budget) -> list[dict]:
    return [{"subgroup": sorted(H)} for H in GR.group.normal_subgroups()]


def _t43(two_group: bool):
    def check(GR, case, budget):
        p = p_group_prime(GR)
        if two_group:
            if p != 2:
                return Check(False, note="grading group is not a 2-group")
            if not nil_clean(identity_ring(GR)):
                return Check(False, note="R_e is not nil-clean")
        elif p is None or not p_nilpotent(GR.ring, p):
            return Check(False, note="not a p-group with p nilpotent")
        R_coarse, RH = coarse_pair(GR, case["subgroup"], budget)
        if not gng(R_coarse).holds:
            return Check(False)
        r = gng(RH)
        return _conclude(r.holds, r.counterexample)

    return check


def nil_clean(R: FiniteRing) -> bool:
    return _cached(R, "nil_clean", lambda: is_nil_clean_ring(R).holds)


def _pc42(GR, case, budget):
    p = p_group_prime(GR)
    if p is None or not p_nilpotent(GR.ring, p) or not gng(GR).holds:
        return Check(False)
    r = gng(group_ring_of(GR, budget))
    return _conclude(r.holds, r.counterexample)


def _t44(GR, case, budget):
    if not units_and_nilpotents_homogeneous(GR):
        return Check(False, note="a unit or nilpotent is not homogeneous")
    if not gng(group_ring_of(GR, budget)).holds:
        return Check(False)
    r = gng(GR)
    return _conclude(r.holds, r.counterexample)


def _cex32(GR, case, budget):
    p = p_group_prime(GR)
    if p is None or not p_nilpotent(GR.ring, p) or not units_and_nilpotents_homogeneous(GR):
        return Check(False)
    RG = group_ring_of(GR, budget)
    if not re_nil_good(RG).holds:
        return Check(False)
    r = gng(RG)
    return _conclude(r.holds, r.counterexample)


def _t46(GR, case, budget):
    R = GR.ring
    cls = element_classes(R)
    if not cls.unit_mask[R.index(R.char_element(GR.group.order))]:
        return Check(False, note="|G| is not a unit")
    if not opposite_products_vanish(GR):
        return Check(False, note="some R_g R_g^-1 is nonzero")
    if not re_nil_good(GR).holds or not graded_local(GR, budget):
        return Check(False)
    r = gng(GR)
    return _conclude(r.holds, r.counterexample)


def _t47(GR, case, budget):
    if GR.group.order != 1:
        return Check(False, note="only the trivial torsion-free group is finite")
    if not graded_local(GR, budget) or not re_nil_good(GR).holds:
        return Check(False)
    r = gng(GR)
    return _conclude(r.holds, r.counterexample)


def _l41(GR, case, budget):
    if GR.meta.get("construction") != "product":
        return Check(False, note="not a product")
    R = GR.ring
    gens = []
    off = 0
    for F in GR.meta["factors"]:
        for v in graded_radical(F, budget).generators():
            x = [0] * R.rank
            x[off : off + F.ring.rank] = v
            gens.append(x)
        off += F.ring.rank
    lhs = graded_radical(GR, budget)
    rhs = R.subgroup(gens)
    return _conclude(lhs == rhs, None, "" if lhs == rhs else f"orders {lhs.order} vs {rhs.order}")


def _l42(GR, case, budget):
    meta = GR.meta
    if meta.get("construction") == "matrix" and all(s == GR.e for s in meta["sigma"]):
        M, base, n = GR, meta["base"], meta["n"]
    elif GR.ring.order ** 4 <= 256:
        M, base, n = matrix_of(GR, 2, budget), GR, 2
    else:
        return Check(False, note="not a uniformly graded matrix ring")
    lhs = graded_radical(M, budget)
    rhs = lift_entrywise(base.ring, n, graded_radical(base, budget))
    return _conclude(lhs == rhs, None, "" if lhs == rhs else f"orders {lhs.order} vs {rhs.order}")


def _matrix_cases(GR: GradedRing, budget: Budget) -> list[dict]:
    return [{"n": 2}, {"n": 3}]


def _t48(GR, case, budget):
    if not (GR.ring.is_commutative() and unity_splits_into_units(GR) and gng(GR).holds):
        return Check(False)
    r = gng(matrix_of(GR, int(case.get("n", 2)), budget))
    return _conclude(r.holds, r.counterexample)


def _e43_element(GR: GradedRing) -> list[int]:
    M = [0] * GR.ring.rank
    M[0] = 1
    return M


def _is_e43(GR: GradedRing) -> bool:
    meta = GR.meta
    if meta.get("construction") != "matrix" or meta["n"] != 2 or any(s != GR.e for s in meta["sigma"]):
        return False
    A = meta["base"]
    base = _te_base(A)
    return base is not None and base.ring.order == 2 and A.ring.order == 4


def _is_checkerboard(GR: GradedRing) -> bool:
    meta = GR.meta
    if meta.get("construction") != "matrix" or meta["n"] != 2:
        return False
    return meta["base"].ring.order == 2 and meta["sigma"][0] != meta["sigma"][1]


def _audit_e43(GR, case, budget):
    """The ring claim: E11 (entry (1,0) of Z2∝Z2) has no graded nil-good decomposition."""
    if not _is_e43(GR):
        return Check(False, note="not M2(Z2∝Z2)(e,e)")
    w = graded_nil_good_decomposition(GR, _e43_element(GR))
    if w is None:
        return _conclude(True)
    return _conclude(False, {"element": w.element, "unit": w.unit_part, "nilpotent": w.nilpotent_part})


def _audit_e33(GR, case, budget):
    """diag(1,0) in the checkerboard M2(Z2) has no same-degree decomposition."""
    if not _is_checkerboard(GR):
        return Check(False, note="not a checkerboard M2(Z2)")
    M = [1, 0, 0, 0]
    w = graded_nil_good_decomposition(GR, M)
    if w is None:
        return _conclude(True)
    return _conclude(False, {"element": w.element, "unit": w.unit_part, "nilpotent": w.nilpotent_part})


def _spec(id, anchor, hyp, concl, check, cases=None, scope=Scope.IN, reason="", discrepancy=False):
    return TheoremSpec(id, anchor, hyp, concl, scope, check, cases, reason, discrepancy)


REGISTRY: dict[str, TheoremSpec] = {
    t.id: t
    for t in [
        _spec("P3.1", "P3.1: Laurent ring over a nil-good ring is graded nil-good",
              "A nil-good", "A[X,X^-1] graded nil-good", _p31),
        _spec("P3.2.1", "P3.2(1): graded nil-good forces R_e nil-good",
              "R graded nil-good", "R_e nil-good", _p321),
        _spec("P3.2.2", "P3.2(2): commutative graded nil-good rings have homogeneous elements unit or nilpotent",
              "R commutative, graded nil-good", "every homogeneous element is a unit or nilpotent", _p322),
        _spec("P3.2.3", "P3.2(3): when all units lie in R_e, off-identity components are nil",
              "R graded nil-good, U(R) inside R_e", "every x in R_g (g != e) nilpotent", _p323),
        _spec("P3.3", "P3.3: a graded nil-good ring with a single unit is Z2 concentrated in degree e",
              "R graded nil-good, |U(R)| = 1, 1 != 0", "R = R_e of order 2", _p33),
        _spec("T3.1.fwd", "T3.1 (forward): graded nil-good passes to quotients by graded-nil ideals",
              "I graded-nil, R graded nil-good", "R/I graded nil-good", _t31(True), _ideal_cases),
        _spec("T3.1.bwd", "T3.1 (backward): graded nil-good lifts through graded-nil ideals",
              "I graded-nil, R/I graded nil-good", "R graded nil-good", _t31(False), _ideal_cases),
        _spec("P3.4", "P3.4: the graded radical of a graded nil-good ring is graded-nil",
              "R graded nil-good (finite support)", "J^g(R) graded-nil", _p34),
        _spec("C3.1.fwd", "C3.1 (forward, graded nil-good reading of the quotient)",
              "R graded nil-good", "J^g(R) graded-nil and R/J^g(R) graded nil-good", _c31(True)),
        _spec("C3.1.bwd", "C3.1 (backward, graded nil-good reading of the quotient)",
              "J^g(R) graded-nil and R/J^g(R) graded nil-good", "R graded nil-good", _c31(False)),
        _spec("L3.1", "L3.1: commutative graded nil-good rings have graded-nil graded radical",
              "R commutative, graded nil-good", "J^g(R) graded-nil", _l31),
        _spec("C3.2.fwd", "C3.2 (forward): commutative case of the radical criterion",
              "R commutative, graded nil-good", "J^g(R) graded-nil and R/J^g(R) graded nil-good", _c31(True, True)),
        _spec("C3.2.bwd", "C3.2 (backward): commutative case of the radical criterion",
              "R commutative, J^g(R) graded-nil, R/J^g(R) graded nil-good", "R graded nil-good", _c31(False, True)),
        _spec("P3.5.fwd", "P3.5 (forward): graded-local graded nil-good rings have graded-nil radical",
              "R graded-local, graded nil-good", "J^g(R) graded-nil", _p35(True)),
        _spec("P3.5.bwd", "P3.5 (backward): graded-local rings with graded-nil radical are graded nil-good",
              "R graded-local, J^g(R) graded-nil", "R graded nil-good", _p35(False)),
        _spec("T4.1.fwd", "T4.1 (forward): A graded nil-good gives A∝E graded nil-good",
              "R = A∝E, A graded nil-good", "R graded nil-good", _t41(True)),
        _spec("T4.1.bwd", "T4.1 (backward): A∝E graded nil-good gives A graded nil-good",
              "R = A∝E graded nil-good", "A graded nil-good", _t41(False)),
        _spec("T4.2.fwd", "T4.2 (forward): A∝E nil-good gives A nil-good",
              "R = A∝E nil-good", "A nil-good", _t42(True)),
        _spec("T4.2.bwd", "T4.2 (backward): A nil-good gives A∝E nil-good",
              "R = A∝E, A nil-good", "R nil-good", _t42(False)),
        _spec("T4.3", "T4.3: coarse group rings over p-groups with p nilpotent",
              "G p-group, p nilpotent in R, R graded nil-good over G/H", "R[H] graded nil-good over G/H",
              _t43(False), _normal_cases),
        _spec("C4.1", "C4.1: coarse group rings over 2-groups with R_e nil-clean",
              "G 2-group, R_e nil-clean, R graded nil-good over G/H", "R[H] graded nil-good over G/H",
              _t43(True), _normal_cases),
        _spec("Pc4.2", "Pc4.2: graded group rings over p-groups with p nilpotent",
              "G p-group, p nilpotent in R, R graded nil-good", "R[G] graded nil-good", _pc42),
        _spec("T4.4", "T4.4: descent from R[G] when units and nilpotents are homogeneous",
              "units and nilpotents of R homogeneous, R[G] graded nil-good", "R graded nil-good", _t44),
        _spec("Cex3.2", "Cex3.2: R[G] graded nil-good from (R[G])_e nil-good",
              "G p-group, p nilpotent, units and nilpotents homogeneous, (R[G])_e nil-good",
              "R[G] graded nil-good", _cex32),
        _spec("T4.6", "T4.6: graded-local rings with |G| a unit and R_g R_g^-1 = 0",
              "R graded-local, |G| unit, R_g R_g^-1 = 0 (g != e), R_e nil-good", "R graded nil-good", _t46),
        _spec("L4.1", "L4.1: graded radical of a product is the product of graded radicals",
              "R = R_1 x ... x R_n", "J^g(R) = J^g(R_1) x ... x J^g(R_n)", _l41),
        _spec("L4.2", "L4.2: graded radical of M_n(R)(e,...,e) is M_n(J^g(R))",
              "M = M_n(R)(e,...,e)", "J^g(M) = M_n(J^g(R))", _l42),
        _spec("T4.8", "T4.8: M_2(R)(e,e) over commutative R with 1 a sum of two units of R_e",
              "R commutative, 1 = u + v (u, v in U(R_e)), R graded nil-good", "M_2(R)(e,e) graded nil-good",
              lambda GR, case, budget: _t48(GR, {"n": 2}, budget)),
        _spec("C4.3", "C4.3: M_n(R)(e,...,e) over commutative R with 1 a sum of two units of R_e",
              "R commutative, 1 = u + v (u, v in U(R_e)), R graded nil-good", "M_n(R)(e,...,e) graded nil-good",
              _t48, _matrix_cases),
        _spec("T4.5", "T4.5: rings without unity that equal their Jacobson radical",
              "", "", None, scope=Scope.OUT,
              reason="non-unital rings are outside the unital finite-ring engine"),
        _spec("T4.7", "T4.7: torsion-free grading groups (trivial-group reading only)",
              "G trivial, R local, R_e nil-good", "R graded nil-good", _t47, scope=Scope.PARTIAL,
              reason="the only finite torsion-free group is trivial"),
        _spec("C3.1.literal", "C3.1 read literally: R/J^g(R) graded-nil",
              "R graded nil-good", "J^g(R) graded-nil and R/J^g(R) graded-nil", _c31_literal,
              scope=Scope.AUDIT, discrepancy=True),
        _spec("E4.3", "E4.3: E11 over Z2∝Z2 claimed to have no graded nil-good decomposition",
              "M2(Z2∝Z2)(e,e)", "E11 has no graded nil-good decomposition", _audit_e43,
              scope=Scope.AUDIT, discrepancy=True),
        _spec("E3.3", "E3.3: diag(1,0) in checkerboard M2(Z2) has no same-degree decomposition",
              "checkerboard M2(Z2)", "diag(1,0) has no graded nil-good decomposition", _audit_e33,
              scope=Scope.AUDIT),
    ]
}


def in_scope_ids() -> list[str]:
    return [k for k, t in REGISTRY.items() if t.scope is Scope.IN]


def get_theorem(theorem_id: str) -> TheoremSpec:
    try:
        return REGISTRY[theorem_id]
    except KeyError:
        raise UnknownTheoremId(f"unknown theorem id {theorem_id!r}") from None


# --------------------------------------------------------------------------- evaluation


def replay_bundle(theorem: TheoremSpec, GR: GradedRing, case: dict, witness) -> dict:
    return {
        "theorem": theorem.id,
        "instance": GR.name,
        "recipe": GR.meta.get("recipe", GR.to_json()),
        "ring": GR.to_json(),
        "case": case,
        "element": witness,
    }


def evaluate_case(theorem: TheoremSpec, GR: GradedRing, case: dict, budget: Budget) -> dict:
    out = {"instance": GR.name, "case": case}
    try:
        res = theorem.check(GR, case, budget)
    except (OrderCapExceeded, IdealLatticeCap) as exc:
        out.update(outcome=SKIPPED, note=str(exc))
        return out
    if not res.hypothesis:
        out["outcome"] = VACUOUS
    elif res.conclusion:
        out["outcome"] = HOLDS
    else:
        out["outcome"] = VIOLATED
        out["witness"] = replay_bundle(theorem, GR, case, res.witness)
    if res.note:
        out["note"] = res.note
    return out


def evaluate_instance(theorem: TheoremSpec, GR: GradedRing, budget: Budget) -> list[dict]:
    try:
        cases = (theorem.cases or _single)(GR, budget)
    except (OrderCapExceeded, IdealLatticeCap) as exc:
        return [{"instance": GR.name, "case": {}, "outcome": SKIPPED, "note": str(exc)}]
    return [evaluate_case(theorem, GR, c, budget) for c in cases]


@dataclass
class VerificationReport:
    theorem: TheoremSpec
    outcomes: list[dict] = field(default_factory=list)
    runtime_ms: float = 0.0

    def count(self, outcome: str) -> int:
        return sum(1 for o in self.outcomes if o["outcome"] == outcome)

    @property
    def instances(self) -> int:
        return len({o["instance"] for o in self.outcomes})

    @property
    def non_vacuous(self) -> int:
        return self.count(HOLDS) + self.count(VIOLATED)

    @property
    def violations(self) -> int:
        return self.count(VIOLATED)

    @property
    def discrepancy(self) -> bool:
        return self.theorem.discrepancy and self.violations > 0

    @property
    def passed(self) -> bool:
        if self.theorem.scope is Scope.OUT:
            return True
        if self.theorem.scope is Scope.AUDIT:
            return self.non_vacuous > 0
        return self.violations == 0 and self.non_vacuous > 0

    def to_json(self, timings: bool = False) -> dict:
        d = {
            "theorem": self.theorem.to_json(),
            "instances": self.instances,
            "cases": len(self.outcomes),
            "non_vacuous": self.non_vacuous,
            "violations": self.violations,
            "skipped": self.count(SKIPPED),
            "claim_discrepancy": self.discrepancy,
            "passed": self.passed,
            "outcomes": self.outcomes,
        }
        if timings:
            d["runtime_ms"] = round(self.runtime_ms, 1)
        return d


_worker_corpus: list[GradedRing] = []


def _init_worker(recipes: list[tuple[str, dict]]) -> None:
    global _worker_corpus
    from .corpus import build_instance

    _worker_corpus = [build_instance(n, r) for n, r in recipes]


def _work(args) -> list[dict]:
    theorem_id, i, budget = args
    return evaluate_instance(REGISTRY[theorem_id], _worker_corpus[i], budget)


def verify_theorem(
    theorem_id: str,
    corpus: Sequence[GradedRing],
    budget: Budget | None = None,
    workers: int = 1,
) -> VerificationReport:
    theorem = get_theorem(theorem_id)
    budget = budget or Budget()
    report = VerificationReport(theorem)
    start = time.perf_counter()
    if theorem.check is not None:
        if workers > 1 and len(corpus) > 1:
            for chunk in _parallel(theorem.id, corpus, budget, workers):
                report.outcomes.extend(chunk)
        else:
            for GR in corpus:
                report.outcomes.extend(evaluate_instance(theorem, GR, budget))
    report.runtime_ms = (time.perf_counter() - start) * 1000
    return report


def _parallel(theorem_id: str, corpus: Sequence[GradedRing], budget: Budget, workers: int) -> list[list[dict]]:
    recipes = [(GR.name, GR.meta.get("recipe", GR.to_json())) for GR in corpus]
    with ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(recipes,)) as pool:
        return list(pool.map(_work, [(theorem_id, i, budget) for i in range(len(corpus))]))


def verify_all(
    corpus: Sequence[GradedRing],
    ids: Sequence[str] | None = None,
    budget: Budget | None = None,
    workers: int = 1,
) -> list[VerificationReport]:
    budget = budget or Budget()
    ids = list(REGISTRY) if ids is None else list(ids)
    if workers <= 1 or len(corpus) <= 1:
        return [verify_theorem(t, corpus, budget) for t in ids]
    # one pool for the whole suite; each worker evaluates every theorem on its instances
    reports = [VerificationReport(get_theorem(t)) for t in ids]
    start = time.perf_counter()
    recipes = [(GR.name, GR.meta.get("recipe", GR.to_json())) for GR in corpus]
    with ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(recipes,)) as pool:
        results = list(pool.map(_work_all, [(tuple(ids), i, budget) for i in range(len(corpus))]))
    for per_instance in results:
        for rep, outs in zip(reports, per_instance):
            rep.outcomes.extend(outs)
    elapsed = (time.perf_counter() - start) * 1000
    for rep in reports:
        rep.runtime_ms = elapsed / len(reports)
    return reports


def _work_all(args) -> list[list[dict]]:
    ids, i, budget = args
    GR = _worker_corpus[i]
    return [
        evaluate_instance(REGISTRY[t], GR, budget) if REGISTRY[t].check is not None else []
        for t in ids
    ]


def replay(bundle: dict, budget: Budget | None = None) -> dict:
    """Re-evaluate a witness bundle; returns the outcome entry the original run produced."""
    from .corpus import build_instance

    theorem = get_theorem(bundle["theorem"])
    GR = build_instance(bundle["instance"], bundle["recipe"])
    return evaluate_case(theorem, GR, bundle.get("case", {}), budget or Budget())


def report_json(reports: Sequence[VerificationReport], header: dict, timings: bool = False) -> dict:
    return {
        "header": header,
        "theorems": [r.to_json(timings) for r in reports],
        "summary": {
            "passed": all(r.passed for r in reports),
            "theorems": len(reports),
            "violations": sum(r.violations for r in reports if r.theorem.scope is not Scope.AUDIT),
            "discrepancies": [r.theorem.id for r in reports if r.discrepancy],
        },
    }


def report_header(corpus_spec: dict | None, budget: Budget, workers: int | None = None) -> dict:
    h = {"caps": budget.to_json(), "finitizations": list(FINITIZATIONS)}
    if corpus_spec is not None:
        h["corpus"] = corpus_spec
    return h


def render_markdown(reports: Sequence[VerificationReport], header: dict) -> str:
    lines = ["# Theorem verification", ""]
    lines.append("Caps: " + ", ".join(f"{k}={v}" for k, v in sorted(header["caps"].items())))
    lines.append("")
    lines.append("Finitizations:")
    lines += [f"- {f}" for f in header["finitizations"]]
    lines += ["", "| id | anchor | instances | non-vacuous | violations | runtime-ms |", "|---|---|---|---|---|---|"]
    for r in reports:
        flag = " (discrepancy)" if r.discrepancy else ""
        lines.append(
            f"| {r.theorem.id}{flag} | {r.theorem.anchor} | {r.instances} | {r.non_vacuous} "
            f"| {r.violations} | {r.runtime_ms:.0f} |"
        )
    for r in reports:
        bad = [o for o in r.outcomes if o["outcome"] == VIOLATED]
        if bad:
            lines += ["", f"## {r.theorem.id} violations", ""]
            for o in bad:
                lines.append(f"- {o['instance']} case {o['case']}: witness {o['witness']['element']}")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------- counterexample search


def _pred(fn):
    def wrapped(GR: GradedRing) -> tuple[bool, Any]:
        res = fn(GR)
        if isinstance(res, bool):
            return res, None
        return res.holds, _plain(res.counterexample)

    return wrapped


PREDICATES: dict[str, Callable[[GradedRing], tuple[bool, Any]]] = {
    "graded_nil_good": _pred(gng),
    "nil_good": _pred(lambda GR: nil_good(GR.ring)),
    "identity_component_nil_good": _pred(re_nil_good),
    "graded_fine": _pred(lambda GR: is_graded_fine(GR, keep_witnesses=False)),
    "graded_nil": _pred(lambda GR: is_graded_nil(GR)),
    "graded_local": _pred(lambda GR: graded_local(GR, Budget())),
    "commutative": _pred(lambda GR: GR.ring.is_commutative()),
    "nil_clean": _pred(lambda GR: nil_clean(GR.ring)),
    "graded_radical_graded_nil": _pred(lambda GR: radical_graded_nil(GR, Budget())),
    "units_and_nilpotents_homogeneous": _pred(units_and_nilpotents_homogeneous),
}


def _is_field(A: FiniteRing) -> bool:
    return A.order > 1 and int(element_classes(A).unit_mask.sum()) == A.order - 1


def _symbolic_nil_good(S: SymbolicGradedRing) -> tuple[bool | None, Any]:
    # over a field both rings are domains with Nil = 0, and 1+X (resp. X) is not a unit
    if not _is_field(S.base):
        return None, None
    return False, "1+X" if S.kind is Kind.LAURENT else "X"


def _symbolic_gng(S: SymbolicGradedRing) -> tuple[bool, Any]:
    v = symbolic_is_graded_nil_good(S)
    w = None if v.witness is None else f"{S.base.format(v.witness[0])}X^{v.witness[1]}"
    return v.holds, w


SYMBOLIC_PREDICATES: dict[str, Callable[[SymbolicGradedRing], tuple[bool | None, Any]]] = {
    "graded_nil_good": _symbolic_gng,
    "nil_good": _symbolic_nil_good,
    "identity_component_nil_good": lambda S: (nil_good(S.base).holds, None),
    "commutative": lambda S: (S.base.is_commutative(), None),
}

SYMBOLIC_REGISTRY: tuple[tuple[str, dict], ...] = (
    ("Z2[X,X^-1]", {"construct": "laurent", "base": {"cyclic": 2}}),
    ("Z3[X,X^-1]", {"construct": "laurent", "base": {"cyclic": 3}}),
    ("Z2[X]", {"construct": "polynomial", "base": {"cyclic": 2}}),
    ("Z3[X]", {"construct": "polynomial", "base": {"cyclic": 3}}),
)


def _parse_implication(implication: dict) -> tuple[list[str], str]:
    hyp = implication.get("hypothesis", [])
    if isinstance(hyp, str):
        hyp = [hyp]
    concl = implication["conclusion"]
    for name in list(hyp) + [concl]:
        if name not in PREDICATES:
            raise UnknownTheoremId(f"unknown predicate {name!r}")
    return list(hyp), concl


def _symbolic_search(hyp: list[str], concl: str) -> tuple[dict | None, list[str]]:
    from .recipes import build_symbolic

    undecided = []
    for name, recipe in SYMBOLIC_REGISTRY:
        S = build_symbolic(recipe)
        preds = [SYMBOLIC_PREDICATES.get(h) for h in hyp + [concl]]
        if any(p is None for p in preds):
            undecided.append(name)
            continue
        vals = [p(S) for p in preds]
        if any(v[0] is None for v in vals):
            undecided.append(name)
            continue
        if all(v[0] for v in vals[:-1]) and not vals[-1][0]:
            return {"instance": name, "recipe": recipe, "element": vals[-1][1]}, undecided
    return None, undecided


def search_counterexample(implication: dict, corpus: Sequence[GradedRing]) -> dict:
    """First corpus instance satisfying every hypothesis predicate and violating the conclusion.

    The symbolic Laurent/polynomial registry is searched as well, wherever
    its predicates are decidable, and reported under ``symbolic``.
    """
    hyp, concl = _parse_implication(implication)
    result: dict[str, Any] = {
        "implication": {"hypothesis": hyp, "conclusion": concl},
        "corpus_checked": 0,
        "found": False,
        "source": None,
        "corpus_witness": None,
    }
    for GR in corpus:
        result["corpus_checked"] += 1
        if not all(PREDICATES[h](GR)[0] for h in hyp):
            continue
        ok, witness = PREDICATES[concl](GR)
        if not ok:
            result["corpus_witness"] = {
                "instance": GR.name,
                "recipe": GR.meta.get("recipe", GR.to_json()),
                "ring": GR.to_json(),
                "element": witness,
            }
            break
    sym, undecided = _symbolic_search(hyp, concl)
    result["symbolic_witness"] = sym
    result["symbolic_undecided"] = undecided
    if result["corpus_witness"] is not None:
        result.update(found=True, source="corpus")
    elif sym is not None:
        result.update(found=True, source="symbolic")
    return result


# --------------------------------------------------------------------------- audits


def _find(corpus: Sequence[GradedRing], pred, recipe: dict) -> GradedRing:
    for GR in corpus:
        if pred(GR):
            return GR
    return build(recipe)


def audit_example_e4_3(corpus: Sequence[GradedRing] = ()) -> dict:
    """Engine verdict on E11 in M2(Z2∝Z2)(e,e) next to the recorded claim that it has no decomposition."""
    from .corpus import catalog

    recipes = dict(catalog())
    MR = _find(corpus, _is_e43, recipes["M2(Z2∝Z2(g))(e,e)"])
    R = MR.ring
    M = _e43_element(MR)
    w = graded_nil_good_decomposition(MR, M)
    whole = gng(MR)
    base = MR.meta["base"]
    g_comp = [g for g in MR.group if g != MR.e]
    squares_zero = all(
        not any(R.mul(x, x)) for g in g_comp for x in MR.component(g)
    )
    cb = _find(corpus, _is_checkerboard, recipes["M2(Z2) checkerboard"])
    cb_w = graded_nil_good_decomposition(cb, [1, 0, 0, 0])
    published_claim = "E11 with entry (1,0) has no graded nil-good decomposition"
    return {
        "ring": MR.name,
        "element": list(M),
        "published_claim": published_claim,
        "engine": {
            "decomposition": None if w is None else {
                "unit": list(w.unit_part) if w.unit_part is not None else None,
                "nilpotent": list(w.nilpotent_part),
                "degree": w.degree,
            },
            "ring_graded_nil_good": whole.holds,
            "ring_counterexample": _plain(whole.counterexample),
            "homogeneous_checked": whole.checked,
        },
        "base": base.name,
        "off_identity_squares_zero": squares_zero,
        "agrees_with_claim": w is None,
        "discrepancy": w is not None,
        "checkerboard_control": {
            "ring": cb.name,
            "element": [1, 0, 0, 0],
            "decomposition_found": cb_w is not None,
            "agrees_with_claim": cb_w is None,
        },
    }


def radical_identities(GR: GradedRing, budget: Budget | None = None) -> dict:
    """J^g(R) ∩ R_e = J(R_e) and J^g(R) ⊆ J(R), computed independently."""
    budget = budget or Budget()
    R = GR.ring
    Jg = graded_radical(GR, budget)
    J = index_subgroup(R, jacobson_radical(R))
    Re, embed, _ = GR.identity_component
    JRe = R.subgroup([embed(Re.element(i)) for i in sorted(jacobson_radical(Re))])
    lhs = Jg.intersection(GR.components[GR.e])
    return {"intersection": lhs == JRe, "inclusion": Jg <= J}
