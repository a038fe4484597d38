"""Z-graded rings A[X, X^-1] and A[X] over a finite base, handled on homogeneous elements a X^n."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np

from .algebra import Element, FiniteRing, cyclic_group, make_ring
from .classify import element_classes
from .errors import BaseNotField, NegativeDegreeInPolynomial
from .graded import GradedRing, validate_grading


class Kind(str, Enum):
    LAURENT = "laurent"
    POLYNOMIAL = "polynomial"


class HomogeneousClass(str, Enum):
    UNIT = "Unit"
    NILPOTENT = "Nilpotent"
    NEITHER = "Neither"


@dataclass(frozen=True)
class SymbolicGradedRing:
    base: FiniteRing
    kind: Kind


def symbolic_classify_homogeneous(S: SymbolicGradedRing, a: Sequence[int], n: int) -> HomogeneousClass:
    """Classify a X^n.

    (a X^n)^t = a^t X^{tn}, so a X^n is nilpotent iff a is.  In the Laurent
    ring a X^n has inverse a^-1 X^-n when a is a unit; in A[X] a unit must
    have degree 0.  The zero element counts as nilpotent.
    """
    if S.kind is Kind.POLYNOMIAL and n < 0:
        raise NegativeDegreeInPolynomial(f"A[X] has no component of degree {n}")
    cls = element_classes(S.base)
    if cls.is_nilpotent(a):
        return HomogeneousClass.NILPOTENT
    if cls.is_unit(a) and (S.kind is Kind.LAURENT or n == 0):
        return HomogeneousClass.UNIT
    return HomogeneousClass.NEITHER


@dataclass
class SymbolicVerdict:
    holds: bool
    trace: list[str] = field(default_factory=list)
    witness: tuple[Element, int] | None = None


def symbolic_is_graded_nil_good(S: SymbolicGradedRing, degrees: Sequence[int] = (-1, 0, 1)) -> SymbolicVerdict:
    """Decide graded nil-goodness by checking every a X^n.

    Classification of a X^n depends on n only through n = 0 versus n != 0
    (and n < 0 being absent for A[X]), so the listed degrees cover all cases.
    """
    A = S.base
    verdict = SymbolicVerdict(True)
    if A.degenerate:
        verdict.trace.append("zero base ring: every homogeneous element is 0")
        return verdict
    cls = element_classes(A)
    nil = cls.nil_mask
    X = A.elements
    done: dict[bool, tuple[int, int | None]] = {}
    if S.kind is Kind.POLYNOMIAL:
        # positive degrees first: there the witness is X itself
        degrees = sorted(degrees, key=lambda n: n == 0)
    for n in degrees:
        if S.kind is Kind.POLYNOMIAL and n < 0:
            continue
        # a X^n is a homogeneous unit iff a is a unit and (Laurent or n == 0)
        units_here = S.kind is Kind.LAURENT or n == 0
        if units_here not in done:
            units = cls.unit_indices if units_here else np.zeros(0, dtype=np.int64)
            todo = np.flatnonzero(~nil & ~cls.unit_mask) if units_here else np.flatnonzero(~nil)
            bad = None if units_here else A.index(A.unity)
            for i in todo if units_here else ():
                diffs = A.indices((X[i] - X[units]) % A._mods) if len(units) else units
                if not nil[diffs].any():
                    bad = int(i)
                    break
            done[units_here] = (int((~nil).sum()), bad)
        count, bad = done[units_here]
        if bad is not None:
            a = A.element(bad)
            verdict.holds = False
            verdict.witness = (a, n)
            verdict.trace.append(f"{A.format(a)}X^{n}: no homogeneous unit + nilpotent split")
            return verdict
        verdict.trace.append(
            f"degree {n}: {int(nil.sum())} nilpotent coefficients, {count} split as unit + nilpotent"
        )
    return verdict


@dataclass(frozen=True)
class LaurentCounterwitness:
    element: str
    nil_good: bool
    justification: tuple[str, ...]


def _is_field(A: FiniteRing) -> bool:
    cls = element_classes(A)
    return A.order > 1 and int(cls.unit_mask.sum()) == A.order - 1


def symbolic_laurent_nil_good_counterwitness(S: SymbolicGradedRing) -> LaurentCounterwitness:
    """1 + X is not nil-good in F[X, X^-1] for a finite field F."""
    if S.kind is not Kind.LAURENT:
        raise BaseNotField("counterwitness only applies to Laurent rings")
    if not _is_field(S.base):
        raise BaseNotField(f"{S.base.name or 'base'} is not a field; verdict undecided")
    return LaurentCounterwitness(
        "1+X",
        False,
        (
            "base is a field, so A[X,X^-1] is a domain and Nil = {0}",
            "units of a Laurent ring over a field are the monomials uX^n, all homogeneous",
            "1+X has two nonzero components, so it is neither a unit nor nilpotent",
            "with Nil = {0}, 1+X = u + n forces n = 0 and u = 1+X, a contradiction",
        ),
    )


def truncated_polynomial(A: FiniteRing, m: int, name: str = "") -> GradedRing:
    """A[X]/(X^m), graded by C_m with the degree-i component A x^i."""
    if m < 2:
        raise ValueError("m must be at least 2")
    k = A.rank
    size = k * m
    table = [[[0] * size for _ in range(size)] for _ in range(size)]
    for i in range(m):
        for j in range(m):
            if i + j >= m:
                continue
            for s in range(k):
                for t in range(k):
                    row = [0] * size
                    row[(i + j) * k : (i + j) * k + k] = A.table[s][t]
                    table[i * k + s][j * k + t] = row
    unity = list(A.unity) + [0] * (size - k)
    ring = make_ring(
        A.additive_orders * m, unity, table, name=name or f"{A.name}[X]/(X^{m})", allow_empty=True
    )
    G = cyclic_group(m)
    comps = {}
    for i in range(m):
        comps[i] = [tuple(int(t == i * k + s) for t in range(size)) for s in range(k)]
    meta = {"construction": "truncated_poly", "base_ring": A, "m": m}
    return validate_grading(ring, G, comps, name=ring.name, meta=meta)
