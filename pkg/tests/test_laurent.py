import pytest
from hypothesis import given
from hypothesis import strategies as st

from gradering.algebra import cyclic_ring
from gradering.errors import BaseNotField, NegativeDegreeInPolynomial
from gradering.laurent import (
    HomogeneousClass,
    Kind,
    SymbolicGradedRing,
    symbolic_classify_homogeneous,
    symbolic_is_graded_nil_good,
    symbolic_laurent_nil_good_counterwitness,
    truncated_polynomial,
)
from gradering.recipes import build_ring

from oracles import Ring

BASES = [cyclic_ring(n) for n in (2, 3, 4, 6, 8, 9)] + [
    build_ring({"construct": "truncated_poly", "base": {"cyclic": 2}, "m": 2}),
    build_ring({"construct": "matrix", "base": {"construct": "cyclic", "n": 2}, "n": 2}),
]


def oracle_laurent_gng(A) -> bool:
    """a X^n (n != 0) is u X^n + m X^n with u a unit and m nilpotent, so both cases reduce to A."""
    return Ring(A.to_json()).is_nil_good()


def oracle_polynomial_gng(A) -> bool:
    # for n > 0 no homogeneous unit exists, so every coefficient must be nilpotent
    O = Ring(A.to_json())
    return O.is_nil_good() and O.nilpotents() == set(O.elements)


@pytest.mark.parametrize("A", BASES, ids=lambda A: A.name)
def test_laurent_verdict_matches_oracle(A):
    S = SymbolicGradedRing(A, Kind.LAURENT)
    assert symbolic_is_graded_nil_good(S).holds == oracle_laurent_gng(A)


@pytest.mark.parametrize("A", BASES, ids=lambda A: A.name)
def test_polynomial_verdict_matches_oracle(A):
    S = SymbolicGradedRing(A, Kind.POLYNOMIAL)
    v = symbolic_is_graded_nil_good(S)
    assert v.holds == oracle_polynomial_gng(A)
    if not v.holds:
        a, n = v.witness
        assert symbolic_classify_homogeneous(S, a, n) is HomogeneousClass.NEITHER


@given(st.sampled_from(BASES), st.integers(-5, 5), st.data())
def test_classification_depends_only_on_zero_versus_nonzero_degree(A, n, data):
    a = A.element(data.draw(st.integers(0, A.order - 1)))
    S = SymbolicGradedRing(A, Kind.LAURENT)
    assert symbolic_classify_homogeneous(S, a, n) == symbolic_classify_homogeneous(S, a, 1 if n else 0)
    P = SymbolicGradedRing(A, Kind.POLYNOMIAL)
    if n < 0:
        with pytest.raises(NegativeDegreeInPolynomial):
            symbolic_classify_homogeneous(P, a, n)
    else:
        assert symbolic_classify_homogeneous(P, a, n) == symbolic_classify_homogeneous(P, a, min(n, 1))


def test_laurent_z2_trace_and_counterwitness():
    S = SymbolicGradedRing(cyclic_ring(2), Kind.LAURENT)
    v = symbolic_is_graded_nil_good(S)
    assert v.holds and len(v.trace) == 3
    w = symbolic_laurent_nil_good_counterwitness(S)
    assert w.element == "1+X" and not w.nil_good
    with pytest.raises(BaseNotField):
        symbolic_laurent_nil_good_counterwitness(SymbolicGradedRing(cyclic_ring(4), Kind.LAURENT))
    with pytest.raises(BaseNotField):
        symbolic_laurent_nil_good_counterwitness(SymbolicGradedRing(cyclic_ring(2), Kind.POLYNOMIAL))


def test_polynomial_z2_fails_at_x():
    v = symbolic_is_graded_nil_good(SymbolicGradedRing(cyclic_ring(2), Kind.POLYNOMIAL))
    assert not v.holds
    assert v.witness == ((1,), 1)


def test_truncated_polynomial():
    T = truncated_polynomial(cyclic_ring(3), 3)
    assert T.ring.order == 27 and T.group.order == 3
    x = (0, 1, 0)
    assert T.ring.mul(x, x) == (0, 0, 1)
    assert T.ring.mul(T.ring.mul(x, x), x) == T.ring.zero
    with pytest.raises(ValueError):
        truncated_polynomial(cyclic_ring(2), 1)
