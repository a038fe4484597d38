import json
from pathlib import Path

import pytest

from gradering.classify import (
    classify,
    element_classes,
    graded_jacobson_radical,
    graded_nil_good_decomposition,
    homogeneous_right_ideals,
    is_graded_fine,
    is_graded_local,
    is_graded_nil,
    is_graded_nil_good,
    is_nil_clean_ring,
    is_nil_good_ring,
    jacobson_radical,
    nil_good_decomposition,
    quotient_graded,
    WitnessKind,
)
from gradering.corpus import CorpusSpec, build_corpus
from gradering.errors import IdealLatticeCap, NotHomogeneousIdeal, NotTwoSided
from gradering.recipes import build

from oracles import Graded

INSTANCES = Path(__file__).resolve().parents[1] / "instances"
CORPUS = build_corpus(CorpusSpec(cyclic_max=8))
SMALL = [GR for GR in CORPUS if GR.ring.order <= 64]
TINY = [GR for GR in CORPUS if GR.ring.order <= 16 or (GR.ring.order <= 32 and GR.ring.rank <= 3)]


def oracle(GR) -> Graded:
    return Graded(GR.to_json(), cayley=[list(r) for r in GR.group.cayley], identity=GR.e)


def elements(GR, indices):
    return {tuple(int(v) for v in GR.ring.element(int(i))) for i in indices}


def load(name):
    return build(json.loads((INSTANCES / name).read_text()))


@pytest.mark.parametrize("GR", SMALL, ids=lambda GR: GR.name)
def test_classes_radical_and_predicates_match_oracle(GR):
    R = GR.ring
    O = oracle(GR)
    cls = element_classes(R)
    assert set(cls.units) == O.R.units()
    assert set(cls.nilpotents) == O.R.nilpotents()
    assert elements(GR, jacobson_radical(R)) == O.R.jacobson()
    assert is_nil_good_ring(R).holds == O.R.is_nil_good()
    holds, _ = O.is_graded_nil_good()
    res = is_graded_nil_good(GR)
    assert res.holds == holds
    if not holds:
        assert graded_nil_good_decomposition(GR, res.counterexample) is None


@pytest.mark.parametrize("GR", TINY, ids=lambda GR: GR.name)
def test_ideal_lattice_and_graded_radical_match_brute_force(GR):
    O = oracle(GR)
    expected = O.homogeneous_right_ideals()
    got = {frozenset(I.elements) for I in homogeneous_right_ideals(GR)}
    assert got == expected
    assert set(graded_jacobson_radical(GR).elements()) == set(O.graded_jacobson())


@pytest.mark.parametrize("GR", SMALL, ids=lambda GR: GR.name)
def test_witnesses_are_valid_decompositions(GR):
    R = GR.ring
    cls = element_classes(R)
    for w in is_graded_nil_good(GR).witnesses:
        assert GR.degree(w.element) == w.degree
        assert cls.is_nilpotent(w.nilpotent_part)
        if w.kind is WitnessKind.UNIT_PLUS_NILPOTENT:
            assert cls.is_unit(w.unit_part)
            assert R.add(w.unit_part, w.nilpotent_part) == w.element
            assert GR.degree(w.unit_part) == w.degree
            # zero lies in every component
            assert not any(w.nilpotent_part) or GR.degree(w.nilpotent_part) == w.degree


@pytest.mark.parametrize("GR", SMALL, ids=lambda GR: GR.name)
def test_graded_fine_implies_graded_nil_good(GR):
    if is_graded_fine(GR).holds:
        assert is_graded_nil_good(GR).holds


def test_dual_numbers_on_c2():
    GR = load("ex3_1.json")
    report = classify(GR)
    assert report.is_graded_nil_good and report.is_nil_good
    assert report.is_graded_local
    assert report.graded_radical == [(0, 0), (0, 1)]
    assert [w.kind for w in report.witnesses] == [
        WitnessKind.NILPOTENT,
        WitnessKind.UNIT_PLUS_NILPOTENT,
        WitnessKind.NILPOTENT,
    ]
    assert is_graded_nil(GR) is False


def test_checkerboard_matrices_fail_with_diagonal_idempotent():
    GR = load("checkerboard_m2_z2.json")
    res = is_graded_nil_good(GR)
    assert not res.holds
    assert res.counterexample == (1, 0, 0, 0)
    assert is_nil_good_ring(GR.ring).holds
    assert nil_good_decomposition(GR.ring, (1, 0, 0, 0)) is not None


def test_nil_clean_z2_but_not_z3():
    assert is_nil_clean_ring(build({"construct": "cyclic", "n": 2}).ring).holds
    assert not is_nil_clean_ring(build({"construct": "cyclic", "n": 3}).ring).holds


def test_quotient_by_graded_radical():
    GR = load("ex3_1.json")
    J = graded_jacobson_radical(GR)
    Q = quotient_graded(GR, J)
    assert Q.graded.ring.order == 2
    assert Q.representative(Q.project((1, 1))) == (1, 0)
    RG = build({"construct": "group_ring", "base": {"construct": "cyclic", "n": 2, "group": "C2"}})
    with pytest.raises(NotHomogeneousIdeal):
        quotient_graded(RG, RG.ring.two_sided_ideal_of([(1, 1)]))
    M = load("checkerboard_m2_z2.json")
    with pytest.raises(NotTwoSided):
        quotient_graded(M, M.ring.right_ideal_of((1, 0, 0, 0)))


def test_graded_local_and_cap():
    assert not is_graded_local(load("checkerboard_m2_z2.json"))
    with pytest.raises(IdealLatticeCap):
        homogeneous_right_ideals(build({"construct": "cyclic", "n": 30, "group": "C1"}), cap=2)
