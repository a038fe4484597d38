import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gradering.algebra import (
    check_order,
    cyclic_group,
    cyclic_ring,
    direct_product,
    group_from_json,
    make_group,
    make_ring,
    named_group,
    ring_from_json,
)
from gradering.classify import element_classes
from gradering.errors import (
    BadUnity,
    DimensionMismatch,
    EmptyOrders,
    IllDefinedBilinearMap,
    NonAssociative,
    NotAGroup,
    OrderCapExceeded,
)
from gradering.recipes import build_ring

from oracles import Ring

SMALL = [
    {"cyclic": 6},
    {"construct": "truncated_poly", "base": {"cyclic": 2}, "m": 3},
    {"construct": "matrix", "base": {"construct": "cyclic", "n": 2}, "n": 2},
    {"construct": "group_ring", "base": {"construct": "cyclic", "n": 2, "group": "C2xC2"}},
    {"construct": "product", "factors": [{"construct": "cyclic", "n": 4}, {"construct": "cyclic", "n": 3}]},
]
RINGS = [build_ring(r) for r in SMALL]


@st.composite
def ring_and_elements(draw, count=3):
    R = draw(st.sampled_from(RINGS))
    idx = st.integers(0, R.order - 1)
    return R, [R.element(draw(idx)) for _ in range(count)]


@given(ring_and_elements())
def test_ring_axioms(data):
    R, (x, y, z) = data
    assert R.mul(R.mul(x, y), z) == R.mul(x, R.mul(y, z))
    assert R.mul(x, R.add(y, z)) == R.add(R.mul(x, y), R.mul(x, z))
    assert R.mul(R.add(x, y), z) == R.add(R.mul(x, z), R.mul(y, z))
    assert R.mul(R.unity, x) == x == R.mul(x, R.unity)
    assert R.add(x, R.neg(x)) == R.zero


@given(ring_and_elements())
def test_elements_index_round_trip(data):
    R, (x, _, _) = data
    assert R.element(R.index(x)) == x


@pytest.mark.parametrize("R", RINGS, ids=lambda R: R.name)
def test_one_sided_inverse_is_two_sided_and_units_match_oracle(R):
    cls = element_classes(R)
    oracle = Ring(R.to_json())
    assert set(cls.units) == oracle.units()
    assert set(cls.nilpotents) == oracle.nilpotents()
    E = R.elements
    prods = R.indices(R.mul_rows(np.repeat(E, R.order, axis=0), np.tile(E, (R.order, 1))))
    table = prods.reshape(R.order, R.order)
    one = R.index(R.unity)
    for i, j in zip(*np.nonzero(table == one)):
        assert table[j, i] == one


@pytest.mark.parametrize("R", RINGS, ids=lambda R: R.name)
def test_one_plus_nilpotent_is_unit(R):
    cls = element_classes(R)
    for n in cls.nilpotents:
        assert cls.is_unit(R.add(R.unity, n))


def test_canonical_order_first_coordinate_least_significant():
    R = make_ring([2, 3], [1, 1], [[[1, 0], [0, 0]], [[0, 0], [0, 1]]])
    assert [tuple(x) for x in R.elements[:4]] == [(0, 0), (1, 0), (0, 1), (1, 1)]


@pytest.mark.parametrize(
    "orders, unity, mul, exc",
    [
        ([], [], [], EmptyOrders),
        ([2], [1, 0], [[[1]]], DimensionMismatch),
        ([2], [1], [[[1, 0]]], DimensionMismatch),
        ([2], [3], [[[1]]], BadUnity),
        ([2], [0], [[[1]]], BadUnity),
        ([4, 2], [1, 0], [[[1, 0], [0, 1]], [[0, 1], [1, 0]]], IllDefinedBilinearMap),
        ([2], [1], [[[2]]], IllDefinedBilinearMap),
        (
            [2, 2],
            [1, 0],
            [[[1, 0], [0, 1]], [[0, 1], [1, 1]]],
            None,
        ),
    ],
)
def test_ring_validation(orders, unity, mul, exc):
    if exc is None:
        make_ring(orders, unity, mul)  # the field with four elements
    else:
        with pytest.raises(exc):
            make_ring(orders, unity, mul)


def test_non_associative_rejected():
    # g1*g1 = g2 and g2*g2 = g1 but g1*g2 = 0, so (g1 g1) g2 = g1 while g1 (g1 g2) = 0
    mul = [
        [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        [[0, 1, 0], [0, 0, 1], [0, 0, 0]],
        [[0, 0, 1], [0, 0, 0], [0, 1, 0]],
    ]
    with pytest.raises(NonAssociative):
        make_ring([2, 2, 2], [1, 0, 0], mul)


def test_order_cap(monkeypatch):
    monkeypatch.setenv("GRADERING_MAX_ORDER", "10")
    with pytest.raises(OrderCapExceeded):
        check_order(11)
    with pytest.raises(OrderCapExceeded):
        make_ring([4, 4], [1, 0], [[[1, 0], [0, 1]], [[0, 1], [0, 0]]])


def test_ring_json_round_trip():
    R = build_ring(SMALL[2])
    data = json.loads(json.dumps(R.to_json()))
    S = ring_from_json(data)
    assert (S.additive_orders, S.unity, S.table) == (R.additive_orders, R.unity, R.table)
    with pytest.raises(EmptyOrders):
        ring_from_json({"unity": [1], "mul": [[[1]]]})


def test_direct_product_and_ideals():
    R = direct_product([cyclic_ring(2), cyclic_ring(3)])
    assert R.order == 6 and R.unity == (1, 1)
    I = R.two_sided_ideal_of([(1, 0)])
    assert I.order == 2 and R.is_two_sided_ideal(I)
    Q, proj, lift = R.quotient(I)
    assert Q.order == 3
    assert proj(R.unity) == Q.unity


def test_subring_of_identity_component():
    R = build_ring(SMALL[1])
    S = R.subgroup([R.unity])
    sub, embed, coords = R.subring(S)
    assert sub.order == 2
    assert embed(sub.unity) == R.unity


@pytest.mark.parametrize("name, order", [("C4", 4), ("C_2 x C_2", 4), ("D3", 6), ("C1", 1)])
def test_named_groups(name, order):
    G = named_group(name)
    assert G.order == order
    for g in G:
        assert G.op(g, G.inv(g)) == G.identity


def test_group_validation():
    with pytest.raises(NotAGroup):
        make_group([])
    with pytest.raises(NotAGroup):
        make_group([[0, 1], [0, 1]])
    with pytest.raises(NotAGroup):
        make_group([[1, 0], [0, 1]], identity=0)
    with pytest.raises(NotAGroup):
        named_group("Q8")
    # Latin square without associativity
    bad = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(NotAGroup):
        make_group(bad)


def test_group_structure():
    G = named_group("D3")
    assert not G.is_abelian()
    assert len(G.normal_subgroups()) == 3
    Q, proj = G.quotient(G.generated_subgroup([1]))
    assert Q.order == 2
    assert named_group("C4").prime_of_p_group() == 2
    assert named_group("C6").prime_of_p_group() is None
    assert group_from_json(cyclic_group(3).to_json()).order == 3
