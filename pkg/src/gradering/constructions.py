"""Trivial extensions, graded group rings, coarse group rings with augmentation, graded matrix rings."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import prod
from typing import Mapping, Sequence

import numpy as np

from .abelian import Subgroup
from .algebra import Element, FiniteGroup, FiniteRing, check_order, direct_product, make_ring, product_slices
from .classify import element_classes
from .errors import ActionAxiomViolation, SearchBudgetExceeded, TransferIdentityFailed
from .graded import GradedRing, coarsen, validate_grading

# --------------------------------------------------------------------------- trivial extensions


@dataclass(frozen=True)
class GradedBimodule:
    """Finite graded A-bimodule E given on generators.

    ``left[i][j]`` is a_i . e_j and ``right[j][i]`` is e_j . a_i, both as
    coordinate vectors of E.
    """

    base: GradedRing
    orders: tuple[int, ...]
    left: tuple[tuple[Element, ...], ...]
    right: tuple[tuple[Element, ...], ...]
    components: Mapping[int, tuple[Element, ...]]

    @property
    def rank(self) -> int:
        return len(self.orders)

    def act_left(self, a: Sequence[int], m: Sequence[int]) -> Element:
        out = [0] * self.rank
        for i, ai in enumerate(a):
            for j, mj in enumerate(m):
                if ai and mj:
                    out = [o + ai * mj * c for o, c in zip(out, self.left[i][j])]
        return tuple(o % q for o, q in zip(out, self.orders))

    def act_right(self, m: Sequence[int], a: Sequence[int]) -> Element:
        out = [0] * self.rank
        for j, mj in enumerate(m):
            for i, ai in enumerate(a):
                if ai and mj:
                    out = [o + ai * mj * c for o, c in zip(out, self.right[j][i])]
        return tuple(o % q for o, q in zip(out, self.orders))

    def subgroup(self, g: int) -> Subgroup:
        return Subgroup.generated(self.orders, self.components.get(g, ()))


def make_bimodule(
    base: GradedRing,
    orders: Sequence[int],
    left: Sequence[Sequence[Sequence[int]]],
    right: Sequence[Sequence[Sequence[int]]] | None,
    components: Mapping[int, Sequence[Sequence[int]]],
) -> GradedBimodule:
    """Validate the bimodule axioms on generators.

    ``right=None`` derives the right action from the left one, which needs a
    commutative base ring.
    """
    A = base.ring
    orders = tuple(int(m) for m in orders)
    k, r = A.rank, len(orders)
    if right is None:
        if not A.is_commutative():
            raise ActionAxiomViolation("right action can only be derived over a commutative base")
        right = [[left[i][j] for i in range(k)] for j in range(r)]
    left_t = tuple(tuple(tuple(int(v) % q for v, q in zip(c, orders)) for c in row) for row in left)
    right_t = tuple(tuple(tuple(int(v) % q for v, q in zip(c, orders)) for c in row) for row in right)
    comps = {int(g): tuple(tuple(int(v) for v in x) for x in xs) for g, xs in components.items()}
    E = GradedBimodule(base, orders, left_t, right_t, comps)

    gens_A = [A.generator(i) for i in range(k)]
    gens_E = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    for i, a in enumerate(gens_A):
        for j, m in enumerate(gens_E):
            for q in (A.additive_orders[i], orders[j]):
                if any(v for v in E.act_left(A.scale(q, a), m)) or any(v for v in E.act_left(a, [q * x for x in m])):
                    raise ActionAxiomViolation(f"left action a{i}.e{j} not killed by {q}")
                if any(v for v in E.act_right(m, A.scale(q, a))) or any(v for v in E.act_right([q * x for x in m], a)):
                    raise ActionAxiomViolation(f"right action e{j}.a{i} not killed by {q}")
    for m_i, m in enumerate(gens_E):
        if E.act_left(A.unity, m) != m or E.act_right(m, A.unity) != m:
            raise ActionAxiomViolation(f"unity does not act as the identity on e{m_i}")
        for i, a in enumerate(gens_A):
            for j, b in enumerate(gens_A):
                ab = A.mul(a, b)
                if E.act_left(ab, m) != E.act_left(a, E.act_left(b, m)):
                    raise ActionAxiomViolation(f"(a{i}a{j}).e{m_i} != a{i}.(a{j}.e{m_i})")
                if E.act_right(m, ab) != E.act_right(E.act_right(m, a), b):
                    raise ActionAxiomViolation(f"e{m_i}.(a{i}a{j}) != (e{m_i}.a{i}).a{j}")
                if E.act_right(E.act_left(a, m), b) != E.act_left(a, E.act_right(m, b)):
                    raise ActionAxiomViolation(f"(a{i}.e{m_i}).a{j} != a{i}.(e{m_i}.a{j})")
    total = Subgroup.generated(orders, [x for xs in comps.values() for x in xs])
    if total.order != prod(orders) or prod(E.subgroup(g).order for g in base.group) != prod(orders):
        raise ActionAxiomViolation("module components do not form a direct sum decomposition")
    G = base.group
    for h in G:
        for g in G:
            for a in base.components[h].generators():
                for m in E.subgroup(g).generators():
                    if E.act_left(a, m) not in E.subgroup(G.op(h, g)):
                        raise ActionAxiomViolation(f"A_{G.label(h)} E_{G.label(g)} not inside E_{G.label(G.op(h, g))}")
                    if E.act_right(m, a) not in E.subgroup(G.op(g, h)):
                        raise ActionAxiomViolation(f"E_{G.label(g)} A_{G.label(h)} not inside E_{G.label(G.op(g, h))}")
    return E


def regular_bimodule(A: GradedRing, shift: int | None = None) -> GradedBimodule:
    """A as a bimodule over itself with E_x = A_{x s^-1}; the shift s must be central."""
    G = A.group
    s = G.identity if shift is None else shift
    R = A.ring
    k = R.rank
    left = [[R.mul(R.generator(i), R.generator(j)) for j in range(k)] for i in range(k)]
    right = [[R.mul(R.generator(j), R.generator(i)) for i in range(k)] for j in range(k)]
    comps = {x: A.components[G.op(x, G.inv(s))].generators() for x in G}
    return make_bimodule(A, R.additive_orders, left, right, comps)


def zero_bimodule(A: GradedRing) -> GradedBimodule:
    return make_bimodule(A, (), [[] for _ in range(A.ring.rank)], [], {})


def trivial_extension(A: GradedRing, E: GradedBimodule, name: str = "") -> GradedRing:
    """A ⋉ E with (a, m)(b, n) = (ab, an + mb) and grading R_g = A_g + E_g."""
    R = A.ring
    k, r = R.rank, E.rank
    n = k + r
    table = [[[0] * n for _ in range(n)] for _ in range(n)]
    for i in range(k):
        for j in range(k):
            table[i][j][:k] = R.table[i][j]
        for j in range(r):
            table[i][k + j][k:] = E.left[i][j]
            table[k + j][i][k:] = E.right[j][i]
    ring = make_ring(
        R.additive_orders + E.orders,
        R.unity + (0,) * r,
        table,
        name=name or f"{R.name}∝E",
        allow_empty=True,
    )
    comps = {}
    for g in A.group:
        comps[g] = [v + (0,) * r for v in A.components[g].generators()]
        comps[g] += [(0,) * k + tuple(m) for m in E.subgroup(g).generators()]
    meta = {"construction": "trivial_extension", "base": A, "module": E}
    return validate_grading(ring, A.group, comps, name=name or ring.name, meta=meta)


def te_unit_nilpotent_transfer(TE: GradedRing) -> tuple[list[Element], list[Element]]:
    """Check U(A⋉E) = U(A)⋉E and Nil(A⋉E) = Nil(A)⋉E exhaustively; return (U, Nil)."""
    A = TE.meta["base"].ring
    k = A.rank
    cls = element_classes(TE.ring)
    base = element_classes(A)
    a_idx = A.indices(TE.ring.elements[:, :k])
    if not np.array_equal(cls.unit_mask, base.unit_mask[a_idx]):
        bad = int(np.flatnonzero(cls.unit_mask != base.unit_mask[a_idx])[0])
        raise TransferIdentityFailed(f"unit transfer fails at {TE.ring.element(bad)}")
    if not np.array_equal(cls.nil_mask, base.nil_mask[a_idx]):
        bad = int(np.flatnonzero(cls.nil_mask != base.nil_mask[a_idx])[0])
        raise TransferIdentityFailed(f"nilpotent transfer fails at {TE.ring.element(bad)}")
    return cls.units, cls.nilpotents


# --------------------------------------------------------------------------- group rings


def _block(x: Sequence[int], slot: int, k: int, slots: int) -> Element:
    out = [0] * (k * slots)
    out[slot * k : slot * k + k] = x
    return tuple(out)


def group_ring_graded(GR: GradedRing, name: str = "") -> GradedRing:
    """R[G] with (r_a g')(r_b h') = r_a r_b (b^-1 g' b h') and (R[G])_g = sum_h R_{g h^-1} h.

    Element coordinates are the R-coordinates of the coefficient at each
    group element, concatenated in group order.
    """
    R, G = GR.ring, GR.group
    k, n = R.rank, G.order
    check_order(R.order**n, "group ring")
    parts = [GR.decompose(R.generator(t)) for t in range(k)]
    size = k * n
    table = [[[0] * size for _ in range(size)] for _ in range(size)]
    for h1, s in itertools.product(range(n), range(k)):
        for h2, t in itertools.product(range(n), range(k)):
            acc = [0] * size
            for a, ra in parts[s].items():
                for b, rb in parts[t].items():
                    c = R.mul(ra, rb)
                    if not any(c):
                        continue
                    slot = G.op(G.op(G.op(G.inv(b), h1), b), h2)
                    for l in range(k):
                        acc[slot * k + l] += c[l]
            table[h1 * k + s][h2 * k + t] = [v % R.additive_orders[i % k] for i, v in enumerate(acc)]
    ring = make_ring(
        R.additive_orders * n,
        _block(R.unity, G.identity, k, n),
        table,
        name=name or f"({R.name})[{G.name}]",
        allow_empty=True,
    )
    comps = {}
    for g in G:
        comps[g] = [
            _block(v, h, k, n) for h in G for v in GR.components[G.op(g, G.inv(h))].generators()
        ]
    meta = {"construction": "group_ring", "base": GR}
    return validate_grading(ring, G, comps, name=ring.name, meta=meta)


def ordinary_group_ring_product(GR: GradedRing, RG: GradedRing, x: Sequence[int], y: Sequence[int]) -> Element:
    """(sum r_g g)(sum s_h h) = sum r_g s_h gh, computed coefficientwise (oracle for abelian G)."""
    R, G = GR.ring, GR.group
    k, n = R.rank, G.order
    out = [R.zero for _ in range(n)]
    for g in G:
        for h in G:
            c = R.mul(x[g * k : g * k + k], y[h * k : h * k + k])
            s = G.op(g, h)
            out[s] = R.add(out[s], c)
    return tuple(v for blk in out for v in blk)


def identity_component_map(GR: GradedRing, RG: GradedRing, x: Sequence[int]) -> Element:
    """f(sum r_g) = sum r_g g^-1, mapping R into (R[G])_e."""
    R, G = GR.ring, GR.group
    out = [0] * (R.rank * G.order)
    for g, r in GR.decompose(x).items():
        slot = G.inv(g)
        for l, v in enumerate(r):
            out[slot * R.rank + l] = v
    return tuple(out)


@dataclass(eq=False)
class CoarseGroupRing:
    graded: GradedRing  # R[H], G/H-graded
    base: GradedRing  # R, G/H-graded (coarsened)
    subgroup: tuple[int, ...]
    augmentation_ideal: Subgroup

    def augmentation(self, x: Sequence[int]) -> Element:
        R = self.base.ring
        k = R.rank
        out = R.zero
        for s in range(len(self.subgroup)):
            out = R.add(out, tuple(x[s * k : s * k + k]))
        return out


def group_ring_coarse(GR: GradedRing, H, name: str = "") -> CoarseGroupRing:
    """R[H] with the ordinary product, graded by G/H through deg(r h) = coset(deg r)."""
    G = GR.group
    H = tuple(sorted(H))
    base, proj = coarsen(GR, H)
    R = GR.ring
    k, n = R.rank, len(H)
    check_order(R.order**n, "group ring")
    pos = {h: i for i, h in enumerate(H)}
    size = k * n
    table = [[[0] * size for _ in range(size)] for _ in range(size)]
    for (a, s), (b, t) in itertools.product(itertools.product(range(n), range(k)), repeat=2):
        slot = pos[G.op(H[a], H[b])]
        row = [0] * size
        row[slot * k : slot * k + k] = R.table[s][t]
        table[a * k + s][b * k + t] = row
    ring = make_ring(
        R.additive_orders * n,
        _block(R.unity, pos[G.identity], k, n),
        table,
        name=name or f"({R.name})[H]",
        allow_empty=True,
    )
    Q = base.group
    comps = {C: [_block(v, s, k, n) for s in range(n) for v in base.components[C].generators()] for C in Q}
    meta = {"construction": "group_ring_coarse", "base": GR, "subgroup": H}
    graded = validate_grading(ring, Q, comps, name=ring.name, meta=meta)
    e = pos[G.identity]
    delta_gens = [
        tuple(a - b for a, b in zip(_block(R.generator(t), s, k, n), _block(R.generator(t), e, k, n)))
        for s in range(n)
        for t in range(k)
        if s != e
    ]
    delta = ring.subgroup(delta_gens)
    if delta.order * R.order != ring.order:
        raise TransferIdentityFailed("augmentation kernel has the wrong size")
    return CoarseGroupRing(graded, base, H, delta)


# --------------------------------------------------------------------------- matrix rings


@dataclass(frozen=True)
class MatrixGradingSpec:
    n: int
    sigma: tuple[int, ...]

    @classmethod
    def uniform(cls, n: int, G: FiniteGroup) -> "MatrixGradingSpec":
        return cls(n, (G.identity,) * n)


def matrix_ring(R: FiniteRing, n: int, name: str = "") -> FiniteRing:
    k = R.rank
    check_order(R.order ** (n * n), "matrix ring")
    size = n * n * k

    def gen(i, j, t):
        return (i * n + j) * k + t

    table = [[[0] * size for _ in range(size)] for _ in range(size)]
    for i, j, s in itertools.product(range(n), range(n), range(k)):
        for l, t in itertools.product(range(n), range(k)):
            row = [0] * size
            base = gen(i, l, 0)
            row[base : base + k] = R.table[s][t]
            table[gen(i, j, s)][gen(j, l, t)] = row
    unity = [0] * size
    for i in range(n):
        unity[gen(i, i, 0) : gen(i, i, 0) + k] = R.unity
    return make_ring(R.additive_orders * (n * n), unity, table, name=name or f"M{n}({R.name})", allow_empty=True)


def matrix_graded(GR: GradedRing, spec: MatrixGradingSpec, name: str = "") -> GradedRing:
    """M_n(R)(sigma): degree-lambda matrices have entry (i,j) in R_{g_i lambda g_j^-1}."""
    G, R = GR.group, GR.ring
    n, k = spec.n, R.rank
    if len(spec.sigma) != n:
        raise ValueError("sigma must have n entries")
    ring = matrix_ring(R, n, name=name)
    comps = {}
    for lam in G:
        gens = []
        for i, j in itertools.product(range(n), range(n)):
            deg = G.op(G.op(spec.sigma[i], lam), G.inv(spec.sigma[j]))
            for v in GR.components[deg].generators():
                x = [0] * (n * n * k)
                x[(i * n + j) * k : (i * n + j) * k + k] = v
                gens.append(tuple(x))
        comps[lam] = gens
    meta = {"construction": "matrix", "base": GR, "n": n, "sigma": tuple(spec.sigma)}
    return validate_grading(ring, G, comps, name=name or f"M{n}({GR.name}){tuple(spec.sigma)}", meta=meta)


def entries(x: Sequence[int], n: int, k: int) -> list[list[Element]]:
    return [[tuple(x[(i * n + j) * k : (i * n + j) * k + k]) for j in range(n)] for i in range(n)]


def from_entries(rows: Sequence[Sequence[Sequence[int]]]) -> Element:
    return tuple(int(v) for row in rows for x in row for v in x)


def lift_entrywise(R: FiniteRing, n: int, S: Subgroup) -> Subgroup:
    """M_n(S) for an additive subgroup S of R, as a subgroup of M_n(R)."""
    k = R.rank
    gens = []
    for i in range(n * n):
        for v in S.generators():
            x = [0] * (n * n * k)
            x[i * k : i * k + k] = v
            gens.append(x)
    return Subgroup.generated(R.additive_orders * (n * n), gens)


@dataclass(frozen=True)
class GoodFormView:
    block: list[list[Element]]
    beta: list[Element]
    gamma: list[Element]
    d: Element

    def reassemble(self) -> list[list[Element]]:
        rows = [list(r) + [b] for r, b in zip(self.block, self.beta)]
        rows.append(list(self.gamma) + [self.d])
        return rows


def good_form_view(rows: Sequence[Sequence[Element]]) -> GoodFormView:
    n = len(rows)
    return GoodFormView(
        [list(r[: n - 1]) for r in rows[: n - 1]],
        [r[n - 1] for r in rows[: n - 1]],
        list(rows[n - 1][: n - 1]),
        rows[n - 1][n - 1],
    )


def is_good_form(rows: Sequence[Sequence[Element]]) -> bool:
    view = good_form_view(rows)
    return any(any(x) for r in view.block for x in r) and any(view.d)


DEFAULT_SIMILARITY_BUDGET = 100_000


@dataclass(frozen=True)
class SimilarityResult:
    V: Element
    conjugate: Element
    unit_corner: bool


def similarity_to_good_form(
    MR: GradedRing, M: Sequence[int], budget: int = DEFAULT_SIMILARITY_BUDGET, unit_corner: bool = False
) -> SimilarityResult | None:
    """First V (canonical order, entries in R_e, invertible) with V M V^-1 in good form.

    With ``unit_corner`` the corner entry must also be a unit of R.
    """
    base: GradedRing = MR.meta["base"]
    n = MR.meta["n"]
    R = base.ring
    k = R.rank
    Re = [tuple(v) for v in base.component(base.e)]
    cls = element_classes(MR.ring)
    base_cls = element_classes(R)
    tried = 0
    for combo in itertools.product(Re, repeat=n * n):
        V = tuple(v for x in combo for v in x)
        if not cls.is_unit(V):
            continue
        tried += 1
        if tried > budget:
            raise SearchBudgetExceeded(f"no good form within {budget} invertible candidates")
        W = MR.ring.mul(MR.ring.mul(V, M), cls.inverse(V))
        rows = entries(W, n, k)
        if is_good_form(rows) and (not unit_corner or base_cls.is_unit(rows[-1][-1])):
            return SimilarityResult(V, W, base_cls.is_unit(rows[-1][-1]))
    return None


def product_graded(factors: Sequence[GradedRing], name: str = "") -> GradedRing:
    """Componentwise product of rings graded by the same group."""
    G = factors[0].group
    ring = direct_product([F.ring for F in factors], name=name)
    slices = product_slices([F.ring for F in factors])
    comps = {g: [] for g in G}
    for F, sl in zip(factors, slices):
        for g in G:
            for v in F.components[g].generators():
                x = [0] * ring.rank
                x[sl] = v
                comps[g].append(tuple(x))
    meta = {"construction": "product", "factors": tuple(factors)}
    return validate_grading(ring, G, comps, name=name or " x ".join(F.name for F in factors), meta=meta)
