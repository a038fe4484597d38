"""Finite unital rings (structure constants on cyclic generators) and finite groups (Cayley tables)."""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from functools import cached_property
from math import prod
from typing import Iterable, Sequence

import numpy as np

from .abelian import Subgroup, radix_weights
from .errors import (
    BadUnity,
    DimensionMismatch,
    EmptyList,
    EmptyOrders,
    IllDefinedBilinearMap,
    NonAssociative,
    NotAGroup,
    NotASubgroup,
    NotNormal,
    OrderCapExceeded,
)

Element = tuple[int, ...]

DEFAULT_MAX_RING_ORDER = 19683
DEFAULT_MAX_GROUP_ORDER = 64


def max_ring_order() -> int:
    return int(os.environ.get("GRADERING_MAX_ORDER", DEFAULT_MAX_RING_ORDER))


def check_order(n: int, what: str = "ring", cap: int | None = None) -> None:
    cap = max_ring_order() if cap is None else cap
    if n > cap:
        raise OrderCapExceeded(f"{what} of order {n} exceeds the cap {cap}")


# --------------------------------------------------------------------------- groups


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    cayley: tuple[tuple[int, ...], ...]
    identity: int = 0
    labels: tuple[str, ...] | None = None
    name: str = ""

    @property
    def order(self) -> int:
        return len(self.cayley)

    def __len__(self) -> int:
        return self.order

    def __iter__(self):
        return iter(range(self.order))

    def op(self, g: int, h: int) -> int:
        return self.cayley[g][h]

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        return tuple(self.cayley[g].index(self.identity) for g in range(self.order))

    def inv(self, g: int) -> int:
        return self.inverses[g]

    def label(self, g: int) -> str:
        return self.labels[g] if self.labels else str(g)

    def power(self, g: int, n: int) -> int:
        out = self.identity
        for _ in range(n):
            out = self.op(out, g)
        return out

    def element_order(self, g: int) -> int:
        n, x = 1, g
        while x != self.identity:
            x = self.op(x, g)
            n += 1
        return n

    def is_abelian(self) -> bool:
        return all(self.cayley[a][b] == self.cayley[b][a] for a in self for b in self)

    def is_p_group(self, p: int) -> bool:
        n = self.order
        while n % p == 0:
            n //= p
        return n == 1

    def prime_of_p_group(self) -> int | None:
        """The prime p with |G| = p^k (k >= 1), or None (also None for the trivial group)."""
        n = self.order
        for p in range(2, n + 1):
            if n % p == 0:
                return p if self.is_p_group(p) else None
        return None

    def generated_subgroup(self, gens: Iterable[int]) -> frozenset[int]:
        elems = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.op(x, g)
                    if y not in elems:
                        elems.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(elems)

    def is_subgroup(self, H: Iterable[int]) -> bool:
        H = set(H)
        return self.identity in H and all(self.op(a, self.inv(b)) in H for a in H for b in H)

    def is_normal(self, H: Iterable[int]) -> bool:
        H = set(H)
        return all(self.op(self.op(g, h), self.inv(g)) in H for g in self for h in H)

    @cached_property
    def subgroups(self) -> tuple[frozenset[int], ...]:
        """All subgroups, as joins of cyclic subgroups, sorted by (size, members)."""
        cyclic = {self.generated_subgroup([g]) for g in self}
        found = set(cyclic)
        frontier = list(cyclic)
        while frontier:
            nxt = []
            for H in frontier:
                for C in cyclic:
                    if C <= H:
                        continue
                    K = self.generated_subgroup(H | C)
                    if K not in found:
                        found.add(K)
                        nxt.append(K)
            frontier = nxt
        return tuple(sorted(found, key=lambda s: (len(s), sorted(s))))

    def normal_subgroups(self) -> list[frozenset[int]]:
        return [H for H in self.subgroups if self.is_normal(H)]

    def quotient(self, H: Iterable[int]) -> tuple["FiniteGroup", tuple[int, ...]]:
        """Quotient by a normal subgroup; returns (G/H, projection g -> coset index).

        Cosets are numbered by their smallest member, so the coset of the
        identity comes first.
        """
        H = frozenset(H)
        if not self.is_subgroup(H):
            raise NotASubgroup(f"{sorted(H)} is not a subgroup")
        if not self.is_normal(H):
            raise NotNormal(f"{sorted(H)} is not normal")
        cosets: list[frozenset[int]] = []
        proj = [-1] * self.order
        for g in self:
            if proj[g] >= 0:
                continue
            C = frozenset(self.op(g, h) for h in H)
            for x in C:
                proj[x] = len(cosets)
            cosets.append(C)
        table = tuple(
            tuple(proj[self.op(min(A), min(B))] for B in cosets) for A in cosets
        )
        labels = tuple("{" + ",".join(self.label(x) for x in sorted(C)) + "}" for C in cosets)
        Q = make_group(table, identity=proj[self.identity], labels=labels, name=f"{self.name}/H")
        return Q, tuple(proj)

    def to_json(self) -> dict:
        if self.name:
            try:
                if named_group(self.name).cayley == self.cayley:
                    return {"name": self.name}
            except NotAGroup:
                pass
        out = {"cayley": [list(r) for r in self.cayley], "identity": self.identity}
        if self.labels:
            out["labels"] = list(self.labels)
        return out


def make_group(
    table: Sequence[Sequence[int]],
    identity: int = 0,
    labels: Sequence[str] | None = None,
    name: str = "",
    max_order: int = DEFAULT_MAX_GROUP_ORDER,
) -> FiniteGroup:
    n = len(table)
    if n == 0:
        raise NotAGroup("empty Cayley table")
    if n > max_order:
        raise OrderCapExceeded(f"group of order {n} exceeds the cap {max_order}")
    rows = tuple(tuple(int(x) for x in r) for r in table)
    full = set(range(n))
    for i, r in enumerate(rows):
        if len(r) != n:
            raise NotAGroup(f"row {i} has length {len(r)}, expected {n}")
        if set(r) != full:
            raise NotAGroup(f"row {i} is not a permutation (not a Latin square)")
    for j in range(n):
        if {rows[i][j] for i in range(n)} != full:
            raise NotAGroup(f"column {j} is not a permutation (not a Latin square)")
    if not 0 <= identity < n or any(rows[identity][g] != g or rows[g][identity] != g for g in range(n)):
        raise NotAGroup(f"element {identity} is not a two-sided identity")
    for a, b, c in itertools.product(range(n), repeat=3):
        if rows[rows[a][b]][c] != rows[a][rows[b][c]]:
            raise NotAGroup(f"associativity fails on ({a}, {b}, {c})")
    return FiniteGroup(rows, identity, tuple(labels) if labels else None, name)


def cyclic_group(n: int) -> FiniteGroup:
    labels = ["e"] + [f"g^{i}" if i > 1 else "g" for i in range(1, n)]
    return make_group([[(i + j) % n for j in range(n)] for i in range(n)], labels=labels, name=f"C{n}")


def abelian_product(m: int, n: int) -> FiniteGroup:
    elems = list(itertools.product(range(m), range(n)))
    idx = {x: i for i, x in enumerate(elems)}
    table = [[idx[((a + c) % m, (b + d) % n)] for (c, d) in elems] for (a, b) in elems]
    return make_group(table, labels=[f"({a},{b})" for a, b in elems], name=f"C{m}xC{n}")


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the n-gon: r^i s^j stored at index i + n*j (order 2n)."""
    def mul(x, y):
        i, a = x % n, x // n
        j, b = y % n, y // n
        k = (i + j) % n if a == 0 else (i - j) % n
        return k + n * ((a + b) % 2)

    labels = [f"r{i}" if j == 0 else f"r{i}s" for j in range(2) for i in range(n)]
    return make_group([[mul(x, y) for y in range(2 * n)] for x in range(2 * n)], labels=labels, name=f"D{n}")


def named_group(name: str) -> FiniteGroup:
    """Parse 'C4', 'C_4', 'C2xC2', 'C_2 x C_2', 'D3'."""
    key = name.replace("_", "").replace(" ", "")
    parts = key.split("x")
    try:
        if len(parts) == 2 and all(p.startswith("C") for p in parts):
            return abelian_product(int(parts[0][1:]), int(parts[1][1:]))
        if len(parts) == 1 and key.startswith("C"):
            return cyclic_group(int(key[1:]))
        if len(parts) == 1 and key.startswith("D"):
            return dihedral_group(int(key[1:]))
    except ValueError:
        pass
    raise NotAGroup(f"unknown group name {name!r}")


def trivial_group() -> FiniteGroup:
    return cyclic_group(1)


# --------------------------------------------------------------------------- rings


@dataclass(frozen=True, eq=False)
class FiniteRing:
    """Finite unital ring on cyclic additive generators g_0..g_{k-1}.

    ``table[i][j]`` holds the coordinates of g_i * g_j.  Elements are tuples
    of residues; the element with index i is the i-th vector in mixed-radix
    ascending order (first coordinate least significant).
    """

    additive_orders: tuple[int, ...]
    unity: Element
    table: tuple[tuple[Element, ...], ...]
    name: str = ""
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    # ---- basic shape

    @property
    def rank(self) -> int:
        return len(self.additive_orders)

    @cached_property
    def order(self) -> int:
        return prod(self.additive_orders)

    def __len__(self) -> int:
        return self.order

    @property
    def degenerate(self) -> bool:
        return self.order == 1

    @cached_property
    def zero(self) -> Element:
        return (0,) * self.rank

    @cached_property
    def _mods(self) -> np.ndarray:
        return np.array(self.additive_orders, dtype=np.int64)

    @cached_property
    def _C(self) -> np.ndarray:
        k = self.rank
        return np.array(self.table, dtype=np.int64).reshape(k, k, k)

    @cached_property
    def weights(self) -> np.ndarray:
        return radix_weights(self.additive_orders)

    # ---- element indexing

    @cached_property
    def elements(self) -> np.ndarray:
        """All elements as an (order, rank) array in canonical order."""
        check_order(self.order)
        if self.rank == 0:
            return np.zeros((1, 0), dtype=np.int64)
        rev = itertools.product(*[range(m) for m in reversed(self.additive_orders)])
        return np.array(list(rev), dtype=np.int64)[:, ::-1].copy()

    def index(self, x: Sequence[int]) -> int:
        return int(np.dot(np.asarray(x, dtype=np.int64) % self._mods, self.weights)) if self.rank else 0

    def indices(self, X: np.ndarray) -> np.ndarray:
        return (X % self._mods) @ self.weights if self.rank else np.zeros(len(X), dtype=np.int64)

    def element(self, i: int) -> Element:
        return tuple(int(v) for v in self.elements[i])

    def reduce(self, x: Sequence[int]) -> Element:
        self._check(x)
        return tuple(int(a) % m for a, m in zip(x, self.additive_orders))

    def _check(self, x: Sequence[int]) -> None:
        if len(x) != self.rank:
            raise DimensionMismatch(f"element {tuple(x)} has length {len(x)}, ring has {self.rank} generators")

    # ---- arithmetic

    def add(self, x: Sequence[int], y: Sequence[int]) -> Element:
        self._check(x), self._check(y)
        return tuple((a + b) % m for a, b, m in zip(x, y, self.additive_orders))

    def sub(self, x: Sequence[int], y: Sequence[int]) -> Element:
        self._check(x), self._check(y)
        return tuple((a - b) % m for a, b, m in zip(x, y, self.additive_orders))

    def neg(self, x: Sequence[int]) -> Element:
        self._check(x)
        return tuple(-a % m for a, m in zip(x, self.additive_orders))

    def scale(self, n: int, x: Sequence[int]) -> Element:
        self._check(x)
        return tuple((n * a) % m for a, m in zip(x, self.additive_orders))

    def mul(self, x: Sequence[int], y: Sequence[int]) -> Element:
        self._check(x), self._check(y)
        if not self.rank:
            return ()
        xv = np.asarray(x, dtype=np.int64)
        yv = np.asarray(y, dtype=np.int64)
        out = np.einsum("i,j,ijl->l", xv, yv, self._C) % self._mods
        return tuple(int(v) for v in out)

    def pow(self, x: Sequence[int], n: int) -> Element:
        if n < 0:
            raise ValueError("negative exponent")
        result, base = self.unity, tuple(x)
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def mul_rows(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        """Row-wise products X[r] * Y[r]."""
        if not self.rank:
            return np.zeros_like(X)
        return np.einsum("ni,nj,ijl->nl", X, Y, self._C, optimize=True) % self._mods

    def left_matrix(self, x: Sequence[int]) -> np.ndarray:
        """Row j is x * g_j, so that x * y = y @ left_matrix(x)."""
        return np.einsum("i,ijl->jl", np.asarray(x, dtype=np.int64), self._C) % self._mods

    def right_matrix(self, x: Sequence[int]) -> np.ndarray:
        """Row i is g_i * x, so that y * x = y @ right_matrix(x)."""
        return np.einsum("j,ijl->il", np.asarray(x, dtype=np.int64), self._C) % self._mods

    def times_all(self, x: Sequence[int], side: str = "left") -> np.ndarray:
        """Indices of x*y (side='left') or y*x (side='right') for every y in canonical order."""
        M = self.left_matrix(x) if side == "left" else self.right_matrix(x)
        return self.indices(self.elements @ M)

    # ---- predicates and spans

    def is_commutative(self) -> bool:
        k = self.rank
        return all(self.table[i][j] == self.table[j][i] for i in range(k) for j in range(i + 1, k))

    def subgroup(self, vectors: Iterable[Sequence[int]]) -> Subgroup:
        return Subgroup.generated(self.additive_orders, vectors)

    def right_ideal_of(self, x: Sequence[int]) -> Subgroup:
        """xR as an additive subgroup."""
        return self.subgroup(self.left_matrix(x).tolist())

    def left_ideal_of(self, x: Sequence[int]) -> Subgroup:
        return self.subgroup(self.right_matrix(x).tolist())

    def is_right_invertible(self, x: Sequence[int]) -> bool:
        return self.right_ideal_of(x).index == 1

    def generator(self, i: int) -> Element:
        return tuple(int(i == j) % m for j, m in enumerate(self.additive_orders))

    def char_element(self, n: int) -> Element:
        """n * 1."""
        return self.scale(n, self.unity)

    def is_closed_under_mul(self, S: Subgroup, side: str = "right") -> bool:
        gens = S.generators()
        for v in gens:
            for j in range(self.rank):
                g = self.generator(j)
                p = self.mul(v, g) if side == "right" else self.mul(g, v)
                if p not in S:
                    return False
        return True

    def is_right_ideal(self, S: Subgroup) -> bool:
        return self.is_closed_under_mul(S, "right")

    def is_two_sided_ideal(self, S: Subgroup) -> bool:
        return self.is_closed_under_mul(S, "right") and self.is_closed_under_mul(S, "left")

    def two_sided_ideal_of(self, xs: Iterable[Sequence[int]]) -> Subgroup:
        """Smallest two-sided ideal containing xs."""
        S = self.subgroup(list(xs))
        while True:
            new = []
            for v in S.generators():
                for j in range(self.rank):
                    g = self.generator(j)
                    new.append(self.mul(v, g))
                    new.append(self.mul(g, v))
            T = self.subgroup(list(S.generators()) + new)
            if T == S:
                return S
            S = T

    # ---- derived rings

    def subring(self, S: Subgroup, name: str = "") -> tuple["FiniteRing", callable, callable]:
        """Realize an additive subgroup closed under products and containing 1 as a ring.

        Returns ``(ring, embed, coords)``: embed maps subring coordinates to R,
        coords maps members of S to subring coordinates.
        """
        if self.unity not in S:
            raise BadUnity("subring must contain the unity")
        sizes, gens, raw = S.cyclic_decomposition()

        def coords(x: Sequence[int]) -> Element:
            return raw(x) if sizes else (0,)

        def embed(c: Sequence[int]) -> Element:
            v = [0] * self.rank
            for ci, g in zip(c, gens):
                v = [a + ci * b for a, b in zip(v, g)]
            return self.reduce(v)

        table = [[coords(self.mul(a, b)) for b in gens] for a in gens]
        ring = make_ring(sizes, coords(self.unity), table, name=name or f"sub({self.name})", allow_empty=True)
        return ring, embed, coords

    def quotient(self, I: Subgroup, name: str = "") -> tuple["FiniteRing", callable, callable]:
        """R/I for a two-sided ideal I; returns (ring, project, lift)."""
        sizes, lifts, project = I.quotient_decomposition()

        def lift(c: Sequence[int]) -> Element:
            v = [0] * self.rank
            for ci, g in zip(c, lifts):
                v = [a + ci * b for a, b in zip(v, g)]
            return self.reduce(v)

        def proj(x: Sequence[int]) -> Element:
            return project(x) if sizes else (0,)

        table = [[project(self.mul(a, b)) for b in lifts] for a in lifts]
        ring = make_ring(sizes, proj(self.unity), table, name=name or f"{self.name}/I", allow_empty=True)
        return ring, proj, lift

    def to_json(self) -> dict:
        return {
            "additive_orders": list(self.additive_orders),
            "unity": list(self.unity),
            "mul": [[list(c) for c in row] for row in self.table],
        }

    def format(self, x: Sequence[int]) -> str:
        return "(" + ",".join(str(int(a)) for a in x) + ")"


def make_ring(
    additive_orders: Sequence[int],
    unity: Sequence[int],
    mul: Sequence[Sequence[Sequence[int]]],
    name: str = "",
    allow_empty: bool = False,
    max_order: int | None = None,
) -> FiniteRing:
    """Validate a ring description and build the ring.

    Raises the first violated axiom with the offending generators.  An empty
    ``additive_orders`` is the zero ring; it is rejected unless
    ``allow_empty`` (derived constructions such as quotients may produce it).
    """
    orders = tuple(int(m) for m in additive_orders)
    k = len(orders)
    if k == 0 and not allow_empty:
        raise EmptyOrders("additive_orders must be nonempty")
    if k == 0:
        # one representation of the zero ring: Z/1
        orders, k, unity, mul = (1,), 1, [0], [[[0]]]
    if any(m < 1 for m in orders):
        raise EmptyOrders(f"additive orders must be positive: {orders}")
    check_order(prod(orders), cap=max_order)
    if len(unity) != k:
        raise DimensionMismatch(f"unity has length {len(unity)}, expected {k}")
    if len(mul) != k or any(len(row) != k for row in mul):
        raise DimensionMismatch(f"mul must be a {k}x{k} table")
    for i, row in enumerate(mul):
        for j, c in enumerate(row):
            if len(c) != k:
                raise DimensionMismatch(f"mul[{i}][{j}] has length {len(c)}, expected {k}")
            for l, v in enumerate(c):
                if not 0 <= int(v) < orders[l]:
                    raise IllDefinedBilinearMap(f"mul[{i}][{j}] residue {v} out of range mod {orders[l]}")
    for l, v in enumerate(unity):
        if not 0 <= int(v) < orders[l]:
            raise BadUnity(f"unity residue {v} out of range mod {orders[l]}")
    table = tuple(tuple(tuple(int(v) for v in c) for c in row) for row in mul)
    unity_t = tuple(int(v) for v in unity)

    for i in range(k):
        for j in range(k):
            c = table[i][j]
            for m in (orders[i], orders[j]):
                if any((m * v) % mo for v, mo in zip(c, orders)):
                    raise IllDefinedBilinearMap(
                        f"g{i}*g{j} = {c} is not killed by {m} (generators ({i}, {j}))"
                    )
    ring = FiniteRing(orders, unity_t, table, name)
    if k:
        C = ring._C
        left = np.einsum("ijm,mlo->ijlo", C, C) % ring._mods
        right = np.einsum("jlm,imo->ijlo", C, C) % ring._mods
        bad = np.argwhere((left != right).any(axis=-1))
        if len(bad):
            i, j, l = (int(t) for t in bad[0])
            raise NonAssociative(f"(g{i}*g{j})*g{l} != g{i}*(g{j}*g{l}) (generators ({i}, {j}, {l}))")
    for i in range(k):
        g = ring.generator(i)
        if ring.mul(unity_t, g) != g or ring.mul(g, unity_t) != g:
            raise BadUnity(f"unity {unity_t} is not a two-sided identity on generator {i}")
    return ring


def ring_from_json(data: dict, name: str = "") -> FiniteRing:
    for key in ("additive_orders", "unity", "mul"):
        if key not in data:
            raise EmptyOrders(f"ring description missing field {key!r}")
    return make_ring(data["additive_orders"], data["unity"], data["mul"], name=data.get("name", name))


def group_from_json(data: dict) -> FiniteGroup:
    if "name" in data and "cayley" not in data:
        return named_group(data["name"])
    if "cayley" not in data:
        raise NotAGroup("group description needs 'name' or 'cayley'")
    return make_group(data["cayley"], identity=int(data.get("identity", 0)), labels=data.get("labels"))


def cyclic_ring(n: int) -> FiniteRing:
    return make_ring([n], [1 % n], [[[1 % n]]], name=f"Z{n}", allow_empty=(n == 1))


def zero_ring() -> FiniteRing:
    return make_ring([], [], [], name="0", allow_empty=True)


def direct_product(rings: Sequence[FiniteRing], name: str = "") -> FiniteRing:
    if not rings:
        raise EmptyList("direct_product needs at least one ring")
    orders: list[int] = []
    offsets = []
    for R in rings:
        offsets.append(len(orders))
        orders.extend(R.additive_orders)
    k = len(orders)
    table = [[[0] * k for _ in range(k)] for _ in range(k)]
    unity = [0] * k
    for R, off in zip(rings, offsets):
        for i in range(R.rank):
            unity[off + i] = R.unity[i]
            for j in range(R.rank):
                for l, v in enumerate(R.table[i][j]):
                    table[off + i][off + j][off + l] = v
    return make_ring(orders, unity, table, name=name or " x ".join(R.name for R in rings), allow_empty=True)


def product_slices(rings: Sequence[FiniteRing]) -> list[slice]:
    out, off = [], 0
    for R in rings:
        out.append(slice(off, off + R.rank))
        off += R.rank
    return out
