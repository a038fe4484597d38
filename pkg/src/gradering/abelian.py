"""Subgroups of finite abelian groups written as Z/m_1 + ... + Z/m_k.

A subgroup S of A = Z^k / D Z^k (D = diag(m)) is stored through the lattice
L = S + D Z^k, in row Hermite normal form.  The HNF is unique, so it doubles
as a hashable canonical key; joins, membership and enumeration all reduce to
integer row operations on k x k matrices.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import prod
from typing import Iterable, Sequence

import numpy as np

Vector = tuple[int, ...]


def hermite_basis(vectors: Iterable[Sequence[int]], orders: Sequence[int]) -> tuple[Vector, ...]:
    """Row HNF of the lattice spanned by ``vectors`` and ``m_i e_i``.

    Returns k upper-triangular rows with positive pivots; entries above each
    pivot are reduced into ``[0, pivot)``.
    """
    k = len(orders)
    rows = [[int(x) % m for x, m in zip(v, orders)] for v in vectors]
    basis: list[list[int]] = []
    for j in range(k):
        rows.append([0] * j + [orders[j]] + [0] * (k - j - 1))
        active = [r for r in rows if r[j]]
        rest = [r for r in rows if not r[j]]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[j]))
            p = active[0]
            nxt = [p]
            for r in active[1:]:
                q = r[j] // p[j]
                r2 = [a - q * b for a, b in zip(r, p)]
                (nxt if r2[j] else rest).append(r2)
            active = nxt
        p = active[0]
        if p[j] < 0:
            p = [-a for a in p]
        basis.append(p)
        # every m_i e_i with i > j is re-added later, so reducing mod m is safe
        rows = [[a % m for a, m in zip(r, orders)] for r in rest]
        rows = [r for r in rows if any(r)]
    for j in range(k):
        piv = basis[j][j]
        for i in range(j):
            q = basis[i][j] // piv
            if q:
                basis[i] = [a - q * b for a, b in zip(basis[i], basis[j])]
    return tuple(tuple(r) for r in basis)


def lattice_coords(basis: Sequence[Sequence[int]], v: Sequence[int]) -> list[int] | None:
    """Integer coordinates c with ``c @ basis == v``, or None if v is outside."""
    v = list(v)
    coords = []
    for j, row in enumerate(basis):
        piv = row[j]
        if v[j] % piv:
            return None
        q = v[j] // piv
        coords.append(q)
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return coords


def diagonalize(matrix: Sequence[Sequence[int]]) -> tuple[list[int], list[list[int]], list[list[int]]]:
    """Diagonalize a square integer matrix by unimodular row/column moves.

    Returns ``(diag, V, V_inv)`` with ``U @ A @ V = diag(diag)`` for some
    unimodular U (not tracked).  Diagonal entries are non-negative; the
    divisibility chain of the Smith form is not enforced because only the
    direct-sum decomposition is needed.
    """
    a = [list(map(int, r)) for r in matrix]
    n = len(a)
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    Vi = [[int(i == j) for j in range(n)] for i in range(n)]

    def col_add(src: int, dst: int, q: int) -> None:
        # column dst += q * column src
        for r in a:
            r[dst] += q * r[src]
        for r in V:
            r[dst] += q * r[src]
        Vi[src] = [x - q * y for x, y in zip(Vi[src], Vi[dst])]

    def col_swap(i: int, j: int) -> None:
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    for t in range(n):
        while True:
            nz = [(abs(a[i][j]), i, j) for i in range(t, n) for j in range(t, n) if a[i][j]]
            if not nz:
                break
            _, i, j = min(nz)
            a[t], a[i] = a[i], a[t]
            col_swap(t, j)
            piv = a[t][t]
            done = True
            for i in range(t + 1, n):
                q = a[i][t] // piv
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = a[t][j] // piv
                if q:
                    col_add(t, j, -q)
                if a[t][j]:
                    done = False
            if done:
                break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
    return [a[i][i] for i in range(n)], V, Vi


@dataclass(frozen=True)
class Subgroup:
    """Subgroup of Z/m_1 + ... + Z/m_k, keyed by its HNF basis."""

    orders: tuple[int, ...]
    basis: tuple[Vector, ...]

    @classmethod
    def generated(cls, orders: Sequence[int], vectors: Iterable[Sequence[int]]) -> "Subgroup":
        orders = tuple(int(m) for m in orders)
        return cls(orders, hermite_basis(vectors, orders))

    @classmethod
    def whole(cls, orders: Sequence[int]) -> "Subgroup":
        k = len(orders)
        return cls.generated(orders, [[int(i == j) for j in range(k)] for i in range(k)])

    @classmethod
    def trivial(cls, orders: Sequence[int]) -> "Subgroup":
        return cls.generated(orders, [])

    @property
    def index(self) -> int:
        return prod(row[j] for j, row in enumerate(self.basis))

    @property
    def order(self) -> int:
        return prod(self.orders) // self.index

    def __len__(self) -> int:
        return self.order

    def __contains__(self, v: Sequence[int]) -> bool:
        v = [int(x) % m for x, m in zip(v, self.orders)]
        return lattice_coords(self.basis, v) is not None

    def __le__(self, other: "Subgroup") -> bool:
        return all(row in other for row in self.basis)

    def __lt__(self, other: "Subgroup") -> bool:
        return self <= other and self.order < other.order

    def join(self, other: "Subgroup") -> "Subgroup":
        return Subgroup.generated(self.orders, self.basis + other.basis)

    def __add__(self, other: "Subgroup") -> "Subgroup":
        return self.join(other)

    def generators(self) -> list[Vector]:
        """Nonzero basis rows reduced mod the orders (a generating set)."""
        out = []
        for row in self.basis:
            v = tuple(x % m for x, m in zip(row, self.orders))
            if any(v):
                out.append(v)
        return out

    @cached_property
    def element_array(self) -> np.ndarray:
        """All elements as an (order, k) int array, in mixed-radix ascending order."""
        k = len(self.orders)
        if k == 0:
            return np.zeros((1, 0), dtype=np.int64)
        counts = [m // row[j] for j, (m, row) in enumerate(zip(self.orders, self.basis))]
        B = np.array(self.basis, dtype=np.int64)
        grids = np.array(list(itertools.product(*[range(c) for c in counts])), dtype=np.int64)
        elems = (grids @ B) % np.array(self.orders, dtype=np.int64)
        weights = radix_weights(self.orders)
        order = np.argsort(elems @ weights, kind="stable")
        return elems[order]

    def elements(self) -> list[Vector]:
        return [tuple(int(x) for x in row) for row in self.element_array]

    def indices(self) -> np.ndarray:
        return np.sort(self.element_array @ radix_weights(self.orders))

    def intersection(self, other: "Subgroup") -> "Subgroup":
        small, big = (self, other) if self.order <= other.order else (other, self)
        return Subgroup.generated(self.orders, [v for v in small.elements() if v in big])

    def cyclic_decomposition(self) -> tuple[list[int], list[Vector], "callable"]:
        """Split the subgroup into cyclic factors.

        Returns ``(orders, generators, coords)`` where ``coords(v)`` gives the
        coefficients of a member v on the generators (reduced mod the orders).
        Trivial factors are dropped.
        """
        k = len(self.orders)
        H = [list(r) for r in self.basis]
        X = [lattice_coords(H, [self.orders[i] * int(i == j) for j in range(k)]) for i in range(k)]
        diag, V, Vi = diagonalize(X)
        keep = [i for i, s in enumerate(diag) if s != 1]
        gens = []
        for i in keep:
            v = [sum(Vi[i][t] * H[t][j] for t in range(k)) % self.orders[j] for j in range(k)]
            gens.append(tuple(v))
        sizes = [diag[i] for i in keep]

        def coords(v: Sequence[int]) -> tuple[int, ...]:
            c = lattice_coords(H, [int(x) % m for x, m in zip(v, self.orders)])
            if c is None:
                raise ValueError(f"{tuple(v)} is not in the subgroup")
            cv = [sum(c[t] * V[t][i] for t in range(k)) for i in range(k)]
            return tuple(cv[i] % diag[i] for i in keep)

        return sizes, gens, coords

    def quotient_decomposition(self) -> tuple[list[int], list[Vector], "callable"]:
        """Cyclic factors of the quotient A/S.

        Returns ``(orders, lifts, project)``: ``lifts[i]`` is a representative
        in A of the i-th quotient generator and ``project(v)`` gives the
        quotient coordinates of v in A.
        """
        k = len(self.orders)
        diag, V, Vi = diagonalize([list(r) for r in self.basis])
        keep = [i for i, s in enumerate(diag) if s != 1]
        lifts = [tuple(Vi[i][j] % self.orders[j] for j in range(k)) for i in keep]
        sizes = [diag[i] for i in keep]

        def project(v: Sequence[int]) -> tuple[int, ...]:
            cv = [sum(int(v[t]) * V[t][i] for t in range(k)) for i in range(k)]
            return tuple(cv[i] % diag[i] for i in keep)

        return sizes, lifts, project


def radix_weights(orders: Sequence[int]) -> np.ndarray:
    """Weights turning a residue vector into its mixed-radix index (first coordinate least significant)."""
    w = np.ones(len(orders), dtype=np.int64)
    for i in range(1, len(orders)):
        w[i] = w[i - 1] * orders[i - 1]
    return w
