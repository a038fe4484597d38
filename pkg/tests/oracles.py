"""Brute-force reference implementations, written from definitions in plain Python.

They read rings only through their JSON description (structure constants) and
share no code with the engine beyond that.
"""
from __future__ import annotations

import itertools


class Ring:
    def __init__(self, data: dict):
        self.orders = tuple(data["additive_orders"])
        self.unity = tuple(data["unity"])
        self.mul_table = data["mul"]
        self.k = len(self.orders)
        self.elements = [tuple(x) for x in itertools.product(*[range(m) for m in self.orders])]
        self.zero = tuple(0 for _ in self.orders)

    def add(self, x, y):
        return tuple((a + b) % m for a, b, m in zip(x, y, self.orders))

    def neg(self, x):
        return tuple((-a) % m for a, m in zip(x, self.orders))

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        out = [0] * self.k
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b:
                    continue
                for l, c in enumerate(self.mul_table[i][j]):
                    out[l] += a * b * c
        return tuple(v % m for v, m in zip(out, self.orders))

    def units(self) -> set:
        out = set()
        for x in self.elements:
            for y in self.elements:
                if self.mul(x, y) == self.unity and self.mul(y, x) == self.unity:
                    out.add(x)
                    break
        return out

    def is_nilpotent(self, x) -> bool:
        p = x
        for _ in range(len(self.elements) + 1):
            if p == self.zero:
                return True
            p = self.mul(p, x)
        return False

    def nilpotents(self) -> set:
        return {x for x in self.elements if self.is_nilpotent(x)}

    def is_nil_good(self) -> bool:
        U, N = self.units(), self.nilpotents()
        return all(x in N or any(self.sub(x, n) in U for n in N) for x in self.elements)

    def jacobson(self) -> set:
        """J(R) = {x : 1 - a x is a unit for every a}."""
        U = self.units()
        return {
            x for x in self.elements if all(self.sub(self.unity, self.mul(a, x)) in U for a in self.elements)
        }


def cyclic_cayley(name: str) -> list[list[int]]:
    """Cayley table of a named cyclic group 'Cn'."""
    if not (name.startswith("C") and name[1:].isdigit()):
        raise ValueError(f"oracle only knows cyclic names, got {name!r}")
    n = int(name[1:])
    return [[(i + j) % n for j in range(n)] for i in range(n)]


class Graded:
    """Graded ring from engine JSON; the group is given by its Cayley table."""

    def __init__(self, data: dict, cayley=None, identity=0):
        self.R = Ring(data["ring"])
        grp = data["grading"]["group"]
        if cayley is None and "cayley" in grp:
            cayley = grp["cayley"]
            identity = grp.get("identity", 0)
        elif cayley is None:
            cayley = cyclic_cayley(grp["name"])
        self.cayley = cayley
        self.e = identity
        n = len(cayley)
        self.components = []
        for g in range(n):
            gens = [tuple(v) for v in data["grading"]["components"].get(str(g), [])]
            self.components.append(self.span(gens))

    def span(self, gens) -> frozenset:
        S = {self.R.zero}
        frontier = [self.R.zero]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.R.add(x, g)
                    if y not in S:
                        S.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(S)

    def degree(self, x):
        if x == self.R.zero:
            return self.e
        for g, C in enumerate(self.components):
            if x in C:
                return g
        return None

    def homogeneous(self):
        return [x for x in self.R.elements if self.degree(x) is not None]

    def graded_nil_good_failures(self) -> list:
        """Homogeneous elements with no same-degree unit + nilpotent split, in enumeration order."""
        U, N = self.R.units(), self.R.nilpotents()
        bad = []
        for x in self.homogeneous():
            if x in N:
                continue
            C = self.components[self.degree(x)]
            if not any(u in C and self.R.sub(x, u) in C and self.R.sub(x, u) in N for u in U):
                bad.append(x)
        return bad

    def is_graded_nil_good(self) -> tuple[bool, tuple | None]:
        bad = self.graded_nil_good_failures()
        return not bad, (bad[0] if bad else None)

    def all_subgroups(self) -> set:
        """Every additive subgroup; a subgroup of a rank-k group needs at most k generators."""
        found = set()
        els = self.R.elements
        for r in range(0, len(self.R.orders) + 1):
            for gens in itertools.combinations(els, r):
                found.add(self.span(gens))
        return found

    def homogeneous_right_ideals(self) -> set:
        out = set()
        for S in self.all_subgroups():
            if not all(self.R.mul(x, r) in S for x in S for r in self.R.elements):
                continue
            # homogeneous: every homogeneous component of each member lies in S
            if self._is_homogeneous(S):
                out.add(S)
        return out

    def _is_homogeneous(self, S) -> bool:
        parts = [S & C for C in self.components]
        total = {self.R.zero}
        for P in parts:
            total = {self.R.add(a, b) for a in total for b in P}
        return total == set(S)

    def graded_jacobson(self) -> frozenset:
        ideals = self.homogeneous_right_ideals()
        whole = frozenset(self.R.elements)
        proper = [I for I in ideals if I != whole]
        maximal = [I for I in proper if not any(I < J for J in proper)]
        out = whole
        for M in maximal:
            out = out & M
        return out


# ---- 2x2 matrices over Z2∝Z2, elements (a, m) with (a, m)(b, n) = (ab, an + mb)


def base_mul(x, y):
    (a, m), (b, n) = x, y
    return ((a * b) % 2, (a * n + m * b) % 2)


def base_add(x, y):
    return ((x[0] + y[0]) % 2, (x[1] + y[1]) % 2)


def mat_mul(X, Y):
    out = [[(0, 0), (0, 0)], [(0, 0), (0, 0)]]
    for i, j, l in itertools.product(range(2), repeat=3):
        out[i][j] = base_add(out[i][j], base_mul(X[i][l], Y[l][j]))
    return out


def mat_sub(X, Y):
    return [[base_add(X[i][j], Y[i][j]) for j in range(2)] for i in range(2)]  # characteristic 2


BASE = list(itertools.product(range(2), repeat=2))
ALL = [[[a, b], [c, d]] for a, b, c, d in itertools.product(BASE, repeat=4)]
ONE = [[(1, 0), (0, 0)], [(0, 0), (1, 0)]]
ZERO = [[(0, 0), (0, 0)], [(0, 0), (0, 0)]]


def is_unit(X):
    return any(mat_mul(X, Y) == ONE and mat_mul(Y, X) == ONE for Y in ALL)


def is_nil(X):
    P = X
    for _ in range(8):
        if P == ZERO:
            return True
        P = mat_mul(P, X)
    return False


def degree_e(X):
    return all(x[1] == 0 for row in X for x in row)


def e11_decompositions(M):
    """Every U + N split of a 2x2 matrix over Z2∝Z2 with U a unit, N nilpotent, both of degree e."""
    return [
        (U, mat_sub(M, U))
        for U in ALL
        if degree_e(U) and degree_e(mat_sub(M, U)) and is_unit(U) and is_nil(mat_sub(M, U))
    ]
