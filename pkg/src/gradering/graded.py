"""Group gradings R = (+)_g R_g on finite rings."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import prod
from typing import Iterable, Mapping, Sequence

import numpy as np

from .abelian import Subgroup
from .algebra import Element, FiniteGroup, FiniteRing, group_from_json, ring_from_json
from .errors import GraderingError, NotDirectSum, NotMultiplicative, NotNormal, UnknownGroupElement


@dataclass(frozen=True)
class HomogeneousElement:
    degree: int
    value: Element


@dataclass(eq=False)
class GradedRing:
    """A ring with a validated grading; build through :func:`validate_grading`."""

    ring: FiniteRing
    group: FiniteGroup
    components: tuple[Subgroup, ...]
    name: str = ""
    meta: dict = field(default_factory=dict)

    @property
    def e(self) -> int:
        return self.group.identity

    def component(self, g: int) -> list[Element]:
        self._check_degree(g)
        return self.components[g].elements()

    def component_indices(self, g: int) -> np.ndarray:
        self._check_degree(g)
        return self._component_indices[g]

    @cached_property
    def _component_indices(self) -> tuple[np.ndarray, ...]:
        return tuple(S.indices() for S in self.components)

    def _check_degree(self, g: int) -> None:
        if not 0 <= g < self.group.order:
            raise UnknownGroupElement(f"{g} is not an element of the grading group")

    @cached_property
    def degree_array(self) -> np.ndarray:
        """Degree of each element index; -1 for non-homogeneous, identity for zero."""
        deg = np.full(self.ring.order, -1, dtype=np.int64)
        for g, idx in enumerate(self._component_indices):
            deg[idx] = g
        deg[0] = self.e
        return deg

    def degree(self, x: Sequence[int]) -> int | None:
        d = int(self.degree_array[self.ring.index(x)])
        return None if d < 0 else d

    def is_homogeneous(self, x: Sequence[int]) -> bool:
        return self.degree(x) is not None

    @cached_property
    def homogeneous_indices(self) -> np.ndarray:
        return np.flatnonzero(self.degree_array >= 0)

    def homogeneous_elements(self) -> list[HomogeneousElement]:
        return [
            HomogeneousElement(int(self.degree_array[i]), self.ring.element(int(i)))
            for i in self.homogeneous_indices
        ]

    def support(self) -> set[int]:
        return {g for g, S in enumerate(self.components) if S.order > 1}

    @cached_property
    def _decomposition(self) -> np.ndarray:
        """Row i holds, per degree, the index of the homogeneous part of element i."""
        R = self.ring
        mods = np.array(R.additive_orders, dtype=np.int64)
        sums = np.zeros((1, R.rank), dtype=np.int64)
        parts = np.zeros((1, 0), dtype=np.int64)
        for S in self.components:
            E = S.element_array
            idx = R.indices(E)
            sums = ((sums[:, None, :] + E[None, :, :]) % mods).reshape(len(sums) * len(E), R.rank)
            parts = np.concatenate(
                [np.repeat(parts, len(E), axis=0), np.tile(idx, len(parts))[:, None]], axis=1
            )
        out = np.empty_like(parts)
        out[R.indices(sums)] = parts
        return out

    def decompose(self, x: Sequence[int]) -> dict[int, Element]:
        """Homogeneous components of x (nonzero ones only)."""
        row = self._decomposition[self.ring.index(x)]
        return {g: self.ring.element(int(i)) for g, i in enumerate(row) if i}

    def projection_matrix(self, g: int) -> np.ndarray:
        """Integer matrix P with (y @ P) mod m = the degree-g part of y."""
        R = self.ring
        rows = []
        for j in range(R.rank):
            rows.append(self.decompose(R.generator(j)).get(g, R.zero))
        return np.array(rows, dtype=np.int64).reshape(R.rank, R.rank)

    @cached_property
    def identity_component(self) -> tuple[FiniteRing, callable, callable]:
        """R_e realized as a ring; returns (ring, embed, coords)."""
        return self.ring.subring(self.components[self.e], name=f"({self.name})_e")

    def to_json(self) -> dict:
        comps = {}
        for g, S in enumerate(self.components):
            gens = S.generators()
            if gens:
                comps[str(g)] = [list(v) for v in gens]
        return {
            "ring": self.ring.to_json(),
            "grading": {"group": self.group.to_json(), "components": comps},
            "name": self.name,
        }


def validate_grading(
    ring: FiniteRing,
    group: FiniteGroup,
    components: Mapping[int, Iterable[Sequence[int]]],
    name: str = "",
    meta: dict | None = None,
) -> GradedRing:
    """Check the direct-sum and multiplicativity conditions and build the graded ring.

    ``components`` maps group-element indices to generator lists of R_g;
    omitted keys are zero components.
    """
    gens: dict[int, list[Element]] = {}
    for g, vs in components.items():
        g = int(g)
        if not 0 <= g < group.order:
            raise UnknownGroupElement(f"component key {g} is not an element of a group of order {group.order}")
        gens[g] = [ring.reduce(v) for v in vs]
    subs = tuple(ring.subgroup(gens.get(g, [])) for g in range(group.order))

    total = ring.subgroup([v for S in subs for v in S.generators()])
    if total.order != ring.order:
        missing = next(ring.element(i) for i in range(ring.order) if ring.element(i) not in total)
        raise NotDirectSum(f"components do not span the ring; first missing element {missing}")
    if prod(S.order for S in subs) != ring.order:
        for g in range(group.order):
            for h in range(g):
                common = subs[g].intersection(subs[h])
                if common.order > 1:
                    raise NotDirectSum(
                        f"components {group.label(h)} and {group.label(g)} overlap in {common.generators()[0]}"
                    )
        acc = ring.subgroup([])
        for g in range(group.order):
            common = subs[g].intersection(acc)
            if common.order > 1:
                raise NotDirectSum(
                    f"component {group.label(g)} meets the sum of earlier components in {common.generators()[0]}"
                )
            acc = acc + subs[g]

    for g in range(group.order):
        for h in range(group.order):
            target = subs[group.op(g, h)]
            for x in subs[g].generators():
                for y in subs[h].generators():
                    if ring.mul(x, y) not in target:
                        raise NotMultiplicative(
                            f"x*y not in R_{group.label(group.op(g, h))} for g={group.label(g)}, "
                            f"h={group.label(h)}, x={x}, y={y}"
                        )
    GR = GradedRing(ring, group, subs, name or ring.name, dict(meta or {}))
    if ring.unity not in subs[group.identity]:
        raise GraderingError("unity outside the identity component of a validated grading")
    return GR


def trivial_grading(ring: FiniteRing, group: FiniteGroup, name: str = "") -> GradedRing:
    comps = {group.identity: [ring.generator(i) for i in range(ring.rank)]}
    return validate_grading(ring, group, comps, name=name or f"{ring.name} on {group.name}")


def coarsen(GR: GradedRing, H: Iterable[int]) -> tuple[GradedRing, tuple[int, ...]]:
    """View a G-graded ring as G/H-graded; returns the new ring and the coset projection."""
    G = GR.group
    H = frozenset(H)
    if not G.is_normal(H):
        raise NotNormal(f"{sorted(H)} is not normal")
    Q, proj = G.quotient(H)
    comps: dict[int, list[Element]] = {c: [] for c in range(Q.order)}
    for g in range(G.order):
        comps[proj[g]].extend(GR.components[g].generators())
    out = validate_grading(GR.ring, Q, comps, name=f"{GR.name} over G/H", meta=dict(GR.meta))
    return out, proj


def graded_from_json(data: dict, name: str = "") -> GradedRing:
    ring = ring_from_json(data["ring"])
    grading = data.get("grading")
    if grading is None:
        raise NotDirectSum("graded ring description missing 'grading'")
    group = group_from_json(grading["group"])
    comps = {int(k): v for k, v in grading.get("components", {}).items()}
    return validate_grading(ring, group, comps, name=data.get("name", name))
