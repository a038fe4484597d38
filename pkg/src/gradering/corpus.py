"""Deterministic corpus of small graded rings for theorem checks."""
from __future__ import annotations

import itertools
import logging
import random
from dataclasses import asdict, dataclass
from typing import Iterator

from .algebra import FiniteGroup, FiniteRing, named_group
from .errors import GraderingError, OrderCapExceeded
from .graded import GradedRing, validate_grading
from .recipes import Recipe, build

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CorpusSpec:
    catalog: bool = True
    cyclic: bool = True
    cyclic_max: int = 16
    cyclic_groups: tuple[str, ...] = ("C1", "C2")
    truncated: bool = True
    trivial_extensions: bool = True
    matrices: bool = True
    matrix_base_max: int = 9
    group_rings: bool = True
    group_ring_groups: tuple[str, ...] = ("C2", "C4", "C2xC2")
    products: bool = True
    quotients: bool = True
    random_gradings: int = 4
    max_order: int = 6561
    seed: int = 0

    def __post_init__(self):
        if self.max_order < 1 or self.cyclic_max < 1 or self.matrix_base_max < 1:
            raise ValueError("corpus caps must be positive")

    def to_json(self) -> dict:
        d = asdict(self)
        for k in ("cyclic_groups", "group_ring_groups"):
            d[k] = list(d[k])
        return d

    @classmethod
    def from_json(cls, data: dict) -> "CorpusSpec":
        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown corpus field {sorted(unknown)[0]!r}")
        kw = dict(data)
        for k in ("cyclic_groups", "group_ring_groups"):
            if k in kw:
                kw[k] = tuple(kw[k])
        return cls(**kw)


def cyc(n: int, group: str = "C2") -> Recipe:
    return {"construct": "cyclic", "n": n, "group": group}


def trunc(n: int, m: int = 2) -> Recipe:
    return {"construct": "truncated_poly", "base": {"cyclic": n}, "m": m}


def te(base: Recipe, shift: int | None = 1) -> Recipe:
    return {"construct": "trivial_extension", "base": base, "module": {"kind": "regular", "shift": shift}}


def mat(base: Recipe, sigma=(0, 0)) -> Recipe:
    return {"construct": "matrix", "base": base, "n": len(sigma), "sigma": list(sigma)}


def catalog() -> list[tuple[str, Recipe]]:
    return [
        ("Z2[X]/(X^2) on C2", trunc(2)),
        ("M2(Z2) checkerboard", mat(cyc(2), (0, 1))),
        ("Z2∝Z2(g)", te(cyc(2))),
        ("Z4[C2] coarse", {"construct": "group_ring_coarse", "base": cyc(4), "subgroup": [0, 1]}),
        ("M2(Z2∝Z2(g))(e,e)", mat(te(cyc(2)))),
        ("Z3∝Z3(g)", te(cyc(3))),
        ("M2(Z3[X]/(X^2))(e,e)", mat(trunc(3))),
    ]


def _cyclic(spec: CorpusSpec) -> Iterator[tuple[str, Recipe]]:
    for group in spec.cyclic_groups:
        for n in range(2, spec.cyclic_max + 1):
            yield f"Z{n} on {group}", cyc(n, group)


def _truncated(spec: CorpusSpec) -> Iterator[tuple[str, Recipe]]:
    for n, m in [(3, 2), (4, 2), (5, 2), (6, 2), (2, 3), (3, 3), (2, 4)]:
        yield f"Z{n}[X]/(X^{m}) on C{m}", trunc(n, m)


def _trivial_extensions(spec: CorpusSpec) -> Iterator[tuple[str, Recipe]]:
    yield "Z2∝Z2(e)", te(cyc(2), 0)
    yield "Z4∝Z4(g)", te(cyc(4))
    yield "Z6∝Z6(g)", te(cyc(6))
    yield "Z2∝Z2(g) on C4", te(cyc(2, "C4"))
    yield "Z2[X]/(X^2)∝itself(g)", te(trunc(2))


def _matrices(spec: CorpusSpec) -> Iterator[tuple[str, Recipe]]:
    bases = [
        ("Z2", cyc(2), 2),
        ("Z3", cyc(3), 3),
        ("Z4", cyc(4), 4),
        ("Z5", cyc(5), 5),
        ("Z2[X]/(X^2)", trunc(2), 4),
    ]
    for label, base, order in bases:
        if order > spec.matrix_base_max:
            continue
        yield f"M2({label})(e,e)", mat(base)
        if label in ("Z3", "Z2[X]/(X^2)"):
            yield f"M2({label})(e,g)", mat(base, (0, 1))


def _group_rings(spec: CorpusSpec) -> Iterator[tuple[str, Recipe]]:
    for group in spec.group_ring_groups:
        yield f"Z2[{group}]", {"construct": "group_ring", "base": cyc(2, group)}
    if "C2" in spec.group_ring_groups:
        yield "Z3[C2]", {"construct": "group_ring", "base": cyc(3)}
        yield "Z4[C2]", {"construct": "group_ring", "base": cyc(4)}
        yield "(Z2[X]/(X^2))[C2]", {"construct": "group_ring", "base": trunc(2)}
        yield "(Z2[X]/(X^2))[C2] coarse", {"construct": "group_ring_coarse", "base": trunc(2), "subgroup": [0, 1]}
    if "C4" in spec.group_ring_groups:
        yield "Z2[C2] in C4 coarse", {"construct": "group_ring_coarse", "base": cyc(2, "C4"), "subgroup": [0, 2]}


def _products(spec: CorpusSpec) -> Iterator[tuple[str, Recipe]]:
    def prod(*fs):
        return {"construct": "product", "factors": list(fs)}

    yield "Z2 x Z2", prod(cyc(2), cyc(2))
    yield "Z2 x Z3", prod(cyc(2), cyc(3))
    yield "Z2 x Z2[X]/(X^2)", prod(cyc(2), trunc(2))
    yield "Z2[X]/(X^2) x Z3[X]/(X^2)", prod(trunc(2), trunc(3))
    yield "Z4 x Z2∝Z2(g)", prod(cyc(4), te(cyc(2)))


def _quotients(spec: CorpusSpec) -> Iterator[tuple[str, Recipe]]:
    def quo(base, ideal):
        return {"construct": "quotient", "base": base, "ideal": ideal}

    yield "Z2[X]/(X^4) mod x^2", quo(trunc(2, 4), {"generated_by": [[0, 0, 1, 0]]})
    yield "Z2[X]/(X^2) mod graded radical", quo(trunc(2), {"graded_jacobson": True})
    yield "Z4[C2] mod 2", quo({"construct": "group_ring", "base": cyc(4)}, {"generated_by": [[2, 0]]})
    yield "Z8 mod 4", quo(cyc(8), {"generated_by": [[4]]})
    yield "zero ring", quo(cyc(2), {"generated_by": [[1]]})


def generator_gradings(R: FiniteRing, G: FiniteGroup) -> Iterator[GradedRing]:
    """Gradings obtained by assigning each additive generator a degree (bounded enumeration)."""
    for degs in itertools.product(range(G.order), repeat=R.rank):
        comps: dict[int, list] = {}
        for j, g in enumerate(degs):
            comps.setdefault(g, []).append(R.generator(j))
        try:
            yield validate_grading(R, G, comps)
        except GraderingError:
            continue


def _random_gradings(spec: CorpusSpec) -> Iterator[tuple[str, Recipe]]:
    if spec.random_gradings <= 0:
        return
    sources = [
        ("M2(Z2)", mat(cyc(2, "C1"), (0, 0)), ("C2", "C3")),
        ("Z4[C2]", {"construct": "group_ring", "base": cyc(4)}, ("C2", "C4")),
        ("Z2[X]/(X^3)", trunc(2, 3), ("C2", "C3")),
        ("Z2 x Z2[X]/(X^2)", {"construct": "product", "factors": [cyc(2), trunc(2)]}, ("C2",)),
    ]
    pool = []
    for label, recipe, groups in sources:
        R = build(recipe).ring
        for gname in groups:
            G = named_group(gname)
            for GR in generator_gradings(R, G):
                if len(GR.support()) > 1:
                    data = GR.to_json()
                    pool.append((f"{label} on {gname} #{len(pool)}", data))
    rng = random.Random(spec.seed)
    picks = sorted(rng.sample(range(len(pool)), min(spec.random_gradings, len(pool))))
    for i in picks:
        name, data = pool[i]
        data["name"] = name
        yield name, data


def corpus_recipes(spec: CorpusSpec) -> list[tuple[str, Recipe]]:
    families = [
        (spec.catalog, catalog),
        (spec.cyclic, _cyclic),
        (spec.truncated, _truncated),
        (spec.trivial_extensions, _trivial_extensions),
        (spec.matrices, _matrices),
        (spec.group_rings, _group_rings),
        (spec.products, _products),
        (spec.quotients, _quotients),
        (spec.random_gradings > 0, _random_gradings),
    ]
    out: list[tuple[str, Recipe]] = []
    seen = set()
    for enabled, gen in families:
        if not enabled:
            continue
        items = gen() if gen is catalog else gen(spec)
        for name, recipe in items:
            if name in seen:
                continue
            seen.add(name)
            out.append((name, recipe))
    return out


def build_instance(name: str, recipe: Recipe) -> GradedRing:
    GR = build(recipe)
    GR.name = name
    return GR


def build_corpus(spec: CorpusSpec | None = None, skipped: list | None = None) -> list[GradedRing]:
    """Build every enabled instance; over-cap instances are logged and skipped."""
    spec = spec or CorpusSpec()
    out = []
    for name, recipe in corpus_recipes(spec):
        try:
            GR = build_instance(name, recipe)
            if GR.ring.order > spec.max_order:
                raise OrderCapExceeded(f"order {GR.ring.order} exceeds corpus cap {spec.max_order}")
        except OrderCapExceeded as exc:
            log.info("skipping %s: %s", name, exc)
            if skipped is not None:
                skipped.append((name, str(exc)))
            continue
        out.append(GR)
    return out
