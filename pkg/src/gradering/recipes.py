"""JSON construction recipes: the CLI ``construct`` format, also used to record corpus provenance."""
from __future__ import annotations

from typing import Any

from .algebra import (
    FiniteRing,
    cyclic_ring,
    group_from_json,
    named_group,
    ring_from_json,
)
from .classify import graded_jacobson_radical
from .constructions import (
    MatrixGradingSpec,
    group_ring_coarse,
    group_ring_graded,
    make_bimodule,
    matrix_graded,
    product_graded,
    regular_bimodule,
    trivial_extension,
    zero_bimodule,
)
from .classify import quotient_graded
from .errors import ValidationError
from .graded import GradedRing, coarsen, graded_from_json, trivial_grading
from .laurent import Kind, SymbolicGradedRing, truncated_polynomial

Recipe = dict[str, Any]


def build_ring(spec: Recipe) -> FiniteRing:
    """An ungraded ring: {"cyclic": n}, a ring JSON, or any graded recipe (its ring)."""
    if "cyclic" in spec:
        return cyclic_ring(int(spec["cyclic"]))
    if "additive_orders" in spec:
        return ring_from_json(spec)
    return build(spec).ring


def _group(spec) -> Any:
    if isinstance(spec, str):
        return named_group(spec)
    return group_from_json(spec)


def build(spec: Recipe) -> GradedRing:
    """Build a graded ring from a recipe; the recipe is stored in ``meta['recipe']``."""
    GR = _build(spec)
    GR.meta.setdefault("recipe", spec)
    return GR


def _build(spec: Recipe) -> GradedRing:
    if "ring" in spec and "grading" in spec and "construct" not in spec:
        return graded_from_json(spec)
    kind = spec.get("construct")
    if kind == "cyclic":
        R = cyclic_ring(int(spec["n"]))
        return trivial_grading(R, _group(spec.get("group", "C1")), name=spec.get("name", ""))
    if kind == "trivial_grading":
        return trivial_grading(build_ring(spec["ring"]), _group(spec.get("group", "C1")), name=spec.get("name", ""))
    if kind == "truncated_poly":
        return truncated_polynomial(build_ring(spec["base"]), int(spec.get("m", 2)), name=spec.get("name", ""))
    if kind == "trivial_extension":
        A = build(spec["base"])
        mod = spec.get("module", {"kind": "regular"})
        if mod.get("kind") == "zero":
            E = zero_bimodule(A)
        elif mod.get("kind", "regular") == "regular" and "orders" not in mod:
            E = regular_bimodule(A, mod.get("shift"))
        else:
            comps = {int(g): v for g, v in mod.get("components", {}).items()}
            E = make_bimodule(A, mod["orders"], mod["left"], mod.get("right"), comps)
        return trivial_extension(A, E, name=spec.get("name", ""))
    if kind == "group_ring":
        return group_ring_graded(build(spec["base"]), name=spec.get("name", ""))
    if kind == "group_ring_coarse":
        return group_ring_coarse(build(spec["base"]), spec["subgroup"], name=spec.get("name", "")).graded
    if kind == "matrix":
        base = build(spec["base"])
        n = int(spec.get("n", 2))
        sigma = tuple(spec.get("sigma", [base.e] * n))
        return matrix_graded(base, MatrixGradingSpec(n, sigma), name=spec.get("name", ""))
    if kind == "product":
        return product_graded([build(f) for f in spec["factors"]], name=spec.get("name", ""))
    if kind == "coarsen":
        return coarsen(build(spec["base"]), spec["subgroup"])[0]
    if kind == "quotient":
        base = build(spec["base"])
        ideal = spec.get("ideal", {})
        if ideal.get("graded_jacobson"):
            I = graded_jacobson_radical(base)
        else:
            I = base.ring.two_sided_ideal_of(ideal.get("generated_by", []))
        Q = quotient_graded(base, I, name=spec.get("name", ""))
        Q.graded.meta.update({"construction": "quotient", "base": base, "ideal": I})
        return Q.graded
    raise ValidationError(f"unknown construct {kind!r}")


def build_symbolic(spec: Recipe) -> SymbolicGradedRing:
    kind = spec.get("construct")
    if kind not in ("laurent", "polynomial"):
        raise ValidationError(f"{kind!r} is not a symbolic construct")
    return SymbolicGradedRing(build_ring(spec["base"]), Kind(kind))


def is_symbolic(spec: Recipe) -> bool:
    return spec.get("construct") in ("laurent", "polynomial")
