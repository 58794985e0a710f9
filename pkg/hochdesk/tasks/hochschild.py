from __future__ import annotations

import logging
from typing import Any, Dict, List

from ..ainf import hochschild_homology_ainf, validate_ainf
from ..algebra import (
    FiniteAlgebra,
    cochain_class_is_zero,
    cup,
    graded_commutator,
    hochschild_cohomology,
    hochschild_homology,
    unit_cochain,
    validate_algebra,
)
from ..errors import InputError, ValidationFailure
from ..kernel import ONE
from ..utils.formats import render_hochschild, verdict, yes_no
from ..utils.io_loader import build_ainf, build_algebra
from . import RunOptions

logger = logging.getLogger(__name__)


def load_algebra(spec: Any) -> FiniteAlgebra:
    """Algebra and tensor inputs, or a one-object category given by from_algebra."""
    if spec.kind == "ainf":
        if spec.from_algebra is None:
            raise InputError("This command needs an algebra; the category has no from_algebra block")
        spec = spec.from_algebra
    a = build_algebra(spec)
    report = validate_algebra(a)
    if not report.ok:
        raise ValidationFailure(f"Invalid algebra: {report.kind} fails at ({', '.join(report.where)})",
                                report.to_dict())
    return a


def run_hh(spec: Any, options: RunOptions) -> Dict[str, Any]:
    a = load_algebra(spec)
    top = options.degree(3)
    result = hochschild_cohomology(a, None, top, options.cap, options.weight)
    rows: List[Dict[str, Any]] = []
    for r, d in enumerate(result.dims):
        row: Dict[str, Any] = {"degree": r, "dimension": d}
        if options.class_index is not None and options.class_index < d:
            row["representative"] = render_hochschild(a, result.representatives[r][options.class_index])
        rows.append(row)
    logger.info(f"HH dims of {spec.name or 'algebra'}: {result.dims}")
    out: Dict[str, Any] = {"algebra": spec.name, "dim": a.dim, "dims": result.dims, "degrees": rows}
    if options.weight is not None:
        out["weight"] = list(options.weight)
    return out


def run_hh_homology(spec: Any, options: RunOptions) -> Dict[str, Any]:
    top = options.degree(3)
    if spec.kind == "ainf":
        c, _, _ = build_ainf(spec)
        report = validate_ainf(c, max(options.arity, c.max_arity))
        if not report.ok:
            raise ValidationFailure(f"Invalid A-infinity category: {report.message}", report.to_dict())
        dims_by_degree = hochschild_homology_ainf(c, 0, top, options.weight, top + 2, options.cap)
        dims = [dims_by_degree[r] for r in range(top + 1)]
    else:
        a = load_algebra(spec)
        dims = hochschild_homology(a, None, top, options.cap).dims
    return {"input": spec.name, "dims": dims,
            "degrees": [{"degree": r, "dimension": d} for r, d in enumerate(dims)]}


def run_cup(spec: Any, options: RunOptions) -> Dict[str, Any]:
    """Cup powers of one HH^p class, p = --max-degree (default 1), power --n.

    The class is also paired with every representative of HH^0..HH^p to test
    graded commutativity up to coboundaries.
    """
    a = load_algebra(spec)
    p = options.degree(1)
    power = max(options.n or 2, 1)
    index = options.class_index or 0
    every = hochschild_cohomology(a, None, p, options.cap).representatives
    reps = every[p]
    if not reps:
        return {"algebra": spec.name, "degree": p, "classes": 0, "power": power, "verdict": verdict(True)}
    if index >= len(reps):
        raise InputError(f"--class-index {index} out of range: HH^{p} has dimension {len(reps)}")
    alpha = reps[index]
    unit_ok = cochain_class_is_zero(a, cup(a, unit_cochain(a), alpha).combine(alpha, -ONE), cap=options.cap)
    result = alpha
    for _ in range(power - 1):
        result = cup(a, result, alpha)
    zero = result.is_zero() or cochain_class_is_zero(a, result, cap=options.cap) is not None
    partners = [other for degree in every for other in degree]
    commutes = all(cochain_class_is_zero(a, graded_commutator(a, alpha, other), cap=options.cap) is not None
                   for other in partners)
    logger.info(f"cup power {power} of HH^{p} class {index}: {verdict(zero)}")
    return {
        "algebra": spec.name,
        "degree": p,
        "classes": len(reps),
        "class_index": index,
        "power": power,
        "alpha": render_hochschild(a, alpha),
        "unit_acts_trivially": yes_no(unit_ok is not None),
        "graded_commutative": yes_no(commutes),
        "commutator_pairs": len(partners),
        "verdict": verdict(zero),
        "representative": render_hochschild(a, result),
    }
