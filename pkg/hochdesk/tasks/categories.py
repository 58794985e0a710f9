from __future__ import annotations

import logging
from typing import Any, Dict, List, Optional, Tuple

from ..ainf import (
    AInfCategory,
    ainf_class_is_zero,
    ainf_differential,
    cy_duality_check,
    ks_cat,
    npotency,
    restrict,
    restrict_cochain,
    validate_ainf,
)
from ..errors import InputError, ValidationFailure
from ..utils.formats import render_ainf, verdict, yes_no
from ..utils.io_loader import build_ainf
from . import RunOptions

logger = logging.getLogger(__name__)


def load_category(spec: Any, options: RunOptions) -> AInfCategory:
    c, _, _ = build_ainf(spec)
    report = validate_ainf(c, options.arity)
    if not report.ok:
        raise ValidationFailure(f"A-infinity {report.kind} fails on ({', '.join(report.where)}): {report.message}",
                                report.to_dict())
    return c


def _restricted(c: AInfCategory, options: RunOptions) -> Tuple[AInfCategory, Optional[List[int]]]:
    if not options.objects:
        return c, None
    keep = [c.object_index(name) for name in options.objects]
    sub, _ = restrict(c, keep)
    return sub, keep


def run_check_ainf(spec: Any, options: RunOptions) -> Dict[str, Any]:
    c = load_category(spec, options)
    return {
        "category": spec.name,
        "objects": list(c.objects),
        "morphisms": len(c.morphisms),
        "max_arity": c.max_arity,
        "arity": options.arity,
        "valid": yes_no(True),
    }


def run_ks_cat(spec: Any, options: RunOptions) -> Dict[str, Any]:
    c = load_category(spec, options)
    ks = ks_cat(c, options.xi)
    cocycle = ainf_differential(c, ks).is_zero()
    if not cocycle:
        raise ValidationFailure("ks_cat is not a Hochschild cocycle")
    primitive = ainf_class_is_zero(c, ks, c.zero_weight(), cap=options.cap)
    lengths = sorted({len(t) for _, t in ks.values})
    out: Dict[str, Any] = {
        "category": spec.name,
        "xi": options.xi.name,
        "cocycle": render_ainf(c, ks),
        "lengths": lengths,
        "verdict": verdict(primitive is not None),
    }
    if options.objects:
        sub, keep = _restricted(c, options)
        restricted = restrict_cochain(c, keep, ks)
        same = ks_cat(sub, options.xi).values == restricted.values
        out["restriction"] = {"objects": list(sub.objects), "commutes": yes_no(same),
                              "cocycle": render_ainf(sub, restricted)}
    return out


def run_npotent(spec: Any, options: RunOptions) -> Dict[str, Any]:
    c = load_category(spec, options)
    c, _ = _restricted(c, options)
    n = max(options.n or 1, 1)
    report = npotency(c, n, options.xi, options.cap)
    powers = [{"power": k + 1, "verdict": verdict(zero)} for k, zero in enumerate(report.power_zero)]
    return {
        "category": spec.name,
        "objects": list(c.objects),
        "xi": options.xi.name,
        "n": n,
        "largest": report.largest,
        "powers": powers,
        f"{n}-potent": yes_no(report.potent),
    }


def run_cy_pairing(spec: Any, options: RunOptions) -> Dict[str, Any]:
    c, trace, n = build_ainf(spec)
    if trace is None or n is None:
        raise InputError("cy-pairing needs a trace block in the input")
    report = validate_ainf(c, options.arity)
    if not report.ok:
        raise ValidationFailure(f"A-infinity {report.kind} fails: {report.message}", report.to_dict())
    top = options.degree(n)
    weights = None
    if c.has_weights:
        weights = [options.weight] if options.weight is not None else sorted({m.weight for m in c.morphisms})
    result = cy_duality_check(c, trace, n, (0, top), weights, cap=options.cap)
    rows = []
    for (r, w), dim in sorted(result.cohomology_dims.items()):
        row: Dict[str, Any] = {"degree": r, "cohomology": dim, "homology": result.homology_dims[(r, w)]}
        if w:
            row["weight"] = list(w)
        rows.append(row)
    logger.info(f"CY check on {spec.name or 'category'}: nondegenerate {result.nondegenerate}")
    out: Dict[str, Any] = {
        "category": spec.name,
        "n": n,
        "nondegenerate": yes_no(result.nondegenerate),
        "duality": rows,
        "duality_holds": yes_no(result.duality_holds),
    }
    if result.failure is not None:
        out["degenerate_at"] = result.failure
    return out
