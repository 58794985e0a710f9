from __future__ import annotations

import logging
from typing import Any, Dict, List

from ..algebra import validate_algebra
from ..deform import beta_cocycle, class_of, classes_equal, derivation_class, is_cocycle
from ..errors import ValidationFailure
from ..utils.formats import render_hochschild, verdict, yes_no
from ..utils.io_loader import build_deformation
from . import RunOptions
from .hochschild import load_algebra

logger = logging.getLogger(__name__)


def run_def_class(spec: Any, options: RunOptions) -> Dict[str, Any]:
    deformation, splitting = build_deformation(spec)
    a = deformation.algebra
    report = validate_algebra(a)
    if not report.ok:
        raise ValidationFailure(f"Invalid base algebra: {report.kind} fails", report.to_dict())
    result = class_of(deformation, options.cap)
    rows: List[Dict[str, Any]] = []
    for v, (zero, comp) in enumerate(zip(result.zero, result.cocycle.components)):
        row: Dict[str, Any] = {"direction": v, "verdict": verdict(zero), "beta": render_hochschild(a, comp)}
        primitive = result.primitives[v]
        if primitive is not None:
            row["primitive"] = render_hochschild(a, primitive)
        rows.append(row)
    out: Dict[str, Any] = {
        "deformation": spec.name,
        "vdim": deformation.vdim,
        "cocycle": yes_no(is_cocycle(a, result.cocycle)),
        "classes": rows,
        "verdict": verdict(result.is_zero),
    }
    if splitting is not None:
        other = beta_cocycle(deformation, splitting)
        same, primitives = classes_equal(a, result.cocycle, other, options.cap)
        out["given_splitting"] = {
            "same_class": yes_no(same),
            "difference_primitives": [render_hochschild(a, h) for h in primitives] if same else [],
        }
        logger.info(f"given splitting yields the same class: {same}")
    return out


def run_derivation_class(spec: Any, options: RunOptions) -> Dict[str, Any]:
    a = load_algebra(spec)
    result = derivation_class(a, options.xi, options.cap)
    beta = result.cocycle.components[0]
    out: Dict[str, Any] = {
        "algebra": spec.name,
        "xi": options.xi.name,
        "beta": render_hochschild(a, beta),
        "verdict": verdict(result.is_zero),
    }
    if result.primitives[0] is not None and not beta.is_zero():
        out["primitive"] = render_hochschild(a, result.primitives[0])
    return out
