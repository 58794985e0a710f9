from __future__ import annotations

import logging
from typing import Any, Dict, List

from ..algebra import hochschild_cohomology
from ..diagram import (
    AlgebraDiagram,
    GSCochain,
    diagram_algebra,
    gs_class_is_zero,
    gs_cohomology_dims,
    gs_component_identities,
    gs_derivation_cocycle,
    scct_check,
    validate_diagram,
    vertex_classes,
)
from ..errors import ValidationFailure
from ..utils.formats import render_hochschild, render_vector, verdict, yes_no
from ..utils.io_loader import build_diagram
from . import RunOptions

logger = logging.getLogger(__name__)


def load_diagram(spec: Any) -> AlgebraDiagram:
    d = build_diagram(spec)
    report = validate_diagram(d)
    if not report.ok:
        raise ValidationFailure(f"Invalid diagram: {report.kind} at ({', '.join(map(str, report.where))})",
                                report.to_dict())
    return d


def render_gs(d: AlgebraDiagram, cochain: GSCochain) -> Dict[str, Dict[str, Dict[str, str]]]:
    names = d.poset.elements
    out = {}
    for sigma, comp in sorted(cochain.components.items()):
        rendered = render_hochschild(d.algebras[sigma[-1]], comp, d.algebras[sigma[0]].basis)
        if rendered:
            out["<".join(names[i] for i in sigma)] = rendered
    return out


def _gs_degree(options: RunOptions, default: int) -> int:
    top = options.degree(default)
    return min(top, options.gs_degree_cap) if options.max_degree is None else top


def run_gs_hh(spec: Any, options: RunOptions) -> Dict[str, Any]:
    d = load_diagram(spec)
    top = _gs_degree(options, 2)
    dims = gs_cohomology_dims(d, top, options.cap, options.gs_degree_cap)
    logger.info(f"GS dims of {spec.name or 'diagram'}: {dims}")
    return {"diagram": spec.name, "elements": list(d.poset.elements), "dims": dims,
            "degrees": [{"degree": r, "dimension": v} for r, v in enumerate(dims)]}


def run_gs_class(spec: Any, options: RunOptions) -> Dict[str, Any]:
    d = load_diagram(spec)
    beta = gs_derivation_cocycle(d, options.xi)
    identities = gs_component_identities(d, beta)
    primitive = gs_class_is_zero(d, beta, options.cap, options.gs_degree_cap)
    out: Dict[str, Any] = {
        "diagram": spec.name,
        "xi": options.xi.name,
        "cocycle": render_gs(d, beta),
        "identities": {name: yes_no(ok) for name, ok in identities.items()},
        "verdict": verdict(primitive is not None),
        "vertex_verdicts": {name: verdict(zero) for name, zero in vertex_classes(d, beta, options.cap).items()},
    }
    if primitive is not None and not beta.is_zero():
        out["primitive"] = render_gs(d, primitive)
    return out


def run_diagram_algebra(spec: Any, options: RunOptions) -> Dict[str, Any]:
    d = load_diagram(spec)
    bang = diagram_algebra(d)
    top = options.degree(2)
    dims = hochschild_cohomology(bang, None, top, options.cap).dims
    products: List[Dict[str, Any]] = []
    for i in range(bang.dim):
        for j in range(bang.dim):
            value = render_vector(bang.basis, bang.mul[i][j])
            if value:
                products.append({"left": bang.basis[i], "right": bang.basis[j], "value": value})
    return {
        "diagram": spec.name,
        "dim": bang.dim,
        "basis": list(bang.basis),
        "unit": render_vector(bang.basis, bang.unit_vector()),
        "products": products,
        "hh_dims": dims,
    }


def run_scct_check(spec: Any, options: RunOptions) -> Dict[str, Any]:
    d = load_diagram(spec)
    top = _gs_degree(options, 2)
    report = scct_check(d, top, options.xi, options.cap, options.gs_degree_cap)
    return {
        "diagram": spec.name,
        "xi": options.xi.name,
        "gs_dims": report.gs_dims,
        "diagram_algebra_dims": report.diagram_algebra_dims,
        "dims_agree": yes_no(report.dims_agree),
        "gs_class": verdict(report.gs_class_zero),
        "diagram_algebra_class": verdict(report.diagram_algebra_class_zero),
        "verdicts_agree": yes_no(report.verdicts_agree),
    }
