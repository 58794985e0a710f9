from __future__ import annotations

import logging
from typing import Any, Dict, List, Tuple

from ..cech import (
    CechDatum,
    LiftedDerivation,
    cech_cohomology,
    hkr_component_check,
    ks_class,
    lift_independence_check,
    max_unipotent,
    validate_cech,
)
from ..errors import InputError, ValidationFailure
from ..utils.formats import render_cech, verdict, yes_no
from ..utils.io_loader import build_cech
from . import RunOptions

logger = logging.getLogger(__name__)


def load_cech(spec: Any, options: RunOptions, need_lifts: bool = False) -> Tuple[CechDatum, LiftedDerivation]:
    d, lifts = build_cech(spec)
    report = validate_cech(d, min(options.window, 3))
    if not report.ok:
        raise ValidationFailure(f"Invalid Cech datum: {report.kind} at ({', '.join(report.where)}): "
                                f"{report.message}", report.to_dict())
    if need_lifts and lifts is None:
        raise InputError("This command needs a lifts block in the input")
    if lifts is not None and lifts.xi.name != options.xi.name:
        logger.info(f"lifts are given for {lifts.xi.name}; --xi {options.xi.name} is ignored")
    return d, lifts


def run_cech_hh(spec: Any, options: RunOptions) -> Dict[str, Any]:
    """H^p of the wedge powers of T for every degree of the cover and a = 0..rank."""
    d, _ = load_cech(spec, options)
    rows: List[Dict[str, Any]] = []
    for a in range(d.rank + 1):
        for p in range(d.top + 1):
            h = cech_cohomology(d, p, options.window, a)
            rows.append({"degree": p, "wedge": a, "dimension": h.dim, "window": h.window,
                         "window_dims": list(h.window_dims), "stable": yes_no(h.stable)})
    return {"datum": spec.name, "rank": d.rank, "cohomology": rows}


def run_cech_ks(spec: Any, options: RunOptions) -> Dict[str, Any]:
    d, lifts = load_cech(spec, options, need_lifts=True)
    ks = ks_class(d, lifts, options.window)
    out: Dict[str, Any] = {
        "datum": spec.name,
        "xi": lifts.xi.name,
        "cocycle": render_cech(d, ks.cocycle),
        "verdict": verdict(ks.zero),
        "window": ks.window,
    }
    if ks.primitive is not None and not ks.cocycle.is_zero():
        out["primitive"] = render_cech(d, ks.primitive)
    difference = lift_independence_check(d, lifts, options.window)
    out["lift_independent"] = yes_no(difference is not None)
    return out


def run_max_unipotent(spec: Any, options: RunOptions) -> Dict[str, Any]:
    d, lifts = load_cech(spec, options, need_lifts=True)
    n = 1 if options.n is None else options.n
    report = max_unipotent(d, lifts, n, options.window)
    return {
        "datum": spec.name,
        "xi": lifts.xi.name,
        "n": n,
        "ks": verdict(report.ks_zero),
        "power": verdict(report.power_zero),
        "maximally_unipotent": yes_no(report.maximal),
        "window": options.window,
    }


def run_hkr_check(spec: Any, options: RunOptions) -> Dict[str, Any]:
    d, lifts = load_cech(spec, options, need_lifts=True)
    report = hkr_component_check(d, lifts, min(options.window, 3))
    out: Dict[str, Any] = {
        "datum": spec.name,
        "xi": lifts.xi.name,
        "antisymmetry_pairs": report.antisymmetry_pairs,
        "antisymmetry": yes_no(report.antisymmetry_ok),
        "edges": [{**e, "ok": yes_no(e["ok"]), "gs_component_zero": yes_no(e["gs_component_zero"])}
                  for e in report.edges],
        "passed": yes_no(report.ok),
    }
    if report.ks_zero is not None:
        out["ks"] = verdict(report.ks_zero)
    return out
