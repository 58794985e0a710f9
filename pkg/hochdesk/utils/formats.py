"""
Exact rendering of scalars, cochains and reports. No decimal output anywhere:
every coefficient is printed as a fraction string over Q(q).
"""
from __future__ import annotations

import json
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd

from ..ainf import AInfCategory, AInfCochain
from ..algebra import FiniteAlgebra, HochschildCochain
from ..cech import CechCochain, CechDatum
from ..kernel import Scalar, SparseVector, render_scalar
from .schemas import Report

TEXT = "text"
JSON = "json"


# ---------- Scalars and vectors ----------

def render_vector(labels: Sequence[str], vec: SparseVector) -> Dict[str, str]:
    return {labels[i]: render_scalar(c) for i, c in sorted(vec.items()) if c}


def render_dense(values: Sequence[Scalar]) -> List[str]:
    return [render_scalar(c) for c in values]


# ---------- Cochains ----------

def render_hochschild(a: FiniteAlgebra, cochain: HochschildCochain,
                      out_labels: Optional[Sequence[str]] = None) -> Dict[str, Dict[str, str]]:
    """{"x,y": {"1": "1/2"}}; the empty input tuple prints as "()"."""
    labels = list(out_labels) if out_labels is not None else list(a.basis)
    out = {}
    for t, vec in sorted(cochain.values.items()):
        rendered = render_vector(labels, vec)
        if rendered:
            out[",".join(a.basis[i] for i in t) or "()"] = rendered
    return out


def render_ainf(c: AInfCategory, cochain: AInfCochain) -> Dict[str, Dict[str, str]]:
    labels = [m.label for m in c.morphisms]
    out = {}
    for (obj, t), vec in sorted(cochain.values.items()):
        rendered = render_vector(labels, vec)
        if rendered:
            key = ",".join(labels[i] for i in t) if t else f"()@{c.objects[obj]}"
            out[key] = rendered
    return out


def _wedge_name(s: Sequence[int]) -> str:
    return "^".join(f"theta{h}" for h in s) or "1"


def render_cech(d: CechDatum, cochain: CechCochain) -> Dict[str, Dict[str, str]]:
    out = {}
    for j, w in sorted(cochain.values.items()):
        chart = d.chart(j)
        parts = {_wedge_name(s): chart.ring.render(el) for s, el in sorted(w.items()) if el}
        if parts:
            out[chart.name] = parts
    return out


def verdict(zero: bool) -> str:
    return "zero" if zero else "nonzero"


def yes_no(flag: bool) -> str:
    return "yes" if flag else "no"


# ---------- Reports ----------

def render_json(report: Report, with_timing: bool = False) -> str:
    """Canonical JSON: sorted keys, and no wall-clock block unless asked for."""
    body = report.model_dump(exclude_none=True, exclude=None if with_timing else {"timing"})
    return json.dumps(body, indent=2, sort_keys=True, ensure_ascii=False, default=str)


def _table(rows: List[Dict[str, Any]]) -> str:
    df = pd.DataFrame(rows)
    for col in df.columns:
        df[col] = df[col].map(lambda v: json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v)
    return df.to_string(index=False)


def _text_lines(key: str, value: Any, indent: str = "") -> List[str]:
    if isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
        lines = [f"{indent}{key}:"]
        lines.extend(indent + "  " + line for line in _table(value).splitlines())
        return lines
    if isinstance(value, dict):
        if not value:
            return [f"{indent}{key}: {{}}"]
        lines = [f"{indent}{key}:"]
        for k, v in value.items():
            lines.extend(_text_lines(str(k), v, indent + "  "))
        return lines
    if isinstance(value, list):
        return [f"{indent}{key}: ({', '.join(str(v) for v in value)})"]
    return [f"{indent}{key}: {value}"]


def render_text(report: Report) -> str:
    lines = [f"command: {report.command}", f"input: {report.input_digest[:16]}"]
    for key, value in report.results.items():
        lines.extend(_text_lines(key, value))
    if report.error is not None:
        lines.append(f"error: {report.error.type}: {report.error.message}")
        for k, v in report.error.details.items():
            lines.append(f"  {k}: {v}")
    if report.timing is not None:
        lines.append(f"elapsed: {report.timing.elapsed_sec:.3f}s")
    return "\n".join(lines)


def render_report(report: Report, fmt: str = TEXT, with_timing: bool = False) -> str:
    if fmt == JSON:
        return render_json(report, with_timing)
    return render_text(report)
