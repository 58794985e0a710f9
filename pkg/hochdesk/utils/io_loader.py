"""
Fixture readers: JSON text -> validated spec -> domain objects.
Every failure surfaces as InputError (a ValueError) with a short message naming
the JSON position or the field path.
"""
from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from pydantic import ValidationError

from ..ainf import AInfCategory, CYTrace, Morphism, build_category, from_algebra
from ..algebra import FiniteAlgebra, HochschildCochain, tensor_product
from ..cech import CechChart, CechDatum, CechFace, LiftedDerivation
from ..chart_ring import ChartRing, RingDerivation, RingMap
from ..deform import FirstOrderDeformation, Splitting
from ..diagram import AlgebraDiagram, Poset
from ..errors import InputError
from ..kernel import ONE, ZERO, Derivation, ExactMatrix, is_constant, scalar, sparse_add
from .schemas import (
    AInfSpec,
    AlgebraSpec,
    CechSpec,
    DeformationSpec,
    DiagramSpec,
    InputDocument,
    ProductSpec,
    TensorSpec,
)

AlgebraLike = Union[AlgebraSpec, TensorSpec]

# first key present wins
_KIND_KEYS = (
    ("corrections", "deformation"),
    ("poset", "diagram"),
    ("maps", "diagram"),
    ("charts", "cech"),
    ("factors", "tensor"),
    ("mu", "ainf"),
    ("homs", "ainf"),
    ("morphisms", "ainf"),
    ("from_algebra", "ainf"),
    ("basis", "algebra"),
)


# ---------- Helpers ----------

def _read_text(source: Union[str, Path, bytes]) -> str:
    if isinstance(source, (bytes, bytearray)):
        data = bytes(source)
    else:
        path = Path(source)
        if not path.exists():
            raise InputError(f"No such file: {path}")
        data = path.read_bytes()
    for enc in ("utf-8", "utf-8-sig"):
        try:
            return data.decode(enc)
        except UnicodeDecodeError:
            continue
    raise InputError("Failed to decode input as UTF-8")


def _loc(err: Dict[str, Any]) -> str:
    return ".".join(str(p) for p in err.get("loc", ()) if p != "document")


def input_digest(obj: Any) -> str:
    canonical = json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def _index(labels: List[str], label: Any, where: str) -> int:
    if isinstance(label, int):
        if 0 <= label < len(labels):
            return label
        raise InputError(f"{where}: basis index {label} out of range")
    try:
        return labels.index(label)
    except ValueError:
        raise InputError(f"{where}: unknown basis label {label!r}")


def _vector(labels: List[str], spec: Union[Dict[str, Any], List[Any]], where: str) -> Dict[int, Any]:
    if isinstance(spec, list):
        if len(spec) != len(labels):
            raise InputError(f"{where}: expected {len(labels)} coefficients, got {len(spec)}")
        spec = dict(zip(labels, spec))
    out = {}
    for label, coef in spec.items():
        value = scalar(coef)
        if value:
            out[_index(labels, label, where)] = value
    return out


def infer_kind(obj: Dict[str, Any]) -> Dict[str, Any]:
    """Copy of obj with "kind" filled in here and in nested algebra blocks."""
    out = dict(obj)
    if "kind" not in out:
        for key, kind in _KIND_KEYS:
            if key in out:
                out["kind"] = kind
                break
    for key in ("algebra", "from_algebra"):
        if isinstance(out.get(key), dict):
            out[key] = infer_kind(out[key])
    return out


# ---------- Readers ----------

def read_json(source: Union[str, Path, bytes]) -> Dict[str, Any]:
    text = _read_text(source)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"Invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}",
                         {"line": exc.lineno, "column": exc.colno})
    if not isinstance(obj, dict):
        raise InputError("Input must be a JSON object")
    return obj


def parse_document(obj: Dict[str, Any]):
    try:
        return InputDocument.model_validate({"document": infer_kind(obj)}).document
    except ValidationError as exc:
        first = exc.errors()[0]
        raise InputError(f"Invalid input at {_loc(first) or '<root>'}: {first['msg']}",
                         {"field": _loc(first), "errors": len(exc.errors())})


def load_document(source: Union[str, Path, bytes]) -> Tuple[Any, str]:
    """(validated spec, sha256 digest of the canonical JSON)."""
    obj = read_json(source)
    return parse_document(obj), input_digest(obj)


# ---------- Builders ----------

def build_algebra(spec: AlgebraLike) -> FiniteAlgebra:
    if isinstance(spec, TensorSpec):
        out = build_algebra(spec.factors[0])
        for factor in spec.factors[1:]:
            out = tensor_product(out, build_algebra(factor))
        return out
    labels = list(spec.basis)
    if len(set(labels)) != len(labels):
        raise InputError("Algebra basis labels must be distinct")
    n = len(labels)
    unit = _vector(labels, spec.unit, "unit")
    mul: List[List[Dict[int, Any]]] = [[{} for _ in range(n)] for _ in range(n)]
    if spec.mul is not None:
        if spec.products:
            raise InputError("Give either mul or products, not both")
        if len(spec.mul) != n or any(len(row) != n for row in spec.mul):
            raise InputError(f"mul: expected a {n}x{n} table of vectors")
        for i, row in enumerate(spec.mul):
            for j, vec in enumerate(row):
                mul[i][j] = _vector(labels, vec, f"mul.{i}.{j}")
    else:
        given = set()
        for k, prod in enumerate(spec.products):
            i = _index(labels, prod.left, f"products.{k}.left")
            j = _index(labels, prod.right, f"products.{k}.right")
            mul[i][j] = _vector(labels, prod.value, f"products.{k}.value")
            given.add((i, j))
        if len(unit) == 1 and ONE in unit.values():
            (e,) = unit
            for b in range(n):
                if (e, b) not in given:
                    mul[e][b] = {b: ONE}
                if (b, e) not in given:
                    mul[b][e] = {b: ONE}
    if spec.base == "Q":
        coefficients = list(unit.values()) + [v for row in mul for vec in row for v in vec.values()]
        if not all(is_constant(v) for v in coefficients):
            raise InputError("base is Q but a structure constant depends on q")
    degrees = None
    if isinstance(spec.degrees, list):
        if len(spec.degrees) != n:
            raise InputError(f"degrees: expected {n} entries, got {len(spec.degrees)}")
        degrees = tuple(spec.degrees)
    elif spec.degrees is not None:
        degrees = tuple(spec.degrees.get(lab, 0) for lab in labels)
    weights = None
    if spec.weights is not None:
        missing = [lab for lab in labels if lab not in spec.weights]
        if missing:
            raise InputError(f"weights: missing labels {missing}")
        weights = tuple(tuple(spec.weights[lab]) for lab in labels)
    dense_unit = [unit.get(i, ZERO) for i in range(n)]
    dense_mul = [[[mul[i][j].get(k, ZERO) for k in range(n)] for j in range(n)] for i in range(n)]
    return FiniteAlgebra.build(labels, dense_unit, dense_mul, degrees, weights)


def _cochain_from_products(a: FiniteAlgebra, products: List[ProductSpec], where: str) -> HochschildCochain:
    labels = list(a.basis)
    values = {}
    for k, prod in enumerate(products):
        i = _index(labels, prod.left, f"{where}.{k}.left")
        j = _index(labels, prod.right, f"{where}.{k}.right")
        vec = _vector(labels, prod.value, f"{where}.{k}.value")
        if vec:
            values[(i, j)] = vec
    return HochschildCochain(2, values)


def _cochains_from_entries(a: FiniteAlgebra, entries: List[Tuple], vdim: int) -> Tuple[HochschildCochain, ...]:
    labels = list(a.basis)
    values: List[Dict[Tuple[int, int], Dict[int, Any]]] = [{} for _ in range(vdim)]
    for k, (left, right, v, value) in enumerate(entries):
        if not 0 <= v < vdim:
            raise InputError(f"corrections.{k}: V index {v} out of range for vdim {vdim}")
        key = (_index(labels, left, f"corrections.{k}"), _index(labels, right, f"corrections.{k}"))
        target = values[v].setdefault(key, {})
        for b, coef in _vector(labels, value, f"corrections.{k}.value").items():
            sparse_add(target, b, coef)
    return tuple(HochschildCochain(2, {key: vec for key, vec in vals.items() if vec}) for vals in values)


def build_deformation(spec: DeformationSpec) -> Tuple[FirstOrderDeformation, Optional[Splitting]]:
    a = build_algebra(spec.algebra)
    entries = [c for c in spec.corrections if isinstance(c, tuple)]
    if entries:
        vdim = spec.vdim or max(v for _, _, v, _ in entries) + 1
        corrections = _cochains_from_entries(a, entries, vdim)
    else:
        vdim = spec.vdim or len(spec.corrections)
        if vdim == 0:
            raise InputError("corrections: at least one direction of V is required")
        if len(spec.corrections) != vdim:
            raise InputError(f"corrections: expected {vdim} lists, got {len(spec.corrections)}")
        corrections = tuple(_cochain_from_products(a, c, f"corrections.{v}") for v, c in enumerate(spec.corrections))
    deformation = FirstOrderDeformation(a, vdim, corrections)
    splitting = None
    if spec.splitting is not None:
        if len(spec.splitting) != vdim:
            raise InputError(f"splitting: expected {vdim} entries")
        labels = list(a.basis)
        sigma = []
        for v, lifts in enumerate(spec.splitting):
            values = {(_index(labels, lab, f"splitting.{v}"),): _vector(labels, vec, f"splitting.{v}.{lab}")
                      for lab, vec in lifts.items()}
            sigma.append(HochschildCochain(1, {k: vv for k, vv in values.items() if vv}))
        splitting = Splitting.from_sigma(a, sigma)
    return deformation, splitting


def _keyed_maps(spec: DiagramSpec, poset: Poset, algebras: List[FiniteAlgebra]) -> Dict[Tuple[int, int], ExactMatrix]:
    maps = {}
    for key, matrix in spec.maps.items():
        ends = key.split("<")
        if len(ends) != 2:
            raise InputError(f"maps.{key}: key must read 'i<j'")
        i, j = (_element(poset, end.strip(), f"maps.{key}") for end in ends)
        rows, cols = algebras[i].dim, algebras[j].dim
        if len(matrix) != rows or any(len(row) != cols for row in matrix):
            raise InputError(f"maps.{key}: expected a {rows}x{cols} matrix")
        maps[(i, j)] = ExactMatrix.from_dense(matrix, cols)
    return maps


def _element(poset: Poset, ref: Any, where: str) -> int:
    if isinstance(ref, str) and ref not in poset.elements and ref.isdigit():
        ref = int(ref)
    if isinstance(ref, int) and 0 <= ref < poset.size:
        return ref
    if str(ref) in poset.elements:
        return poset.index(str(ref))
    raise InputError(f"{where}: unknown element {ref!r}")


def build_diagram(spec: DiagramSpec) -> AlgebraDiagram:
    if spec.poset is not None and spec.elements:
        raise InputError("Give either poset or elements, not both")
    elements, relations = (spec.poset.elements, spec.poset.relations) if spec.poset is not None \
        else (spec.elements, spec.relations)
    if not elements:
        raise InputError("poset: at least one element is required")
    poset = Poset.build(elements, relations)
    missing = [e for e in poset.elements if e not in spec.algebras]
    if missing:
        raise InputError(f"algebras: missing elements {missing}")
    algebras = [build_algebra(spec.algebras[e]) for e in poset.elements]
    if isinstance(spec.maps, dict):
        return AlgebraDiagram.build(poset, algebras, _keyed_maps(spec, poset, algebras))
    maps: Dict[Tuple[int, int], ExactMatrix] = {}
    for k, m in enumerate(spec.maps):
        if m.source not in poset.elements or m.target not in poset.elements:
            raise InputError(f"maps.{k}: unknown element")
        j, i = poset.index(m.source), poset.index(m.target)
        src, tgt = algebras[j], algebras[i]
        cols = []
        for b, lab in enumerate(src.basis):
            if lab not in m.images:
                raise InputError(f"maps.{k}.images: missing image of {lab!r}")
            cols.append(_vector(list(tgt.basis), m.images[lab], f"maps.{k}.images.{lab}"))
        maps[(i, j)] = ExactMatrix.from_columns(tgt.dim, cols)
    return AlgebraDiagram.build(poset, algebras, maps)


def _hom_morphisms(spec: AInfSpec, objects: List[str]) -> Tuple[List[Morphism], Dict[Tuple[str, str], List[str]]]:
    morphisms, bases = [], {}
    for k, h in enumerate(spec.homs):
        if h.source not in objects or h.target not in objects:
            raise InputError(f"homs.{k}: unknown object")
        if (h.source, h.target) in bases:
            raise InputError(f"homs.{k}: Hom({h.source}, {h.target}) given twice")
        n = len(h.basis)
        for field, values in (("degrees", h.degrees), ("weights", h.weights)):
            if values is not None and len(values) != n:
                raise InputError(f"homs.{k}.{field}: expected {n} entries")
        for b, label in enumerate(h.basis):
            degree = h.degrees[b] if h.degrees is not None else 0
            weight = tuple(h.weights[b]) if h.weights is not None else ()
            morphisms.append(Morphism(label, objects.index(h.source), objects.index(h.target), degree, weight))
        bases[(h.source, h.target)] = list(h.basis)
    return morphisms, bases


def _mu_entry(k: int, entry, bases: Dict[Tuple[str, str], List[str]]) -> Tuple[List[str], Any]:
    if entry.length is not None and entry.length != len(entry.inputs):
        raise InputError(f"mu.{k}: length {entry.length} but {len(entry.inputs)} inputs")
    if entry.chain is None:
        if any(isinstance(i, int) for i in entry.inputs) or isinstance(entry.output, list):
            raise InputError(f"mu.{k}: indices need an object chain")
        return [str(i) for i in entry.inputs], entry.output
    chain = entry.chain
    if len(chain) != len(entry.inputs) + 1:
        raise InputError(f"mu.{k}: chain must list {len(entry.inputs) + 1} objects")

    def basis(x: str, y: str) -> List[str]:
        if (x, y) not in bases:
            raise InputError(f"mu.{k}: no Hom basis for ({x}, {y})")
        return bases[(x, y)]

    inputs = []
    for s, ref in enumerate(entry.inputs):
        labels = basis(chain[s], chain[s + 1])
        inputs.append(labels[_index(labels, ref, f"mu.{k}.inputs.{s}")])
    output = entry.output
    if isinstance(output, list):
        labels = basis(chain[0], chain[-1])
        output = {labels[b]: c for b, c in _vector(labels, output, f"mu.{k}.output").items()}
    return inputs, output


def build_ainf(spec: AInfSpec) -> Tuple[AInfCategory, Optional[CYTrace], Optional[int]]:
    if spec.from_algebra is not None:
        cat = from_algebra(build_algebra(spec.from_algebra), spec.objects[0] if spec.objects else "X")
    else:
        objects = list(spec.objects)
        if not objects:
            raise InputError("objects: at least one object is required")
        morphisms = []
        for k, m in enumerate(spec.morphisms):
            if m.source not in objects or m.target not in objects:
                raise InputError(f"morphisms.{k}: unknown object")
            morphisms.append(Morphism(m.label, objects.index(m.source), objects.index(m.target), m.degree,
                                      tuple(m.weight) if m.weight is not None else ()))
        extra, bases = _hom_morphisms(spec, objects)
        morphisms.extend(extra)
        if len({m.label for m in morphisms}) != len(morphisms):
            raise InputError("morphisms: labels must be distinct")
        entries = [_mu_entry(k, e, bases) for k, e in enumerate(spec.mu)]
        cat = build_category(objects, morphisms, entries, spec.units)
    trace, n = None, None
    if spec.trace is not None:
        n = spec.trace.n
        labels = [m.label for m in cat.morphisms]
        functionals = {cat.object_index(obj): _vector(labels, vec, f"trace.functionals.{obj}")
                       for obj, vec in spec.trace.functionals.items()}
        trace = CYTrace(functionals)
    return cat, trace, n


def build_cech(spec: CechSpec) -> Tuple[CechDatum, Optional[LiftedDerivation]]:
    charts: Dict[Tuple[int, ...], CechChart] = {}
    names: Dict[str, Tuple[int, ...]] = {}
    for k, c in enumerate(spec.charts):
        cover = tuple(sorted(set(c.cover)))
        if cover in charts:
            raise InputError(f"charts.{k}: intersection {list(cover)} given twice")
        ring = ChartRing.build(c.name, c.ring.x, c.ring.y, c.ring.curve, c.ring.roots)
        if len(c.tangents) != spec.rank:
            raise InputError(f"charts.{k}.tangents: expected {spec.rank} generators")
        tangents = tuple(RingDerivation(ring, {g: ring.parse(v) for g, v in t.items()}) for t in c.tangents)
        charts[cover] = CechChart(c.name, cover, ring, tangents)
        names[c.name] = cover
    faces = {}
    for k, f in enumerate(spec.faces):
        if f.source not in names or f.target not in names:
            raise InputError(f"faces.{k}: unknown chart")
        i, j = names[f.source], names[f.target]
        if not (set(i) < set(j) and len(j) == len(i) + 1):
            raise InputError(f"faces.{k}: {f.source} -> {f.target} is not a face inclusion")
        src, tgt = charts[i].ring, charts[j].ring
        ring_map = RingMap(src, tgt, {g: tgt.parse(v) for g, v in f.images.items()})
        if len(f.tangents) != spec.rank or any(len(row) != spec.rank for row in f.tangents):
            raise InputError(f"faces.{k}.tangents: expected a {spec.rank}x{spec.rank} matrix")
        tangents = tuple(tuple(tgt.parse(c) for c in row) for row in f.tangents)
        faces[(i, j)] = CechFace(i, j, ring_map, tangents)
    datum = CechDatum(charts, faces, spec.rank, spec.slack)
    lifts = None
    if spec.lifts is not None:
        xi = Derivation.of(spec.lifts.xi)
        per_chart = {}
        for name, values in spec.lifts.charts.items():
            if name not in names:
                raise InputError(f"lifts.charts: unknown chart {name!r}")
            ring = charts[names[name]].ring
            per_chart[names[name]] = RingDerivation(ring, {g: ring.parse(v) for g, v in values.items()}, xi)
        lifts = LiftedDerivation(xi, per_chart)
    return datum, lifts
