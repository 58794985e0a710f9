"""
Pydantic models for every input format and for the report.

Coefficients are written as strings ("1/2", "-1/q", "(q+1)/q") or integers.
Vectors come either sparse, mapping basis labels to coefficients, or dense, as
a list of coefficients in basis order. The "kind" tag may be left out; it is
then inferred from the keys present (see io_loader.infer_kind).
"""
from __future__ import annotations

from typing import Any, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field

Coefficient = Union[int, str]
SparseSpec = Dict[str, Coefficient]
DenseSpec = List[Coefficient]
VectorSpec = Union[SparseSpec, DenseSpec]
Ref = Union[int, str]


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


# ---------- Algebras ----------

class ProductSpec(_Strict):
    left: str
    right: str
    value: SparseSpec = Field(default_factory=dict)


class AlgebraSpec(_Strict):
    """Either sparse "products" or the full dense table "mul"[i][j] = e_i e_j."""
    kind: Literal["algebra"] = "algebra"
    name: str = ""
    base: Literal["Q", "Q(q)"] = "Q(q)"
    basis: List[str] = Field(min_length=1)
    unit: VectorSpec
    products: List[ProductSpec] = Field(default_factory=list)
    mul: Optional[List[List[DenseSpec]]] = None
    degrees: Optional[Union[Dict[str, int], List[int]]] = None
    weights: Optional[Dict[str, List[int]]] = None


class TensorSpec(_Strict):
    kind: Literal["tensor"]
    name: str = ""
    factors: List[AlgebraSpec] = Field(min_length=1)


AlgebraLike = Union[AlgebraSpec, TensorSpec]


# ---------- Deformations ----------

# (left, right, V index, value of the correction on e_left (x) e_right)
CorrectionEntry = Tuple[Ref, Ref, int, VectorSpec]


class DeformationSpec(_Strict):
    kind: Literal["deformation"]
    name: str = ""
    algebra: AlgebraLike = Field(discriminator="kind")
    vdim: Optional[int] = Field(default=None, ge=1)
    corrections: Union[List[List[ProductSpec]], List[CorrectionEntry]]
    splitting: Optional[List[Dict[str, SparseSpec]]] = None


# ---------- Diagrams ----------

class MapSpec(_Strict):
    source: str
    target: str
    images: Dict[str, SparseSpec]


class PosetSpec(_Strict):
    elements: List[Ref] = Field(min_length=1)
    relations: List[List[Ref]] = Field(default_factory=list)


class DiagramSpec(_Strict):
    """Maps go from the larger element to the smaller one.

    The keyed form {"i<j": matrix} gives phi: a^j -> a^i with one row per basis
    vector of a^i and one column per basis vector of a^j.
    """
    kind: Literal["diagram"]
    name: str = ""
    poset: Optional[PosetSpec] = None
    elements: List[Ref] = Field(default_factory=list)
    relations: List[List[Ref]] = Field(default_factory=list)
    algebras: Dict[str, AlgebraSpec]
    maps: Union[List[MapSpec], Dict[str, List[DenseSpec]]] = Field(default_factory=list)


# ---------- A-infinity categories ----------

class MorphismSpec(_Strict):
    label: str
    source: str
    target: str
    degree: int = 0
    weight: Optional[List[int]] = None


class HomSpec(_Strict):
    """Graded basis of Hom(source, target)."""
    source: str
    target: str
    basis: List[str]
    degrees: Optional[List[int]] = None
    weights: Optional[List[List[int]]] = None


class MuEntry(_Strict):
    """Inputs are labels, or indices into the Hom bases along "chain"."""
    inputs: List[Ref] = Field(min_length=1)
    output: VectorSpec
    length: Optional[int] = None
    chain: Optional[List[str]] = None


class TraceSpec(_Strict):
    n: int
    functionals: Dict[str, SparseSpec]


class AInfSpec(_Strict):
    kind: Literal["ainf"]
    name: str = ""
    objects: List[str] = Field(default_factory=list)
    morphisms: List[MorphismSpec] = Field(default_factory=list)
    homs: List[HomSpec] = Field(default_factory=list)
    mu: List[MuEntry] = Field(default_factory=list)
    units: Dict[str, SparseSpec] = Field(default_factory=dict)
    from_algebra: Optional[AlgebraLike] = Field(default=None, discriminator="kind")
    trace: Optional[TraceSpec] = None


# ---------- Cech data ----------

class RingSpec(_Strict):
    x: str = "x"
    y: Optional[str] = None
    curve: List[Coefficient] = Field(default_factory=list)
    roots: List[Coefficient] = Field(default_factory=list)


class ChartSpec(_Strict):
    name: str
    cover: List[int] = Field(min_length=1)
    ring: RingSpec = Field(default_factory=RingSpec)
    tangents: List[Dict[str, Coefficient]]


class FaceSpec(_Strict):
    source: str
    target: str
    images: Dict[str, Coefficient]
    tangents: List[List[Coefficient]]


class LiftSpec(_Strict):
    xi: str = "d/dq"
    charts: Dict[str, Dict[str, Coefficient]]


class CechSpec(_Strict):
    kind: Literal["cech"]
    name: str = ""
    rank: int = Field(ge=0)
    slack: int = Field(default=2, ge=0)
    charts: List[ChartSpec] = Field(min_length=1)
    faces: List[FaceSpec] = Field(default_factory=list)
    lifts: Optional[LiftSpec] = None


InputSpec = Union[AlgebraSpec, TensorSpec, DeformationSpec, DiagramSpec, AInfSpec, CechSpec]


class InputDocument(BaseModel):
    document: InputSpec = Field(discriminator="kind")


# ---------- Report ----------

class Timing(BaseModel):
    elapsed_sec: float
    remaining_sec: float


class ErrorBlock(BaseModel):
    type: str
    message: str
    details: Dict[str, Any] = Field(default_factory=dict)


class Report(BaseModel):
    command: str
    input_digest: str
    results: Dict[str, Any] = Field(default_factory=dict)
    timing: Optional[Timing] = None
    error: Optional[ErrorBlock] = None


def report_schema() -> Dict[str, Any]:
    return Report.model_json_schema()
