import pytest

from conftest import dual_numbers, load_spec
from hochdesk.algebra import hochschild_cohomology
from hochdesk.deform import beta_cocycle
from hochdesk.errors import InputError
from hochdesk.kernel import ONE, QGEN
from hochdesk.utils.io_loader import (
    build_ainf, build_algebra, build_deformation, build_diagram, infer_kind, parse_document,
)
from hochdesk.utils.schemas import AInfSpec, AlgebraSpec, DeformationSpec, DiagramSpec

DENSE_DUAL = {
    "base": "Q",
    "basis": ["1", "x"],
    "degrees": [0, 0],
    "unit": ["1", "0"],
    "mul": [[["1", "0"], ["0", "1"]], [["0", "1"], ["0", "0"]]],
}


# ---------- algebras ----------

def test_dense_algebra_without_kind():
    spec = parse_document(DENSE_DUAL)
    assert isinstance(spec, AlgebraSpec)
    a = build_algebra(spec)
    assert (a.mul, a.unit) == (dual_numbers().mul, dual_numbers().unit)
    assert a.degrees == (0, 0)
    assert hochschild_cohomology(a, max_degree=3).dims == [2, 1, 1, 1]


def test_dense_and_sparse_fixtures_agree():
    dense = build_algebra(load_spec("dualnumbers-dense.json"))
    sparse = build_algebra(load_spec("dualnumbers.json"))
    assert dense.mul == sparse.mul
    assert dense.unit == sparse.unit


def test_dense_table_shape_is_checked():
    with pytest.raises(InputError, match="2x2"):
        build_algebra(parse_document({**DENSE_DUAL, "mul": [[["1", "0"], ["0", "1"]]]}))
    with pytest.raises(InputError, match="coefficients"):
        build_algebra(parse_document({**DENSE_DUAL, "unit": ["1"]}))
    with pytest.raises(InputError, match="degrees"):
        build_algebra(parse_document({**DENSE_DUAL, "degrees": [0]}))


def test_rational_base_rejects_q():
    doc = {**DENSE_DUAL, "mul": [[["1", "0"], ["0", "1"]], [["0", "1"], ["q", "0"]]]}
    with pytest.raises(InputError, match="depends on q"):
        build_algebra(parse_document(doc))
    a = build_algebra(parse_document({**doc, "base": "Q(q)"}))
    assert a.product({1: ONE}, {1: ONE}) == {0: QGEN}


def test_mul_and_products_are_exclusive():
    doc = {**DENSE_DUAL, "products": [{"left": "x", "right": "x", "value": {}}]}
    with pytest.raises(InputError, match="either"):
        build_algebra(parse_document(doc))


def test_unknown_keys_still_fail():
    with pytest.raises(InputError, match="colour"):
        parse_document({**DENSE_DUAL, "colour": "red"})


def test_kind_inference_reaches_nested_blocks():
    doc = infer_kind({"algebra": dict(DENSE_DUAL), "corrections": []})
    assert doc["kind"] == "deformation"
    assert doc["algebra"]["kind"] == "algebra"
    assert "kind" not in DENSE_DUAL


# ---------- deformations ----------

def test_correction_entries_match_nested_form():
    spec = load_spec("clifford-entries.json")
    assert isinstance(spec, DeformationSpec)
    deformation, splitting = build_deformation(spec)
    assert splitting is None
    assert deformation.vdim == 1
    assert deformation.corrections[0].values == {(1, 1): {0: ONE}}
    assert beta_cocycle(deformation).components[0].evaluate((1, 1)) == {0: ONE}


def test_correction_entries_accumulate_and_size_v():
    spec = parse_document({
        "algebra": DENSE_DUAL,
        "corrections": [["x", "x", 1, {"1": 1}], [1, 1, 1, ["1", "1"]], [0, 1, 0, ["0", "0"]]],
    })
    deformation, _ = build_deformation(spec)
    assert deformation.vdim == 2
    assert deformation.corrections[0].values == {}
    assert deformation.corrections[1].values == {(1, 1): {0: 2 * ONE, 1: ONE}}


def test_correction_index_out_of_range():
    with pytest.raises(InputError, match="V index"):
        build_deformation(parse_document({"algebra": DENSE_DUAL, "vdim": 1, "corrections": [[1, 1, 1, ["1", "0"]]]}))
    with pytest.raises(InputError, match="out of range"):
        build_deformation(parse_document({"algebra": DENSE_DUAL, "corrections": [[2, 1, 0, ["1", "0"]]]}))


# ---------- diagrams ----------

def test_keyed_maps_match_listed_maps():
    keyed = load_spec("q-scaling-keyed.json")
    assert isinstance(keyed, DiagramSpec)
    d = build_diagram(keyed)
    listed = build_diagram(load_spec("q-scaling.json"))
    assert d.poset.elements == listed.poset.elements
    assert d.phi(0, 1).to_dense() == listed.phi(0, 1).to_dense()


def test_keyed_map_shape_and_key_are_checked():
    doc = load_spec("q-scaling-keyed.json").model_dump()
    doc["maps"] = {"i<j": [["1", "0"]]}
    with pytest.raises(InputError, match="2x2"):
        build_diagram(parse_document(doc))
    doc["maps"] = {"i->j": [["1", "0"], ["0", "1"]]}
    with pytest.raises(InputError, match="i<j"):
        build_diagram(parse_document(doc))
    doc["maps"] = {"0<k": [["1", "0"], ["0", "1"]]}
    with pytest.raises(InputError, match="unknown element"):
        build_diagram(parse_document(doc))


def test_keyed_maps_accept_indices():
    doc = load_spec("q-scaling-keyed.json").model_dump()
    doc["maps"] = {"0<1": [["1", "0"], ["0", "q"]]}
    assert build_diagram(parse_document(doc)).phi(0, 1).entry(1, 1) == QGEN


# ---------- A-infinity categories ----------

def test_hom_bases_and_indexed_mu():
    spec = parse_document({
        "objects": ["X"],
        "homs": [{"source": "X", "target": "X", "basis": ["1", "x"], "degrees": [0, 1]}],
        "mu": [
            {"length": 2, "chain": ["X", "X", "X"], "inputs": [0, 0], "output": ["1", "0"]},
            {"length": 2, "chain": ["X", "X", "X"], "inputs": [0, 1], "output": ["0", "1"]},
            {"inputs": ["x", "1"], "output": {"x": 1}},
        ],
        "units": {"X": {"1": 1}},
    })
    assert isinstance(spec, AInfSpec)
    cat, trace, n = build_ainf(spec)
    assert (trace, n) == (None, None)
    assert [m.label for m in cat.morphisms] == ["1", "x"]
    assert cat.morphisms[1].degree == 1
    assert cat.mu[(0, (0, 1))] == {1: ONE}
    assert cat.mu[(0, (1, 0))] == {1: ONE}


def test_indexed_mu_needs_a_chain():
    base = {"objects": ["X"], "homs": [{"source": "X", "target": "X", "basis": ["1"]}]}
    with pytest.raises(InputError, match="chain"):
        build_ainf(parse_document({**base, "mu": [{"inputs": [0, 0], "output": ["1"]}]}))
    with pytest.raises(InputError, match="length"):
        build_ainf(parse_document({**base, "mu": [{"length": 3, "chain": ["X", "X", "X"],
                                                     "inputs": [0, 0], "output": ["1"]}]}))
    with pytest.raises(InputError, match="no Hom basis"):
        build_ainf(parse_document({"objects": ["X", "Y"], "homs": base["homs"],
                                   "mu": [{"chain": ["X", "Y", "X"], "inputs": [0, 0], "output": ["1"]}]}))
