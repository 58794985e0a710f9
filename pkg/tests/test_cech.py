import json

import pytest

from conftest import FIXTURES, load_spec
from hochdesk.cech import (
    CechCochain, LiftedDerivation, cech_class_is_zero, cech_cohomology, cech_differential, cech_labels,
    hkr_component_check, ht_cup, lift_on, push_forward, vertical_field, ks_class, lift_independence_check, max_unipotent, unit_section, validate_cech,
    validate_lift,
)
from hochdesk.chart_ring import POLY, ChartRing, RingDerivation, RingMap, check_confluence
from hochdesk.errors import InputError, ValidationFailure, WindowTooSmall
from hochdesk.kernel import D_Q, ONE, QGEN, scalar
from hochdesk.utils.io_loader import build_cech, parse_document


def cover(name):
    return build_cech(load_spec(name))


# ---------- chart rings ----------

def test_laurent_products_cancel():
    ring = ChartRing.build("R", roots=[0])
    x, inv = ring.gen("x"), ring.parse("x**-1")
    assert inv == {(0, 0, 1): ONE}
    assert ring.mul(x, inv) == ring.one()
    assert ring.mul(ring.power(x, 3), ring.power(inv, 2)) == x


def test_partial_fractions_between_poles():
    ring = ChartRing.build("R", roots=[0, 1])
    # 1/(x(x-1)) = 1/(x-1) - 1/x
    assert ring.mul({(0, 0, 1): ONE}, {(0, 1, 1): ONE}) == {(0, 0, 1): -ONE, (0, 1, 1): ONE}
    assert ring.parse("(x-1)**-2") == {(0, 1, 2): ONE}


def test_curve_relation_reduces_y_squared():
    ring = ChartRing.build("E", y="y", curve=[0, "q", "-(1+q)", 1])
    y = ring.gen("y")
    assert ring.mul(y, y) == ring.curve_polynomial()
    assert ring.parse("y**2 - x**3") == {(0, POLY, 2): -(1 + QGEN), (0, POLY, 1): QGEN}


def test_ring_construction_errors():
    with pytest.raises(InputError):
        ChartRing.build("E", y="y")
    with pytest.raises(InputError):
        ChartRing.build("R", roots=[1, 1])
    ring = ChartRing.build("R", roots=[1])
    with pytest.raises(InputError):
        ring.inverse_of_unit(ring.parse("x + 1"))
    with pytest.raises(InputError):
        ring.gen("z")


def test_window_keys():
    ring = ChartRing.build("R", roots=[0])
    assert ring.keys(2) == [(0, POLY, 0), (0, POLY, 1), (0, POLY, 2), (0, 0, 1), (0, 0, 2)]
    assert ring.weight((1, POLY, 2)) == 3


def test_derivatives_of_poles():
    ring = ChartRing.build("R", roots=["q"])
    pole = {(0, 0, 1): ONE}
    assert ring.partial_x(pole) == {(0, 0, 2): -ONE}
    # d/dq (x - q)^-1 = (x - q)^-2
    assert ring.coefficient_derivative(pole, D_Q) == {(0, 0, 2): ONE}


def test_ring_map_respects_curve():
    source = ChartRing.build("U1", x="u", y="v", curve=[0, 1, "-(1+q)", "q"])
    target = ChartRing.build("U01", y="y", curve=[0, "q", "-(1+q)", 1], roots=[0])
    good = RingMap(source, target, {"u": target.parse("x**-1"), "v": target.parse("y*x**-2")})
    assert good.check() is None
    bad = RingMap(source, target, {"u": target.parse("x**-1"), "v": target.gen("y")})
    assert "does not respect" in bad.check()
    with pytest.raises(InputError):
        RingMap(source, target, {"u": target.gen("x")})


def test_derivation_on_curve_ring():
    ring = ChartRing.build("E", y="y", curve=[0, "q", "-(1+q)", 1])
    theta = RingDerivation(ring, {"x": ring.parse("2*y"), "y": ring.parse("3*x**2 - 2*(1+q)*x + q")})
    assert theta.check() is None
    assert RingDerivation(ring, {"x": ring.one(), "y": {}}).check() is not None


def test_normal_forms_are_confluent():
    ring = ChartRing.build("E", y="y", curve=[0, "q", "-(1+q)", 1], roots=[0, 1])
    assert check_confluence(ring, 2) is None


# ---------- cohomology ----------

def test_fixtures_validate():
    for name in ("p1.json", "toy.json", "legendre.json"):
        d, lifts = cover(name)
        assert validate_cech(d).ok
        if lifts is not None:
            assert validate_lift(d, lifts).ok


def test_projective_line():
    d, _ = cover("p1.json")
    assert cech_cohomology(d, 0, 4, wedge_rank=0).dim == 1
    assert cech_cohomology(d, 1, 4, wedge_rank=0).dim == 0
    tangent = cech_cohomology(d, 0, 4)
    assert tangent.dim == 3
    assert tangent.stable
    assert cech_cohomology(d, 1, 4).dim == 0


def test_legendre_curve():
    d, _ = cover("legendre.json")
    assert cech_cohomology(d, 0, 4, wedge_rank=0).dim == 1
    h1 = cech_cohomology(d, 1, 4, wedge_rank=0)
    assert h1.dim == 1
    (rep,) = h1.representatives
    assert cech_class_is_zero(d, rep, 4) is None
    assert cech_cohomology(d, 0, 4).dim == 1
    assert cech_cohomology(d, 1, 4).dim == 1


def test_out_of_range_degrees_vanish():
    d, _ = cover("p1.json")
    assert cech_cohomology(d, 2, 3).dim == 0
    assert cech_cohomology(d, 0, 3, wedge_rank=2).dim == 0


def test_windows_agree():
    d, _ = cover("legendre.json")
    small = cech_cohomology(d, 1, 4)
    large = cech_cohomology(d, 1, 6)
    assert small.window_dims == (1, 1)
    assert small.dim == large.dim


def test_class_test_rejects_non_cocycles():
    d, _ = cover("p1.json")
    ring = d.chart((0,)).ring
    lonely = CechCochain(0, 0, {(0,): {(): ring.gen("x")}})
    assert not cech_differential(d, lonely).is_zero()
    with pytest.raises(ValidationFailure, match="cocycle"):
        cech_class_is_zero(d, lonely, 3)


def test_cochain_outside_window_is_reported():
    d, _ = cover("p1.json")
    far = CechCochain(1, 0, {(0, 1): {(): {(0, POLY, 5): ONE}}})
    with pytest.raises(WindowTooSmall):
        far.to_vector(cech_labels(d, 1, 0, 2))


def test_cover_poset():
    d, _ = cover("p1.json")
    p = d.poset()
    assert p.less(p.index("U01"), p.index("U0"))
    assert p.less(p.index("U01"), p.index("U1"))
    assert not p.less(p.index("U0"), p.index("U1"))


# ---------- Kodaira-Spencer ----------

def test_toy_family_cocycle_and_class():
    d, lifts = cover("toy.json")
    ks = ks_class(d, lifts)
    # on U01 the lifts differ by -x/q d/dx
    assert ks.cocycle.values == {(0, 1): {(0,): {(0, POLY, 1): -ONE / QGEN}}}
    assert ks.zero
    assert cech_differential(d, ks.primitive).values == ks.cocycle.values


def test_toy_class_does_not_depend_on_lifts():
    d, lifts = cover("toy.json")
    assert lift_independence_check(d, lifts) is not None


def test_legendre_family_is_maximally_unipotent():
    d, lifts = cover("legendre.json")
    assert not ks_class(d, lifts).zero
    first = max_unipotent(d, lifts, 1)
    assert first.maximal
    assert not first.ks_zero
    second = max_unipotent(d, lifts, 2)
    assert second.power_zero
    assert not second.maximal



@pytest.mark.parametrize("n", [0, -1])
def test_unipotency_order_must_be_positive(n):
    d, lifts = cover("legendre.json")
    with pytest.raises(InputError, match="n >= 1"):
        max_unipotent(d, lifts, n)


def test_unit_section_is_a_cup_identity():
    d, lifts = cover("toy.json")
    ks = ks_class(d, lifts).cocycle
    assert ht_cup(d, unit_section(d), ks).values == ks.values


def test_hkr_components_on_toy_family():
    d, lifts = cover("toy.json")
    report = hkr_component_check(d, lifts)
    assert report.antisymmetry_ok
    assert report.ok
    assert [e["gs_component_zero"] for e in report.edges] == [True, False]
    assert report.ks_zero


def toy_with(lift, face_tangent):
    doc = json.loads((FIXTURES / "toy.json").read_text())
    doc["lifts"]["charts"]["U1"] = {"x": lift}
    doc["faces"][1]["tangents"] = [[face_tangent]]
    return build_cech(parse_document(doc))


def test_vertical_part_and_push_forward():
    d, lifts = toy_with("x", "1/q")
    eta = vertical_field(d, lift_on(d, lifts, (1,)), (1,), 3)
    assert eta == [{(0, POLY, 1): ONE}]
    # rho(x) = q x, rho(d/dx) = 1/q d/dx
    assert push_forward(d, (1,), (0, 1), eta) == [{(0, POLY, 1): ONE}]


def test_hkr_components_with_vertical_lift():
    d, lifts = toy_with("x", "1/q")
    report = hkr_component_check(d, lifts, with_class=False)
    assert report.ok
    assert report.ks_zero is None


def test_hkr_components_catch_a_wrong_tangent_image():
    d, lifts = toy_with("x", "1")
    report = hkr_component_check(d, lifts, with_class=False)
    assert not report.ok
    assert [(e["target"], e["ok"]) for e in report.edges] == [("U01", True), ("U01", False)]
    assert not validate_cech(d).ok


def test_invalid_lift_is_rejected():
    d, lifts = cover("legendre.json")
    ring = d.chart((0,)).ring
    broken = LiftedDerivation(lifts.xi, {**lifts.lifts, (0,): RingDerivation(ring, {"x": ring.one(), "y": {}}, D_Q)})
    assert not validate_lift(d, broken).ok
    with pytest.raises(ValidationFailure, match="Invalid lift"):
        ks_class(d, broken)


def test_scalar_parsing_in_charts():
    ring = ChartRing.build("R")
    assert ring.parse(3) == ring.const(scalar(3))
    assert ring.parse("q*x") == {(0, POLY, 1): QGEN}
