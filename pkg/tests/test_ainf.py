import pytest
from hypothesis import given, settings, strategies as st

from conftest import dual_numbers, ground_field, load_spec
from hochdesk.ainf import (
    AInfCategory, AInfCochain, CYTrace, Morphism, add_zero_object, ainf_class_is_zero, ainf_differential,
    build_category, conjugate, cup_ainf, cy_duality_check, from_algebra, from_dga, hh_ainf,
    hochschild_homology_ainf, ks_cat, npotency, restrict, restrict_cochain, unit_cochain, validate_ainf,
)
from hochdesk.algebra import (
    FiniteAlgebra, change_basis, cochain_class_is_zero, cup, hochschild_cohomology, zero_weight,
)
from hochdesk.deform import derivation_deformation
from hochdesk.errors import CapExceeded, ValidationFailure
from hochdesk.kernel import D_Q, ONE, QGEN, Q_D_Q, ZERO, ExactMatrix, scalar
from hochdesk.utils.io_loader import build_ainf, build_algebra


def category(name):
    c, _, _ = build_ainf(load_spec(name))
    return c


def as_ainf(cochain):
    return AInfCochain(cochain.degree, {(0, t): dict(v) for t, v in cochain.values.items()})


def build_ainf_algebra(name):
    return build_algebra(load_spec(name).from_algebra)


# ---------- validation ----------

def test_algebras_are_valid_categories():
    assert validate_ainf(from_algebra(dual_numbers())).ok
    assert validate_ainf(category("qext.json")).ok
    assert validate_ainf(category("exterior1-pair.json")).ok


def test_dga_is_valid():
    # x of degree -1 with d x = 1
    a = FiniteAlgebra.build(["1", "x"], [1, 0], [[[1, 0], [0, 1]], [[0, 1], [0, 0]]], degrees=[0, -1])
    c = from_dga(a, ExactMatrix.from_dense([[0, 1], [0, 0]]))
    assert c.max_arity == 2
    assert validate_ainf(c).ok


def test_broken_product_reports_relation():
    report = validate_ainf(category("broken.json"))
    assert not report.ok
    assert report.kind == "ainf relation"


def test_structural_failures():
    curved = AInfCategory(("X",), (Morphism("1", 0, 0),), {(0, ()): {0: ONE}})
    assert validate_ainf(curved).kind == "curvature"

    f = Morphism("f", 0, 1)
    loose = build_category(["A", "B"], [f], [(["f", "f"], {"f": 1})])
    assert validate_ainf(loose).kind == "composability"

    graded = build_category(
        ["X"], [Morphism("1", 0, 0, 0), Morphism("z", 0, 0, 1)],
        [(["1", "1"], {"1": 1}), (["1", "z"], {"z": 1}), (["z", "1"], {"1": 1})],
    )
    assert validate_ainf(graded).kind == "degree"

    long = AInfCategory(("X",), (Morphism("1", 0, 0),), {(0, (0, 0, 0, 0, 0)): {0: ONE}})
    assert validate_ainf(long, arity=4).kind == "arity"


# ---------- KS cocycle ----------

def test_ks_of_constant_category_vanishes():
    assert ks_cat(from_algebra(dual_numbers()), D_Q).is_zero()


def test_ks_matches_algebra_derivation_cocycle():
    c = category("qext.json")
    ks = ks_cat(c, D_Q)
    a = build_ainf_algebra("qext.json")
    assert {t: v for (_, t), v in ks.values.items()} == derivation_deformation(a, D_Q).components[0].values
    assert ainf_differential(c, ks).is_zero()


def test_ks_is_linear_in_xi():
    c = category("qext.json")
    assert ks_cat(c, Q_D_Q).values == ks_cat(c, D_Q).scale(QGEN).values


def test_ks_of_higher_product_stays_in_its_length():
    c = AInfCategory(
        ("X",), (Morphism("1", 0, 0, 0), Morphism("z", 0, 0, -1)),
        {(0, (0, 0)): {0: ONE}, (0, (0, 0, 0)): {1: QGEN}},
    )
    assert ks_cat(c, D_Q).values == {(0, (0, 0, 0)): {1: ONE}}


# ---------- Hochschild cohomology ----------

def test_hh_of_ground_field():
    assert hh_ainf(from_algebra(ground_field()), 2, arity=4) == {0: 1, 1: 0, 2: 0}


def test_hh_matches_algebra_dims():
    assert hh_ainf(from_algebra(dual_numbers()), 3, arity=5) == {0: 2, 1: 1, 2: 1, 3: 1}


def test_hh_of_two_points():
    c = build_category(
        ["A", "B"], [Morphism("1a", 0, 0), Morphism("1b", 1, 1)],
        [(["1a", "1a"], {"1a": 1}), (["1b", "1b"], {"1b": 1})],
        {"A": {"1a": 1}, "B": {"1b": 1}},
    )
    assert hh_ainf(c, 1, arity=3) == {0: 2, 1: 0}


def test_arity_bound_below_the_length_cap_is_refused():
    with pytest.raises(CapExceeded, match=r"mu\^4"):
        hh_ainf(from_algebra(ground_field()), 2, arity=3)


def test_unweighted_graded_category_refuses_truncation():
    c = category("exterior1.json")
    with pytest.raises(CapExceeded, match="longer than the length cap 2"):
        hh_ainf(c, 1, arity=3)
    assert set(hh_ainf(c, 1, arity=3, weight=c.zero_weight())) == {0, 1}


def test_primitive_satisfies_the_coboundary_equation():
    c = category("qext.json")
    ks = ks_cat(c, D_Q)
    square = cup_ainf(c, ks, ks)
    h = ainf_class_is_zero(c, square, c.zero_weight())
    assert h is not None
    assert h.degree == square.degree - 1
    assert ainf_differential(c, h).combine(square, -ONE).is_zero()


def test_class_test_rejects_non_cocycles():
    c = from_algebra(dual_numbers())
    with pytest.raises(ValidationFailure, match="cocycle"):
        ainf_class_is_zero(c, AInfCochain(1, {(0, (1,)): {0: ONE}}))


def test_hochschild_homology_of_ground_field():
    assert hochschild_homology_ainf(from_algebra(ground_field()), -1, 0) == {-1: 0, 0: 1}


# ---------- cup products and potency ----------

def test_unit_cup_is_identity():
    c = from_algebra(dual_numbers())
    alpha = AInfCochain(1, {(0, (1,)): {1: ONE}})
    assert cup_ainf(c, unit_cochain(c), alpha).values == alpha.values


def test_cup_matches_algebra_cup_on_dual_numbers():
    a = dual_numbers()
    c = from_algebra(a)
    (u,) = hochschild_cohomology(a, max_degree=2).representatives[2]
    assert cup_ainf(c, as_ainf(u), as_ainf(u)).values == as_ainf(cup(a, u, u)).values


def test_npotency_of_constant_category():
    report = npotency(from_algebra(dual_numbers()), 1)
    assert not report.potent
    assert report.largest == 0
    assert report.power_zero == [True]


def test_quantum_exterior_algebra_is_exactly_one_potent():
    report = npotency(category("qext.json"), 2)
    assert report.largest == 1
    assert report.power_zero == [False, True]


def test_ks_square_verdicts_agree_with_algebra_pipeline():
    c = category("qext.json")
    a = build_ainf_algebra("qext.json")
    ks = ks_cat(c, D_Q)
    beta = derivation_deformation(a, D_Q).components[0]
    ainf_zero = ainf_class_is_zero(c, cup_ainf(c, ks, ks), c.zero_weight()) is not None
    algebra_zero = cochain_class_is_zero(a, cup(a, beta, beta), weight=zero_weight(a)) is not None
    assert ainf_zero == algebra_zero


@pytest.mark.slow
def test_tensor_square_is_two_potent():
    report = npotency(category("qext-tensor.json"), 2)
    assert report.potent
    assert report.power_zero == [False, False]


def test_potency_survives_basis_change():
    c = category("qext.json")
    scaled = conjugate(c, ExactMatrix.from_dense([[1, 0, 0, 0], [0, 2, 0, 0], [0, 0, 3, 0], [0, 0, 0, 1]]))
    assert validate_ainf(scaled).ok
    assert npotency(scaled, 2).largest == npotency(c, 2).largest


def test_conjugate_rejects_mixing_hom_spaces():
    c = category("qext.json")
    with pytest.raises(ValidationFailure):
        conjugate(c, ExactMatrix.from_dense([[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]))


# ---------- restriction ----------

def test_restriction_to_all_objects_is_identity():
    c = category("exterior1-pair.json")
    sub, mor_map = restrict(c, [0, 1])
    assert sub.mu == c.mu
    assert mor_map == {i: i for i in range(len(c.morphisms))}


def test_restriction_commutes_with_ks():
    c = add_zero_object(category("qext.json"))
    sub, _ = restrict(c, [0])
    assert sub.objects == ("X",)
    assert restrict_cochain(c, [0], ks_cat(c, D_Q)).values == ks_cat(sub, D_Q).values


def test_zero_object_does_not_change_potency():
    c = category("qext.json")
    padded = add_zero_object(c)
    assert npotency(padded, 1).largest == npotency(c, 1).largest == 1


def test_restrict_to_one_of_two_objects():
    c = category("exterior1-pair.json")
    sub, mor_map = restrict(c, [c.object_index("A")])
    assert [m.label for m in sub.morphisms] == [m.label for m in c.morphisms if m.source == 0]
    assert validate_ainf(sub).ok
    assert len(mor_map) == 2
    with pytest.raises(ValidationFailure):
        restrict(c, [])


# ---------- Calabi-Yau pairing ----------

def test_cy_pairing_on_exterior_algebra():
    c, trace, n = build_ainf(load_spec("exterior1.json"))
    report = cy_duality_check(c, trace, n, (0, 1), [(0,), (1,)])
    assert report.nondegenerate
    assert report.failure is None
    assert report.duality_holds


def test_cy_pairing_zero_trace_is_degenerate():
    c, trace, n = build_ainf(load_spec("exterior1-zero.json"))
    report = cy_duality_check(c, trace, n, (0, 1), [(0,), (1,)])
    assert not report.nondegenerate
    assert report.failure["degree"] == 0


def test_cy_pairing_on_two_objects():
    c, trace, n = build_ainf(load_spec("exterior1-pair.json"))
    report = cy_duality_check(c, trace, n, (0, 1), [(0,), (1,)])
    assert report.nondegenerate


def test_trace_outside_degree_is_rejected():
    c, _, _ = build_ainf(load_spec("exterior1.json"))
    with pytest.raises(ValidationFailure):
        cy_duality_check(c, CYTrace({0: {c.index("1"): ONE}}), 1)


# ---------- randomized categories ----------

q_coefficients = st.sampled_from([ZERO, ONE, -ONE, scalar(2), QGEN, -QGEN, QGEN ** 2, ONE + QGEN, ONE / QGEN])
q_units = st.sampled_from([ONE, -ONE, QGEN, scalar(2) * QGEN, ONE / (ONE + QGEN)])


@st.composite
def q_dependent_algebras(draw):
    p = [[draw(q_units), draw(q_coefficients)], [ZERO, draw(q_units)]]
    return change_basis(dual_numbers(), p)


@st.composite
def two_clifford_objects(draw):
    """Objects A, B with End = K[x]/(x^2 - c) for drawn c."""
    morphisms = [Morphism("1a", 0, 0), Morphism("xa", 0, 0), Morphism("1b", 1, 1), Morphism("xb", 1, 1)]
    entries = []
    for one, x in (("1a", "xa"), ("1b", "xb")):
        c = draw(q_coefficients)
        entries += [([one, one], {one: 1}), ([one, x], {x: 1}), ([x, one], {x: 1}), ([x, x], {one: c})]
    return build_category(["A", "B"], morphisms, entries, {"A": {"1a": 1}, "B": {"1b": 1}})


@given(q_dependent_algebras())
@settings(derandomize=True, max_examples=25, deadline=None)
def test_ks_cat_is_closed_and_linear(a):
    c = from_algebra(a)
    assert validate_ainf(c).ok
    ks = ks_cat(c, D_Q)
    assert ainf_differential(c, ks).is_zero()
    assert ks_cat(c, Q_D_Q).values == ks.scale(QGEN).values


@given(two_clifford_objects())
@settings(derandomize=True, max_examples=25, deadline=None)
def test_ks_cat_commutes_with_restriction(c):
    assert validate_ainf(c).ok
    ks = ks_cat(c, D_Q)
    assert ainf_differential(c, ks).is_zero()
    for obj in range(2):
        sub, _ = restrict(c, [obj])
        assert restrict_cochain(c, [obj], ks).values == ks_cat(sub, D_Q).values
