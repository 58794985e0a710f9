import pytest
from hypothesis import given, settings, strategies as st

from conftest import cochains, cocycles, coefficients, dual_numbers, load_spec, small_algebras
from hochdesk.algebra import HochschildCochain, cochain_class_is_zero, hochschild_differential
from hochdesk.deform import (
    FirstOrderDeformation, Splitting, as_deformation, beta_cocycle, class_of, classes_equal,
    derivation_class, derivation_deformation, is_cocycle, trivial_deformation, twisted_deformation,
)
from hochdesk.errors import ValidationFailure
from hochdesk.kernel import D_Q, ONE, QGEN, Q_D_Q, scalar
from hochdesk.utils.io_loader import build_deformation


def clifford():
    a = dual_numbers()
    return FirstOrderDeformation(a, 1, (HochschildCochain(2, {(1, 1): {0: ONE}}),))


def test_clifford_beta_and_class():
    deformation = clifford()
    assert deformation.validate().ok
    beta = beta_cocycle(deformation)
    assert beta.components[0].evaluate((1, 1)) == {0: ONE}
    assert is_cocycle(deformation.algebra, beta)
    result = class_of(deformation)
    assert not result.is_zero
    assert result.primitives == [None]


def test_clifford_fixture_with_splitting():
    deformation, splitting = build_deformation(load_spec("clifford-def.json"))
    beta = beta_cocycle(deformation, splitting)
    # s(x) = x + eps: beta(x, x) = 1 + 2x
    assert beta.components[0].evaluate((1, 1)) == {0: ONE, 1: scalar(2)}
    same, primitives = classes_equal(deformation.algebra, beta, beta_cocycle(deformation))
    assert same
    assert primitives[0].evaluate((1,)) == {0: ONE}


def test_trivial_deformation_has_zero_class():
    result = class_of(trivial_deformation(dual_numbers(), vdim=2))
    assert result.is_zero
    assert result.zero == [True, True]


def test_non_associative_deformation_is_rejected():
    bad = FirstOrderDeformation(dual_numbers(), 1, (HochschildCochain(2, {(0, 1): {0: ONE}}),))
    assert not bad.validate().ok
    with pytest.raises(ValidationFailure, match="Invalid deformation"):
        class_of(bad)


def test_corrections_must_match_vdim():
    with pytest.raises(ValidationFailure):
        FirstOrderDeformation(dual_numbers(), 2, (HochschildCochain(2, {}),))
    with pytest.raises(ValidationFailure):
        FirstOrderDeformation(dual_numbers(), 1, (HochschildCochain(1, {}),))


def test_splitting_must_project_to_identity():
    deformation = clifford()
    wrong = Splitting((({1: ONE}, ({},)), ({1: ONE}, ({},))))
    with pytest.raises(ValidationFailure, match="splitting"):
        beta_cocycle(deformation, wrong)


def test_derivation_class_of_sqrtq(fixture_algebra):
    a = fixture_algebra("sqrtq.json")
    result = derivation_class(a, D_Q)
    assert result.is_zero
    assert result.primitives[0].values == {(1,): {1: ONE / (2 * QGEN)}}
    euler = derivation_class(a, Q_D_Q)
    assert euler.primitives[0].values == {(1,): {1: ONE / 2}}


def test_derivation_class_of_quantum_exterior_algebra(fixture_algebra):
    a = fixture_algebra("qext.json")
    assert not derivation_class(a, D_Q).is_zero
    assert not derivation_class(a, Q_D_Q).is_zero


def test_derivation_cocycle_is_linear_in_xi(fixture_algebra):
    a = fixture_algebra("qext.json")
    plain = derivation_deformation(a, D_Q).components[0]
    euler = derivation_deformation(a, Q_D_Q).components[0]
    assert plain.scale(QGEN).values == euler.values


def test_as_deformation_reproduces_derivation_cocycle(fixture_algebra):
    a = fixture_algebra("qext.json")
    deformation = as_deformation(a, D_Q)
    assert deformation.validate().ok
    assert beta_cocycle(deformation).components[0].values == derivation_deformation(a, D_Q).components[0].values


def test_constant_algebra_has_zero_derivation_class():
    result = derivation_class(dual_numbers(), D_Q)
    assert result.is_zero
    assert result.cocycle.is_zero()


@st.composite
def one_cochains(draw, dim=2):
    values = {}
    for i in range(dim):
        vec = {k: c for k in range(dim) if (c := draw(coefficients))}
        if vec:
            values[(i,)] = vec
    return HochschildCochain(1, values)


@given(one_cochains())
@settings(derandomize=True, max_examples=25, deadline=None)
def test_twisted_deformations_are_trivial(h):
    deformation = twisted_deformation(dual_numbers(), [h])
    assert deformation.validate().ok
    assert class_of(deformation).is_zero


@given(one_cochains())
@settings(derandomize=True, max_examples=25, deadline=None)
def test_changing_the_splitting_adds_a_coboundary(h):
    deformation = clifford()
    a = deformation.algebra
    base = beta_cocycle(deformation).components[0]
    moved = beta_cocycle(deformation, Splitting.from_sigma(a, [h])).components[0]
    assert moved.combine(base, -ONE).values == hochschild_differential(a, h).values
    same, _ = classes_equal(a, beta_cocycle(deformation), beta_cocycle(deformation, Splitting.from_sigma(a, [h])))
    assert same


def test_classes_equal_detects_different_classes():
    deformation = clifford()
    a = deformation.algebra
    same, primitives = classes_equal(a, beta_cocycle(deformation), beta_cocycle(trivial_deformation(a)))
    assert not same
    assert primitives is None


@st.composite
def deformations(draw):
    """A catalogue algebra in a drawn basis, deformed along a random 2-cocycle."""
    a = draw(small_algebras())
    return FirstOrderDeformation(a, 1, (draw(cocycles(a, 2)),))


@given(deformations(), st.data())
@settings(derandomize=True, max_examples=50, deadline=None)
def test_class_does_not_depend_on_two_drawn_splittings(deformation, data):
    a = deformation.algebra
    assert deformation.validate().ok
    first = beta_cocycle(deformation, Splitting.from_sigma(a, [data.draw(cochains(a, 1))]))
    second = beta_cocycle(deformation, Splitting.from_sigma(a, [data.draw(cochains(a, 1))]))
    for beta in (first, second):
        assert is_cocycle(a, beta)
        assert hochschild_differential(a, beta.components[0]).is_zero()
    same, primitives = classes_equal(a, first, second)
    assert same
    difference = first.components[0].combine(second.components[0], -ONE)
    assert hochschild_differential(a, primitives[0]).values == difference.values
    zero = cochain_class_is_zero(a, first.components[0]) is not None
    assert class_of(deformation).is_zero == zero


@given(small_algebras(), st.data())
@settings(derandomize=True, max_examples=50, deadline=None)
def test_derivation_class_is_splitting_independent(a, data):
    deformation = as_deformation(a, D_Q)
    assert deformation.validate().ok
    first = beta_cocycle(deformation, Splitting.from_sigma(a, [data.draw(cochains(a, 1))]))
    second = beta_cocycle(deformation, Splitting.from_sigma(a, [data.draw(cochains(a, 1))]))
    assert is_cocycle(a, first)
    assert is_cocycle(a, second)
    same, _ = classes_equal(a, first, second)
    assert same
    assert derivation_class(a, D_Q).is_zero == (cochain_class_is_zero(a, first.components[0]) is not None)
