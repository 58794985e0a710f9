import pytest

from conftest import dual_numbers, ground_field, load_spec
from hochdesk.algebra import HochschildCochain, hochschild_cohomology, hochschild_complex, validate_algebra
from hochdesk.deform import derivation_class, derivation_deformation
from hochdesk.diagram import (
    AlgebraDiagram, GSCochain, Poset, diagram_algebra, gs_class_is_zero, gs_cohomology_dims, gs_complex,
    gs_component_identities, gs_derivation_cocycle, gs_differential, restrict_to_vertex, scct_check,
    validate_diagram, vertex_classes,
)
from hochdesk.errors import CapExceeded, InputError, ValidationFailure
from hochdesk.kernel import D_Q, ONE, ExactMatrix
from hochdesk.utils.io_loader import build_diagram


def constant(a, elements=("i", "j"), relations=(("i", "j"),)):
    poset = Poset.build(elements, relations)
    maps = {(poset.index(s), poset.index(t)): ExactMatrix.identity(a.dim) for s, t in relations}
    return AlgebraDiagram.build(poset, [a] * poset.size, maps)


def one_point(a):
    return AlgebraDiagram.build(Poset.build(["p"], []), [a], {})


# ---------- posets ----------

def test_poset_closure_and_chains():
    p = Poset.build(["a", "b", "c"], [["a", "b"], ["b", "c"]])
    assert p.less(0, 2)
    assert p.chains(0) == [(0,), (1,), (2,)]
    assert p.chains(2) == [(0, 1, 2)]
    assert p.height == 2
    assert p.covers() == [(0, 1), (1, 2)]


def test_poset_rejects_cycles_and_unknown_names():
    with pytest.raises(ValidationFailure):
        Poset.build(["a", "b"], [["a", "b"], ["b", "a"]])
    with pytest.raises(InputError):
        Poset.build(["a"], [["a", "z"]])
    with pytest.raises(InputError):
        Poset.build(["a", "a"], [])


# ---------- diagrams ----------

def test_fixture_diagrams_validate():
    assert validate_diagram(build_diagram(load_spec("const-k.json"))).ok
    assert validate_diagram(build_diagram(load_spec("q-scaling.json"))).ok
    assert validate_diagram(build_diagram(load_spec("qext-const.json"))).ok


def test_unit_violation_is_reported():
    a = dual_numbers()
    poset = Poset.build(["i", "j"], [["i", "j"]])
    bad = AlgebraDiagram.build(poset, [a, a], {(0, 1): ExactMatrix.from_dense([[0, 0], [0, 1]])})
    report = validate_diagram(bad)
    assert (report.ok, report.kind) == (False, "unit")


def test_homomorphism_violation_is_reported():
    a = dual_numbers()
    poset = Poset.build(["i", "j"], [["i", "j"]])
    # x -> 1 + x does not square to zero
    bad = AlgebraDiagram.build(poset, [a, a], {(0, 1): ExactMatrix.from_dense([[1, 1], [0, 1]])})
    assert validate_diagram(bad).kind == "homomorphism"


def test_missing_composites_are_filled_in():
    a = dual_numbers()
    scale = ExactMatrix.from_dense([[1, 0], [0, "q"]])
    poset = Poset.build(["i", "j", "k"], [["i", "j"], ["j", "k"]])
    d = AlgebraDiagram.build(poset, [a, a, a], {(0, 1): scale, (1, 2): scale})
    assert d.phi(0, 2).to_dense() == ExactMatrix.from_dense([[1, 0], [0, "q**2"]]).to_dense()
    assert validate_diagram(d).ok


def test_map_shape_and_relation_are_checked():
    a = dual_numbers()
    poset = Poset.build(["i", "j"], [["i", "j"]])
    with pytest.raises(InputError):
        AlgebraDiagram.build(poset, [a, a], {(1, 0): ExactMatrix.identity(2)})
    with pytest.raises(InputError):
        AlgebraDiagram.build(poset, [a, ground_field()], {(0, 1): ExactMatrix.identity(2)})
    with pytest.raises(InputError):
        AlgebraDiagram.build(poset, [a, a], {})


# ---------- GS cohomology ----------

def test_one_point_matches_hochschild_complex():
    a = dual_numbers()
    assert gs_complex(one_point(a), 2).dims == hochschild_complex(a, max_degree=2).dims
    assert gs_cohomology_dims(one_point(a), 2) == hochschild_cohomology(a, max_degree=2).dims


def test_constant_diagram_collapses_to_hochschild():
    assert gs_cohomology_dims(build_diagram(load_spec("const-k.json")), 2) == [1, 0, 0]
    assert gs_cohomology_dims(constant(dual_numbers()), 2) == [2, 1, 1]


def test_antichain_is_a_direct_sum():
    poset = Poset.build(["i", "j"], [])
    d = AlgebraDiagram.build(poset, [ground_field(), dual_numbers()], {})
    assert gs_cohomology_dims(d, 2) == [3, 1, 1]


def test_total_degree_cap():
    with pytest.raises(CapExceeded):
        gs_complex(constant(ground_field()), max_total_degree=4, degree_cap=3)


def test_derivation_cocycle_of_q_scaling():
    d = build_diagram(load_spec("q-scaling.json"))
    beta = gs_derivation_cocycle(d, D_Q)
    assert set(beta.components) == {(0, 1)}
    assert beta.components[(0, 1)].values == {(1,): {1: ONE}}
    assert gs_differential(d, beta).is_zero()
    assert all(gs_component_identities(d, beta).values())


def test_vertex_components_match_single_algebra_cocycle():
    d = build_diagram(load_spec("qext-const.json"))
    beta = gs_derivation_cocycle(d, D_Q)
    single = derivation_deformation(d.algebras[0], D_Q).components[0]
    assert beta.components[(0,)].values == single.values
    assert beta.components[(1,)].values == single.values
    assert (0, 1) not in beta.components
    assert all(gs_component_identities(d, beta).values())


def test_restriction_to_a_vertex_is_the_single_algebra_class():
    d = build_diagram(load_spec("qext-const.json"))
    beta = gs_derivation_cocycle(d, D_Q)
    a, comp = restrict_to_vertex(d, beta, 1)
    assert a is d.algebras[1]
    assert comp.values == derivation_deformation(a, D_Q).components[0].values
    single = derivation_class(a, D_Q).is_zero
    assert vertex_classes(d, beta) == {"i": single, "j": single}


def test_restriction_of_an_edge_only_cocycle():
    d = build_diagram(load_spec("q-scaling.json"))
    beta = gs_derivation_cocycle(d, D_Q)
    _, comp = restrict_to_vertex(d, beta, 0)
    assert comp.is_zero()
    assert comp.degree == 2
    assert vertex_classes(d, beta) == {"i": True, "j": True}
    with pytest.raises(InputError, match="No vertex"):
        restrict_to_vertex(d, beta, 2)


def unit_coboundary(d):
    """delta of the vertex 1-cochain 1 -> 1 on the first element."""
    return gs_differential(d, GSCochain(1, {(0,): HochschildCochain(1, {(0,): {0: ONE}})}))


def test_unit_component_identity_reads_beta():
    d = build_diagram(load_spec("q-scaling.json"))
    beta = unit_coboundary(d)
    assert beta.components[(0,)].evaluate((0, 0)) == {0: ONE}
    assert all(gs_component_identities(d, beta).values())


def test_unit_component_identity_catches_a_wrong_edge():
    d = build_diagram(load_spec("q-scaling.json"))
    beta = unit_coboundary(d)
    edge = beta.components.get((0, 1), HochschildCochain(1, {}))
    broken = GSCochain(2, {**beta.components, (0, 1): edge.combine(HochschildCochain(1, {(0,): {0: ONE}}))})
    identities = gs_component_identities(d, broken)
    assert not identities["simplicial_of_unit_component"]
    assert identities["hochschild_of_vertex_part"]


def test_gs_class_of_constant_diagram():
    d = constant(dual_numbers())
    assert gs_class_is_zero(d, gs_derivation_cocycle(d, D_Q)) is not None


# ---------- diagram algebra and comparison ----------

def test_diagram_algebra_of_constant_k_is_upper_triangular():
    bang = diagram_algebra(build_diagram(load_spec("const-k.json")))
    assert bang.dim == 3
    assert validate_algebra(bang).ok
    assert hochschild_cohomology(bang, max_degree=2).dims == [1, 0, 0]
    # (1@ij)(1@jj) = 1@ij and (1@jj)(1@ij) = 0
    ij, jj = bang.basis.index("1@ij"), bang.basis.index("1@jj")
    assert bang.mul[ij][jj] == {ij: ONE}
    assert bang.mul[jj][ij] == {}


def test_diagram_algebra_dimension_and_one_point():
    d = build_diagram(load_spec("q-scaling.json"))
    assert diagram_algebra(d).dim == 6
    a = dual_numbers()
    assert diagram_algebra(one_point(a)).mul == a.mul


def test_scct_constant_k():
    report = scct_check(build_diagram(load_spec("const-k.json")), max_degree=2)
    assert report.gs_dims == [1, 0, 0]
    assert report.dims_agree
    assert report.verdicts_agree


def test_scct_one_point():
    report = scct_check(one_point(dual_numbers()), max_degree=2)
    assert report.gs_dims == report.diagram_algebra_dims == [2, 1, 1]


def test_scct_q_scaling_verdicts_agree():
    report = scct_check(build_diagram(load_spec("q-scaling.json")), max_degree=2)
    assert report.dims_agree
    assert report.verdicts_agree
