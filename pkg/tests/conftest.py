import itertools
from pathlib import Path

import pytest
from hypothesis import strategies as st

from hochdesk.algebra import (
    FiniteAlgebra, HochschildCochain, change_basis, hochschild_cohomology, hochschild_differential,
)
from hochdesk.kernel import ONE, QGEN, ZERO, scalar
from hochdesk.utils.io_loader import build_algebra, load_document

FIXTURES = Path(__file__).resolve().parent.parent / "hochdesk" / "fixtures"


def fixture_path(name: str) -> Path:
    return FIXTURES / name


def load_spec(name: str):
    spec, _ = load_document(fixture_path(name))
    return spec


def dual_numbers() -> FiniteAlgebra:
    """K[x]/x^2 with basis 1, x."""
    return FiniteAlgebra.build(["1", "x"], [1, 0], [[[1, 0], [0, 1]], [[0, 1], [0, 0]]])


def ground_field() -> FiniteAlgebra:
    return FiniteAlgebra.build(["1"], [1], [[[1]]])


def split_pair() -> FiniteAlgebra:
    """K x K with idempotent basis e, f."""
    return FiniteAlgebra.build(["e", "f"], [1, 1], [[[1, 0], [0, 0]], [[0, 0], [0, 1]]])


def exterior_one() -> FiniteAlgebra:
    """Exterior algebra on one generator x of degree 1."""
    return FiniteAlgebra.build(["1", "x"], [1, 0], [[[1, 0], [0, 1]], [[0, 1], [0, 0]]], degrees=[0, 1])


@pytest.fixture
def dual():
    return dual_numbers()


@pytest.fixture
def fixture_algebra():
    def load(name: str) -> FiniteAlgebra:
        spec = load_spec(name)
        return build_algebra(getattr(spec, "from_algebra", None) or spec)
    return load


def _monomial_table(n, product):
    """Dense table with e_i e_j = e_{product(i, j)}, or 0 when product returns None."""
    return [[[1 if product(i, j) == k else 0 for k in range(n)] for j in range(n)] for i in range(n)]


def _two_factors(i, j):
    # e, f orthogonal idempotents; x = f x f with x^2 = 0
    table = {(0, 0): 0, (1, 1): 1, (1, 2): 2, (2, 1): 2}
    return table.get((i, j))


def _upper_triangular(i, j):
    # e11, e12, e22
    table = {(0, 0): 0, (0, 1): 1, (1, 2): 1, (2, 2): 2}
    return table.get((i, j))


# every unital algebra of dimension <= 3 over an algebraically closed field, up to isomorphism
SMALL_TABLES = {
    "field": (["1"], [1], [[[1]]]),
    "split-pair": (["e", "f"], [1, 1], _monomial_table(2, lambda i, j: i if i == j else None)),
    "dual-numbers": (["1", "x"], [1, 0], _monomial_table(2, lambda i, j: i + j if i + j < 2 else None)),
    "split-triple": (["e", "f", "g"], [1, 1, 1], _monomial_table(3, lambda i, j: i if i == j else None)),
    "point-and-dual": (["e", "f", "x"], [1, 1, 0], _monomial_table(3, _two_factors)),
    "truncated-cubic": (["1", "x", "x2"], [1, 0, 0], _monomial_table(3, lambda i, j: i + j if i + j < 3 else None)),
    "square-zero-plane": (["1", "x", "y"], [1, 0, 0],
                          _monomial_table(3, lambda i, j: i + j if 0 in (i, j) else None)),
    "upper-triangular": (["e11", "e12", "e22"], [1, 0, 1], _monomial_table(3, _upper_triangular)),
}


def small_algebra(name: str) -> FiniteAlgebra:
    return FiniteAlgebra.build(*SMALL_TABLES[name])


coefficients = st.one_of(st.integers(-3, 3).map(scalar), st.integers(1, 3).map(lambda k: scalar(k) * QGEN))


@st.composite
def invertible_changes(draw, n):
    p = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        p[i][i] = scalar(draw(st.sampled_from([1, -1, 2, 3]))) * draw(st.sampled_from([ONE, QGEN]))
        for j in range(i + 1, n):
            p[i][j] = scalar(draw(st.integers(-2, 2)))
    return p


@st.composite
def small_algebras(draw):
    """A catalogue algebra written in a randomly drawn basis."""
    a = small_algebra(draw(st.sampled_from(sorted(SMALL_TABLES))))
    return change_basis(a, draw(invertible_changes(a.dim)))


@st.composite
def cochains(draw, a: FiniteAlgebra, degree: int):
    values = {}
    for t in itertools.product(range(a.dim), repeat=degree):
        vec = {}
        for o in range(a.dim):
            c = draw(st.integers(-1, 1))
            if c:
                vec[o] = scalar(c)
        if vec:
            values[t] = vec
    return HochschildCochain(degree, values)


@st.composite
def cocycles(draw, a: FiniteAlgebra, degree: int):
    """A random combination of HH^degree representatives plus a random coboundary."""
    z = HochschildCochain(degree, {})
    for rep in hochschild_cohomology(a, max_degree=degree).representatives[degree]:
        z = z.combine(rep, scalar(draw(st.integers(-2, 2))))
    if degree:
        z = z.combine(hochschild_differential(a, draw(cochains(a, degree - 1))))
    return z
