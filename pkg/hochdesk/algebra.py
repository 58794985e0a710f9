"""
Finite-dimensional unital associative algebras over Q(q), their bimodules,
Hochschild cochain and chain complexes (unreduced bar model), cup product
and trace pairings.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .errors import CapExceeded, ValidationFailure
from .kernel import (
    ONE,
    ZERO,
    CheckReport,
    ExactMatrix,
    FiniteComplex,
    Scalar,
    SparseVector,
    cohomology,
    kernel_basis,
    scalar,
    solve,
    sparse_add,
    to_dense,
    to_sparse,
    transpose,
)

logger = logging.getLogger(__name__)

Weight = Tuple[int, ...]
CochainKey = Tuple[Tuple[int, ...], int]


# ---------- Algebras ----------

@dataclass(frozen=True)
class FiniteAlgebra:
    """Basis e_0..e_{n-1}; mul[i][j] is the sparse coefficient vector of e_i e_j."""

    basis: Tuple[str, ...]
    unit: Tuple[Scalar, ...]
    mul: Tuple[Tuple[SparseVector, ...], ...] = field(repr=False)
    degrees: Optional[Tuple[int, ...]] = None
    weights: Optional[Tuple[Weight, ...]] = None

    @classmethod
    def build(cls, basis: Sequence[str], unit: Sequence, mul: Sequence[Sequence[Sequence]],
              degrees: Optional[Sequence[int]] = None,
              weights: Optional[Sequence[Sequence[int]]] = None) -> "FiniteAlgebra":
        """Build from dense nested lists (coefficients may be strings or ints)."""
        n = len(basis)
        if len(unit) != n or len(mul) != n or any(len(row) != n for row in mul):
            raise ValidationFailure("Structure constants do not match the basis size", {"dim": n})
        table = []
        for row in mul:
            out_row = []
            for entry in row:
                if len(entry) != n:
                    raise ValidationFailure("Product vector has the wrong length", {"dim": n})
                out_row.append(to_sparse([scalar(c) for c in entry]))
            table.append(tuple(out_row))
        return cls(
            basis=tuple(basis),
            unit=tuple(scalar(c) for c in unit),
            mul=tuple(table),
            degrees=tuple(degrees) if degrees is not None else None,
            weights=tuple(tuple(w) for w in weights) if weights is not None else None,
        )

    @property
    def dim(self) -> int:
        return len(self.basis)

    def degree(self, i: int) -> int:
        return self.degrees[i] if self.degrees is not None else 0

    def weight(self, i: int) -> Weight:
        return self.weights[i] if self.weights is not None else ()

    def product(self, u: SparseVector, v: SparseVector) -> SparseVector:
        out: SparseVector = {}
        for i, a in u.items():
            for j, b in v.items():
                for k, c in self.mul[i][j].items():
                    sparse_add(out, k, a * b * c)
        return out

    def unit_vector(self) -> SparseVector:
        return to_sparse(self.unit)

    def map_coefficients(self, fn) -> "FiniteAlgebra":
        mul = tuple(tuple({k: fn(c) for k, c in entry.items() if fn(c)} for entry in row) for row in self.mul)
        return FiniteAlgebra(self.basis, tuple(fn(c) for c in self.unit), mul, self.degrees, self.weights)


def validate_algebra(a: FiniteAlgebra) -> CheckReport:
    """Unitality first, then associativity over all basis triples, then gradings."""
    u = a.unit_vector()
    for i in range(a.dim):
        e = {i: ONE}
        if a.product(u, e) != e:
            return CheckReport.failed("unitality", (a.basis[i],), f"1*{a.basis[i]} != {a.basis[i]}")
        if a.product(e, u) != e:
            return CheckReport.failed("unitality", (a.basis[i],), f"{a.basis[i]}*1 != {a.basis[i]}")
    for i, j, k in itertools.product(range(a.dim), repeat=3):
        left = a.product(a.mul[i][j], {k: ONE})
        right = a.product({i: ONE}, a.mul[j][k])
        if left != right:
            names = (a.basis[i], a.basis[j], a.basis[k])
            return CheckReport.failed("associativity", names, f"({names[0]}{names[1]}){names[2]} != "
                                                              f"{names[0]}({names[1]}{names[2]})")
    for i, j in itertools.product(range(a.dim), repeat=2):
        for k in a.mul[i][j]:
            if a.degrees is not None and a.degree(k) != a.degree(i) + a.degree(j):
                return CheckReport.failed("grading", (a.basis[i], a.basis[j]), "product is not homogeneous")
            if a.weights is not None and a.weight(k) != _add_weights(a.weight(i), a.weight(j)):
                return CheckReport.failed("weights", (a.basis[i], a.basis[j]), "product is not weight-homogeneous")
    return CheckReport.passed()


def _add_weights(*ws: Weight) -> Weight:
    ws = [w for w in ws if w]
    if not ws:
        return ()
    return tuple(sum(c) for c in zip(*ws))


def _sub_weights(a: Weight, b: Weight) -> Weight:
    if not a and not b:
        return ()
    a = a or tuple(0 for _ in b)
    b = b or tuple(0 for _ in a)
    return tuple(x - y for x, y in zip(a, b))


def center_basis(a: FiniteAlgebra) -> List[List[Scalar]]:
    """Basis of {z : z e_j = e_j z for all j}."""
    columns = []
    for i in range(a.dim):
        col: SparseVector = {}
        for j in range(a.dim):
            for k, c in a.mul[i][j].items():
                sparse_add(col, j * a.dim + k, c)
            for k, c in a.mul[j][i].items():
                sparse_add(col, j * a.dim + k, -c)
        columns.append(col)
    return kernel_basis(ExactMatrix.from_columns(a.dim * a.dim, columns))


def change_basis(a: FiniteAlgebra, p: Sequence[Sequence], labels: Optional[Sequence[str]] = None) -> FiniteAlgebra:
    """New basis f_j = sum_i p[i][j] e_i. Gradings are dropped."""
    mat = ExactMatrix.from_dense(p)
    if mat.nrows != a.dim or mat.ncols != a.dim:
        raise ValidationFailure("Basis change must be square of size dim a", {"dim": a.dim})
    cols = [mat.column(j) for j in range(a.dim)]

    def coords(v: SparseVector) -> SparseVector:
        x = solve(mat, to_dense(v, a.dim))
        if x is None:
            raise ValidationFailure("Basis change matrix is singular")
        return to_sparse(x)

    mul = tuple(tuple(coords(a.product(cols[i], cols[j])) for j in range(a.dim)) for i in range(a.dim))
    unit = coords(a.unit_vector())
    return FiniteAlgebra(
        basis=tuple(labels) if labels else tuple(f"f{j}" for j in range(a.dim)),
        unit=tuple(to_dense(unit, a.dim)),
        mul=mul,
    )


def tensor_product(a: FiniteAlgebra, b: FiniteAlgebra) -> FiniteAlgebra:
    """a (x) b with Koszul sign (-1)^{|b_j||a_k|}; weights are concatenated."""
    n, m = a.dim, b.dim
    basis = tuple(f"{x}*{y}" if x != "1" and y != "1" else (y if x == "1" else x)
                  for x in a.basis for y in b.basis)
    if len(set(basis)) != len(basis):
        basis = tuple(f"{x}(x){y}" for x in a.basis for y in b.basis)
    mul = []
    for i, j in itertools.product(range(n), range(m)):
        row = []
        for k, l in itertools.product(range(n), range(m)):
            sign = -1 if (b.degree(j) * a.degree(k)) % 2 else 1
            out: SparseVector = {}
            for s, c in a.mul[i][k].items():
                for t, d in b.mul[j][l].items():
                    sparse_add(out, s * m + t, sign * c * d)
            row.append(out)
        mul.append(tuple(row))
    unit = tuple(x * y for x in a.unit for y in b.unit)
    degrees = None
    if a.degrees is not None or b.degrees is not None:
        degrees = tuple(a.degree(i) + b.degree(j) for i in range(n) for j in range(m))
    weights = None
    if a.weights is not None and b.weights is not None:
        weights = tuple(a.weight(i) + b.weight(j) for i in range(n) for j in range(m))
    return FiniteAlgebra(basis, unit, tuple(mul), degrees, weights)


# ---------- Bimodules ----------

@dataclass(frozen=True)
class Bimodule:
    """left[i][m] = e_i . m_m and right[m][i] = m_m . e_i as sparse vectors."""

    basis: Tuple[str, ...]
    left: Tuple[Tuple[SparseVector, ...], ...] = field(repr=False)
    right: Tuple[Tuple[SparseVector, ...], ...] = field(repr=False)
    weights: Optional[Tuple[Weight, ...]] = None
    diagonal: bool = False

    @property
    def dim(self) -> int:
        return len(self.basis)

    def weight(self, m: int) -> Weight:
        return self.weights[m] if self.weights is not None else ()

    @classmethod
    def of_algebra(cls, a: FiniteAlgebra) -> "Bimodule":
        right = tuple(tuple(a.mul[m][i] for i in range(a.dim)) for m in range(a.dim))
        return cls(a.basis, a.mul, right, a.weights, diagonal=True)

    @classmethod
    def param_dual(cls, a: FiniteAlgebra, vdim: int) -> "Bimodule":
        """V* (x) a with basis index v * dim a + k."""
        n = a.dim

        def shift(vec: SparseVector, v: int) -> SparseVector:
            return {v * n + k: c for k, c in vec.items()}

        basis = tuple(f"v{v}*{a.basis[k]}" for v in range(vdim) for k in range(n))
        left = tuple(tuple(shift(a.mul[i][m % n], m // n) for m in range(vdim * n)) for i in range(n))
        right = tuple(tuple(shift(a.mul[m % n][i], m // n) for i in range(n)) for m in range(vdim * n))
        weights = tuple(a.weight(k) for _ in range(vdim) for k in range(n)) if a.weights is not None else None
        return cls(basis, left, right, weights)

    def act_left(self, i: int, m: int) -> SparseVector:
        return self.left[i][m]

    def act_right(self, m: int, i: int) -> SparseVector:
        return self.right[m][i]


def validate_bimodule(a: FiniteAlgebra, mod: Bimodule) -> CheckReport:
    u = a.unit_vector()
    for m in range(mod.dim):
        lu: SparseVector = {}
        ru: SparseVector = {}
        for i, c in u.items():
            for k, d in mod.left[i][m].items():
                sparse_add(lu, k, c * d)
            for k, d in mod.right[m][i].items():
                sparse_add(ru, k, c * d)
        if lu != {m: ONE} or ru != {m: ONE}:
            return CheckReport.failed("unitality", (mod.basis[m],), "unit does not act as identity")
    for i, j, m in itertools.product(range(a.dim), range(a.dim), range(mod.dim)):
        one = _left_on(a, mod, a.mul[i][j], m)
        two = _left_vec(mod, i, mod.left[j][m])
        if one != two:
            return CheckReport.failed("left associativity", (a.basis[i], a.basis[j], mod.basis[m]), "")
        three = _right_vec(mod, mod.right[m][i], j)
        four = _right_on(a, mod, m, a.mul[i][j])
        if three != four:
            return CheckReport.failed("right associativity", (mod.basis[m], a.basis[i], a.basis[j]), "")
        five = _right_vec(mod, mod.left[i][m], j)
        six = _left_vec(mod, i, mod.right[m][j])
        if five != six:
            return CheckReport.failed("actions commute", (a.basis[i], mod.basis[m], a.basis[j]), "")
    return CheckReport.passed()


def _left_on(a: FiniteAlgebra, mod: Bimodule, x: SparseVector, m: int) -> SparseVector:
    out: SparseVector = {}
    for i, c in x.items():
        for k, d in mod.left[i][m].items():
            sparse_add(out, k, c * d)
    return out


def _right_on(a: FiniteAlgebra, mod: Bimodule, m: int, x: SparseVector) -> SparseVector:
    out: SparseVector = {}
    for i, c in x.items():
        for k, d in mod.right[m][i].items():
            sparse_add(out, k, c * d)
    return out


def _left_vec(mod: Bimodule, i: int, v: SparseVector) -> SparseVector:
    out: SparseVector = {}
    for m, c in v.items():
        for k, d in mod.left[i][m].items():
            sparse_add(out, k, c * d)
    return out


def _right_vec(mod: Bimodule, v: SparseVector, i: int) -> SparseVector:
    out: SparseVector = {}
    for m, c in v.items():
        for k, d in mod.right[m][i].items():
            sparse_add(out, k, c * d)
    return out


# ---------- Cochains ----------

@dataclass(frozen=True)
class HochschildCochain:
    """values maps an input tuple of basis indices to a sparse output vector."""

    degree: int
    values: Dict[Tuple[int, ...], SparseVector] = field(default_factory=dict)
    diagonal: bool = True

    def is_zero(self) -> bool:
        return all(not v for v in self.values.values())

    def evaluate(self, inputs: Tuple[int, ...]) -> SparseVector:
        return self.values.get(tuple(inputs), {})

    def combine(self, other: "HochschildCochain", coef: Scalar = ONE) -> "HochschildCochain":
        if other.degree != self.degree:
            raise ValidationFailure("Cochains of different degrees", {"left": self.degree, "right": other.degree})
        out = {k: dict(v) for k, v in self.values.items()}
        for key, vec in other.values.items():
            target = out.setdefault(key, {})
            for k, c in vec.items():
                sparse_add(target, k, coef * c)
        return HochschildCochain(self.degree, {k: v for k, v in out.items() if v}, self.diagonal and other.diagonal)

    def scale(self, coef: Scalar) -> "HochschildCochain":
        if not coef:
            return HochschildCochain(self.degree, {}, self.diagonal)
        return HochschildCochain(self.degree, {k: {i: coef * c for i, c in v.items()} for k, v in self.values.items()},
                                 self.diagonal)

    def map_values(self, fn) -> "HochschildCochain":
        out = {}
        for key, vec in self.values.items():
            new = {i: fn(c) for i, c in vec.items()}
            new = {i: c for i, c in new.items() if c}
            if new:
                out[key] = new
        return HochschildCochain(self.degree, out, self.diagonal)

    def to_vector(self, labels: Sequence[CochainKey]) -> List[Scalar]:
        index = {key: n for n, key in enumerate(labels)}
        vec = [ZERO] * len(labels)
        for t, out in self.values.items():
            for o, c in out.items():
                pos = index.get((t, o))
                if pos is None:
                    raise ValidationFailure("Cochain has a component outside the complex basis",
                                            {"inputs": list(t), "output": o})
                vec[pos] = c
        return vec

    @classmethod
    def from_vector(cls, degree: int, labels: Sequence[CochainKey], vec: Sequence[Scalar],
                    diagonal: bool = True) -> "HochschildCochain":
        values: Dict[Tuple[int, ...], SparseVector] = {}
        for (t, o), c in zip(labels, vec):
            if c:
                values.setdefault(t, {})[o] = c
        return cls(degree, values, diagonal)


def unit_cochain(a: FiniteAlgebra) -> HochschildCochain:
    return HochschildCochain(0, {(): a.unit_vector()})


def cochain_labels(a: FiniteAlgebra, mod: Bimodule, r: int, weight: Optional[Weight] = None) -> List[CochainKey]:
    if weight is None:
        return [(t, o) for t in itertools.product(range(a.dim), repeat=r) for o in range(mod.dim)]
    out = []
    by_weight: Dict[Weight, List[int]] = {}
    for o in range(mod.dim):
        by_weight.setdefault(mod.weight(o), []).append(o)
    for t in itertools.product(range(a.dim), repeat=r):
        target = _add_weights(weight, *[a.weight(i) for i in t]) if t else weight
        for o in by_weight.get(target, []):
            out.append((t, o))
    return out


def _inverse_products(a: FiniteAlgebra) -> Dict[int, List[Tuple[int, int, Scalar]]]:
    inv: Dict[int, List[Tuple[int, int, Scalar]]] = {}
    for b in range(a.dim):
        for c in range(a.dim):
            for k, coef in a.mul[b][c].items():
                inv.setdefault(k, []).append((b, c, coef))
    return inv


def _delta_terms(a: FiniteAlgebra, mod: Bimodule, inv, t: Tuple[int, ...], o: int) -> Iterator[Tuple[Tuple[int, ...], int, Scalar]]:
    """Nonzero values of delta applied to the basis cochain (t -> m_o)."""
    r = len(t)
    for b in range(a.dim):
        for k, c in mod.act_left(b, o).items():
            yield (b,) + t, k, c
    for i in range(1, r + 1):
        sign = -1 if i % 2 else 1
        for b, c, coef in inv.get(t[i - 1], ()):
            yield t[:i - 1] + (b, c) + t[i:], o, sign * coef
    sign = -1 if (r + 1) % 2 else 1
    for b in range(a.dim):
        for k, c in mod.act_right(o, b).items():
            yield t + (b,), k, sign * c


def hochschild_differential(a: FiniteAlgebra, cochain: HochschildCochain,
                            mod: Optional[Bimodule] = None) -> HochschildCochain:
    """delta applied directly to a sparse cochain."""
    mod = mod or Bimodule.of_algebra(a)
    inv = _inverse_products(a)
    out: Dict[Tuple[int, ...], SparseVector] = {}
    for t, vec in cochain.values.items():
        for o, coef in vec.items():
            for u, k, c in _delta_terms(a, mod, inv, t, o):
                sparse_add(out.setdefault(u, {}), k, coef * c)
    return HochschildCochain(cochain.degree + 1, {k: v for k, v in out.items() if v}, cochain.diagonal)


def hochschild_complex(a: FiniteAlgebra, mod: Optional[Bimodule] = None, max_degree: int = 3,
                       cap: int = 200_000, weight: Optional[Weight] = None) -> FiniteComplex:
    """Unreduced Hochschild cochain complex in degrees 0..max_degree+1.

    Labels of degree r are (input tuple, output index) pairs. With ``weight``
    only the summand of that weight (output weight minus input weights) is built.
    """
    if max_degree < 0:
        raise ValidationFailure("max_degree must be non-negative", {"max_degree": max_degree})
    mod = mod or Bimodule.of_algebra(a)
    top = max_degree + 1
    if weight is None and a.dim ** top * mod.dim > cap:
        raise CapExceeded(f"Hochschild term of degree {top} has dimension {a.dim ** top * mod.dim} > cap {cap}",
                          {"degree": top, "cap": cap})
    labels = [cochain_labels(a, mod, r, weight) for r in range(top + 1)]
    for r, lab in enumerate(labels):
        if len(lab) > cap:
            raise CapExceeded(f"Hochschild term of degree {r} exceeds cap {cap}", {"degree": r, "cap": cap})
    inv = _inverse_products(a)
    differentials = []
    for r in range(top):
        index = {key: n for n, key in enumerate(labels[r + 1])}
        columns = []
        for t, o in labels[r]:
            col: SparseVector = {}
            for u, k, c in _delta_terms(a, mod, inv, t, o):
                pos = index.get((u, k))
                if pos is None:
                    raise ValidationFailure("Structure constants are not weight-homogeneous",
                                            {"inputs": list(u), "output": k})
                sparse_add(col, pos, c)
            columns.append(col)
        differentials.append(ExactMatrix.from_columns(len(labels[r + 1]), columns))
    logger.info(f"Hochschild complex dim {a.dim}, module {mod.dim}, weight {weight}: "
                f"terms {[len(lab) for lab in labels]}")
    return FiniteComplex(tuple(len(lab) for lab in labels), tuple(differentials),
                         tuple(tuple(lab) for lab in labels))


@dataclass
class CohomologyResult:
    dims: List[int]
    representatives: List[List[HochschildCochain]]
    complex: FiniteComplex


def hochschild_cohomology(a: FiniteAlgebra, mod: Optional[Bimodule] = None, max_degree: int = 3,
                          cap: int = 200_000, weight: Optional[Weight] = None) -> CohomologyResult:
    c = hochschild_complex(a, mod, max_degree, cap, weight)
    diagonal = mod is None or mod.diagonal
    dims, reps = [], []
    for r in range(max_degree + 1):
        d, vectors = cohomology(c, r)
        dims.append(d)
        reps.append([HochschildCochain.from_vector(r, c.labels[r], v, diagonal) for v in vectors])
    return CohomologyResult(dims, reps, c)


def cochain_class_is_zero(a: FiniteAlgebra, z: HochschildCochain, mod: Optional[Bimodule] = None,
                          cap: int = 200_000, weight: Optional[Weight] = None) -> Optional[HochschildCochain]:
    """Primitive h with delta h = z, or None when z is not a coboundary."""
    mod = mod or Bimodule.of_algebra(a)
    if not hochschild_differential(a, z, mod).is_zero():
        raise ValidationFailure(f"Not a cocycle in degree {z.degree}", {"degree": z.degree})
    if z.degree == 0:
        return HochschildCochain(-1, {}) if z.is_zero() else None
    if z.is_zero():
        return HochschildCochain(z.degree - 1, {}, z.diagonal)
    c = hochschild_complex(a, mod, max(z.degree - 1, 0), cap, weight)
    x = solve(c.differential(z.degree - 1), z.to_vector(c.labels[z.degree]))
    if x is None:
        return None
    return HochschildCochain.from_vector(z.degree - 1, c.labels[z.degree - 1], x, z.diagonal)


def cup(a: FiniteAlgebra, alpha: HochschildCochain, beta: HochschildCochain) -> HochschildCochain:
    """(alpha u beta)(x_1..x_{p+q}) = alpha(x_1..x_p) beta(x_{p+1}..x_{p+q})."""
    if not (alpha.diagonal and beta.diagonal):
        raise ValidationFailure("Cup product needs cochains valued in the algebra itself")
    out: Dict[Tuple[int, ...], SparseVector] = {}
    for s, u in alpha.values.items():
        for t, v in beta.values.items():
            prod = a.product(u, v)
            if prod:
                target = out.setdefault(s + t, {})
                for k, c in prod.items():
                    sparse_add(target, k, c)
    return HochschildCochain(alpha.degree + beta.degree, {k: v for k, v in out.items() if v})



def graded_commutator(a: FiniteAlgebra, alpha: HochschildCochain, beta: HochschildCochain) -> HochschildCochain:
    """alpha u beta - (-1)^{|alpha||beta|} beta u alpha."""
    coef = ONE if (alpha.degree * beta.degree) % 2 else -ONE
    return cup(a, alpha, beta).combine(cup(a, beta, alpha), coef)

# ---------- Homology ----------

def _boundary_terms(a: FiniteAlgebra, mod: Bimodule, t: Tuple[int, ...], o: int):
    """b(m_o (x) e_t) in the bar model M (x) a^{(x) r}."""
    r = len(t)
    if r == 0:
        return
    for k, c in mod.act_right(o, t[0]).items():
        yield t[1:], k, c
    for i in range(1, r):
        sign = -1 if i % 2 else 1
        for k, c in a.mul[t[i - 1]][t[i]].items():
            yield t[:i - 1] + (k,) + t[i + 1:], o, sign * c
    sign = -1 if r % 2 else 1
    for k, c in mod.act_left(t[-1], o).items():
        yield t[:-1], k, sign * c


def hochschild_chain_complex(a: FiniteAlgebra, mod: Optional[Bimodule] = None, max_degree: int = 3,
                             cap: int = 200_000) -> FiniteComplex:
    """Chains M (x) a^{(x) r} for r = max_degree+1 down to 0, indexed as a
    cochain complex: term k holds chains of degree max_degree + 1 - k."""
    mod = mod or Bimodule.of_algebra(a)
    top = max_degree + 1
    if a.dim ** top * mod.dim > cap:
        raise CapExceeded(f"Hochschild chains of degree {top} exceed cap {cap}", {"degree": top, "cap": cap})
    labels = [cochain_labels(a, mod, r) for r in range(top + 1)]
    differentials = []
    for r in range(top, 0, -1):
        index = {key: n for n, key in enumerate(labels[r - 1])}
        columns = []
        for t, o in labels[r]:
            col: SparseVector = {}
            for u, k, c in _boundary_terms(a, mod, t, o):
                sparse_add(col, index[(u, k)], c)
            columns.append(col)
        differentials.append(ExactMatrix.from_columns(len(labels[r - 1]), columns))
    ordered = list(reversed(labels))
    return FiniteComplex(tuple(len(lab) for lab in ordered), tuple(differentials),
                         tuple(tuple(lab) for lab in ordered))


def hochschild_homology(a: FiniteAlgebra, mod: Optional[Bimodule] = None, max_degree: int = 3,
                        cap: int = 200_000) -> CohomologyResult:
    c = hochschild_chain_complex(a, mod, max_degree, cap)
    top = max_degree + 1
    dims, reps = [], []
    for r in range(max_degree + 1):
        d, vectors = cohomology(c, top - r)
        dims.append(d)
        reps.append([HochschildCochain.from_vector(r, c.labels[top - r], v) for v in vectors])
    return CohomologyResult(dims, reps, c)


# ---------- Trace pairing ----------

@dataclass
class PairingReport:
    nondegenerate: bool
    degree: Optional[int] = None
    witness: Optional[List[Scalar]] = None


def trace_pairing_check(a: FiniteAlgebra, tr: Sequence, n: int) -> PairingReport:
    """<u, v> = tr(u v) between degree d and degree n - d, for every d."""
    if a.degrees is None:
        raise ValidationFailure("Trace pairing needs a graded algebra")
    trace = [scalar(c) for c in tr]
    if len(trace) != a.dim:
        raise ValidationFailure("Trace has the wrong length", {"dim": a.dim, "got": len(trace)})
    for i, c in enumerate(trace):
        if c and a.degree(i) != n:
            raise ValidationFailure(f"Trace is not supported in degree {n}", {"basis": a.basis[i]})
    by_degree: Dict[int, List[int]] = {}
    for i in range(a.dim):
        by_degree.setdefault(a.degree(i), []).append(i)
    for d in sorted(by_degree):
        rows = by_degree[d]
        cols = by_degree.get(n - d, [])
        pairing = []
        for i in rows:
            pairing.append({jj: val for jj, j in enumerate(cols)
                            if (val := sum((trace[k] * c for k, c in a.mul[i][j].items()), ZERO))})
        mat = ExactMatrix(len(rows), len(cols), tuple(pairing))
        left_kernel = kernel_basis(transpose(mat))
        if left_kernel:
            witness = [ZERO] * a.dim
            for pos, i in enumerate(rows):
                witness[i] = left_kernel[0][pos]
            logger.info(f"trace pairing degenerate in degree {d}")
            return PairingReport(False, d, witness)
    return PairingReport(True)


def zero_weight(a: FiniteAlgebra) -> Optional[Weight]:
    """The weight of xi(m) when a carries weights, else None."""
    if a.weights is None or not a.weights:
        return None
    return tuple(0 for _ in a.weights[0])
