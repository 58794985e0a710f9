"""
Exact scalars over Q(q) and exact linear algebra over them.

Scalars are elements of sympy's ``QQ.frac_field(q)``; every value is kept
reduced by sympy itself. Matrices are stored as sparse rows and reduced by
Gauss-Jordan elimination with deterministic pivoting, so kernels, solutions
and cohomology representatives are reproducible between runs.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import QQ, Symbol
from sympy.parsing.sympy_parser import parse_expr

from .errors import InputError, ValidationFailure

logger = logging.getLogger(__name__)

q = Symbol("q")
FIELD = QQ.frac_field(q)
QGEN = FIELD.gens[0]
ZERO = FIELD.zero
ONE = FIELD.one

Scalar = Any
SparseVector = Dict[int, Scalar]


# ---------- Scalars ----------

def scalar(value: Any) -> Scalar:
    """Coerce ints, Fractions, strings and field elements into FIELD."""
    if FIELD.of_type(value):
        return value
    if isinstance(value, bool):
        raise InputError(f"Not a scalar: {value!r}")
    if isinstance(value, int):
        return FIELD.convert(value)
    if isinstance(value, Fraction):
        return FIELD.convert(value.numerator) / value.denominator
    if isinstance(value, str):
        return parse_scalar(value)
    try:
        return FIELD.from_sympy(value)
    except Exception:
        raise InputError(f"Not a scalar: {value!r}")


def parse_scalar(text: str) -> Scalar:
    """Parse "1/2", "q", "(q+1)/q" and friends. Only the symbol q is allowed."""
    try:
        expr = parse_expr(str(text), local_dict={"q": q}, evaluate=True)
    except Exception:
        raise InputError(f"Cannot parse scalar {text!r}")
    if expr.free_symbols - {q}:
        raise InputError(f"Scalar {text!r} uses symbols other than q")
    try:
        return FIELD.from_sympy(expr)
    except Exception:
        raise InputError(f"Scalar {text!r} is not a rational function of q")


def render_scalar(value: Scalar) -> str:
    return str(value)


def is_constant(value: Scalar) -> bool:
    return not value.diff(QGEN)


@dataclass(frozen=True)
class Derivation:
    """xi = scale * d/dq acting on Q(q)."""

    scale: Scalar
    name: str = "d/dq"

    def __call__(self, value: Scalar) -> Scalar:
        return self.scale * value.diff(QGEN)

    @classmethod
    def of(cls, name: str) -> "Derivation":
        key = name.replace(" ", "").lower()
        if key in ("d/dq", "dq", "partial_q"):
            return cls(ONE, "d/dq")
        if key in ("q*d/dq", "qd/dq", "q_partial_q", "euler"):
            return cls(QGEN, "q*d/dq")
        raise InputError(f"Unknown derivation {name!r}; use d/dq or q*d/dq")


D_Q = Derivation(ONE, "d/dq")
Q_D_Q = Derivation(QGEN, "q*d/dq")


# ---------- Vectors ----------

def sparse_add(target: SparseVector, key: int, value: Scalar) -> None:
    if not value:
        return
    total = target.get(key, ZERO) + value
    if total:
        target[key] = total
    else:
        target.pop(key, None)


def to_sparse(vector: Sequence[Scalar]) -> SparseVector:
    return {i: v for i, v in enumerate(vector) if v}


def to_dense(vector: SparseVector, size: int) -> List[Scalar]:
    out = [ZERO] * size
    for i, v in vector.items():
        out[i] = v
    return out


def is_zero_vector(vector: Iterable[Scalar]) -> bool:
    return not any(vector)


# ---------- Matrices ----------

@dataclass(frozen=True)
class ExactMatrix:
    """Sparse rows; rows[i] maps column index to a nonzero Scalar."""

    nrows: int
    ncols: int
    rows: Tuple[SparseVector, ...] = field(repr=False)

    def __post_init__(self):
        if len(self.rows) != self.nrows:
            raise ValidationFailure("Row count does not match matrix shape",
                                    {"nrows": self.nrows, "rows": len(self.rows)})

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "ExactMatrix":
        return cls(nrows, ncols, tuple({} for _ in range(nrows)))

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(n, n, tuple({i: ONE} for i in range(n)))

    @classmethod
    def from_dense(cls, entries: Sequence[Sequence[Any]], ncols: Optional[int] = None) -> "ExactMatrix":
        width = ncols if ncols is not None else (len(entries[0]) if entries else 0)
        rows = []
        for row in entries:
            if len(row) != width:
                raise ValidationFailure("Ragged matrix", {"expected": width, "got": len(row)})
            rows.append(to_sparse([scalar(x) for x in row]))
        return cls(len(rows), width, tuple(rows))

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[SparseVector]) -> "ExactMatrix":
        rows: List[SparseVector] = [{} for _ in range(nrows)]
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    rows[i][j] = v
        return cls(nrows, len(columns), tuple(rows))

    def to_dense(self) -> List[List[Scalar]]:
        return [to_dense(r, self.ncols) for r in self.rows]

    def entry(self, i: int, j: int) -> Scalar:
        return self.rows[i].get(j, ZERO)

    def column(self, j: int) -> SparseVector:
        return {i: r[j] for i, r in enumerate(self.rows) if j in r}

    def apply(self, vector: Sequence[Scalar]) -> List[Scalar]:
        if len(vector) != self.ncols:
            raise ValidationFailure("Dimension mismatch in matrix-vector product",
                                    {"cols": self.ncols, "vector": len(vector)})
        out = []
        for r in self.rows:
            acc = ZERO
            for j, v in r.items():
                if vector[j]:
                    acc += v * vector[j]
            out.append(acc)
        return out

    def is_zero(self) -> bool:
        return all(not r for r in self.rows)


def transpose(m: ExactMatrix) -> ExactMatrix:
    rows: List[SparseVector] = [{} for _ in range(m.ncols)]
    for i, r in enumerate(m.rows):
        for j, v in r.items():
            rows[j][i] = v
    return ExactMatrix(m.ncols, m.nrows, tuple(rows))


def matmul(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    if a.ncols != b.nrows:
        raise ValidationFailure("Dimension mismatch in matrix product",
                                {"left": (a.nrows, a.ncols), "right": (b.nrows, b.ncols)})
    rows = []
    for r in a.rows:
        acc: SparseVector = {}
        for k, v in r.items():
            for j, w in b.rows[k].items():
                sparse_add(acc, j, v * w)
        rows.append(acc)
    return ExactMatrix(a.nrows, b.ncols, tuple(rows))


# ---------- Elimination ----------

def _rref(rows: Sequence[SparseVector]) -> Tuple[List[SparseVector], List[int]]:
    """Reduced row echelon form and its pivot columns, in column order.

    Pivoting is row-major: the next pivot is the leftmost nonzero entry of the
    first remaining row. Rows below it are updated fraction-free
    (r <- p r - f prow), and the pivot row is made monic before back substitution.
    """
    pending = [dict(r) for r in rows if r]
    found: List[Tuple[int, SparseVector]] = []
    while pending:
        prow = pending.pop(0)
        col = min(prow)
        p = prow[col]
        for other in pending:
            f = other.get(col)
            if f is None:
                continue
            for j in list(other):
                other[j] = other[j] * p
            for j, v in prow.items():
                sparse_add(other, j, -f * v)
        pending = [r for r in pending if r]
        inv = ONE / p
        found.append((col, {j: v * inv for j, v in prow.items()}))
    found.sort(key=lambda item: item[0])
    for k in range(len(found) - 1, -1, -1):
        col, prow = found[k]
        for _, other in found[:k]:
            f = other.get(col)
            if f is None:
                continue
            for j, v in prow.items():
                sparse_add(other, j, -f * v)
    return [r for _, r in found], [c for c, _ in found]


def rank(m: ExactMatrix) -> int:
    return len(_rref(m.rows)[1])


def kernel_basis(m: ExactMatrix) -> List[List[Scalar]]:
    """Basis of {v : m v = 0}. A 0 x n matrix yields the standard basis of
    K^n and an n x 0 matrix yields the empty list."""
    reduced, pivots = _rref(m.rows)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.ncols):
        if free in pivot_set:
            continue
        v = [ZERO] * m.ncols
        v[free] = ONE
        for row, p in zip(reduced, pivots):
            coef = row.get(free)
            if coef:
                v[p] = -coef
        basis.append(v)
    logger.debug(f"kernel_basis: {m.nrows}x{m.ncols} rank {len(pivots)} nullity {len(basis)}")
    return basis


def solve(m: ExactMatrix, b: Sequence[Any]) -> Optional[List[Scalar]]:
    """A solution of m x = b, or None when b is not in the image."""
    if len(b) != m.nrows:
        raise ValidationFailure("Dimension mismatch in solve", {"rows": m.nrows, "rhs": len(b)})
    rhs = [scalar(x) for x in b]
    augmented = []
    for r, v in zip(m.rows, rhs):
        row = dict(r)
        if v:
            row[m.ncols] = v
        augmented.append(row)
    reduced, pivots = _rref(augmented)
    if pivots and pivots[-1] == m.ncols:
        return None
    x = [ZERO] * m.ncols
    for row, p in zip(reduced, pivots):
        x[p] = row.get(m.ncols, ZERO)
    return x


def image_basis(m: ExactMatrix) -> List[List[Scalar]]:
    """Columns of m at its pivot positions."""
    _, col_pivots = _rref(m.rows)
    return [to_dense(m.column(j), m.nrows) for j in col_pivots]


def quotient_basis(space: Sequence[Sequence[Scalar]], sub: Sequence[Sequence[Scalar]]) -> List[List[Scalar]]:
    """Vectors of ``space`` completing a basis of ``sub`` to one of span(sub + space)."""
    vectors = list(sub) + list(space)
    if not vectors:
        return []
    size = len(vectors[0])
    cols = [to_sparse(v) for v in vectors]
    mat = ExactMatrix.from_columns(size, cols)
    _, pivots = _rref(mat.rows)
    offset = len(sub)
    return [list(space[p - offset]) for p in pivots if p >= offset]


# ---------- Complexes ----------

@dataclass(frozen=True)
class FiniteComplex:
    """Cochain complex C^0 -> C^1 -> ... -> C^top.

    ``differentials[r]`` maps C^r to C^(r+1). The differential leaving the top
    term is zero, so builders append one extra term when they need exact
    cohomology in their last requested degree.
    """

    dims: Tuple[int, ...]
    differentials: Tuple[ExactMatrix, ...]
    labels: Tuple[Tuple[Any, ...], ...] = ()

    def __post_init__(self):
        if len(self.differentials) != max(0, len(self.dims) - 1):
            raise ValidationFailure("A complex needs one differential between consecutive terms",
                                    {"terms": len(self.dims), "differentials": len(self.differentials)})
        for r, d in enumerate(self.differentials):
            if d.ncols != self.dims[r] or d.nrows != self.dims[r + 1]:
                raise ValidationFailure("Differential shape does not match term dimensions",
                                        {"degree": r, "shape": (d.nrows, d.ncols)})
        for r in range(len(self.differentials) - 1):
            if not matmul(self.differentials[r + 1], self.differentials[r]).is_zero():
                raise ValidationFailure(f"d^2 != 0 at degree {r}", {"degree": r})

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def differential(self, r: int) -> ExactMatrix:
        if 0 <= r < len(self.differentials):
            return self.differentials[r]
        nxt = self.dims[r + 1] if 0 <= r + 1 < len(self.dims) else 0
        here = self.dims[r] if 0 <= r < len(self.dims) else 0
        return ExactMatrix.zero(nxt, here)


def cohomology(c: FiniteComplex, r: int) -> Tuple[int, List[List[Scalar]]]:
    """(dim H^r, representatives independent modulo coboundaries)."""
    if not 0 <= r < len(c.dims):
        raise ValidationFailure(f"Degree {r} outside the complex", {"degree": r, "top": c.top})
    cocycles = kernel_basis(c.differential(r))
    boundaries = image_basis(c.differential(r - 1)) if r > 0 else []
    reps = quotient_basis(cocycles, boundaries)
    logger.debug(f"H^{r}: cocycles {len(cocycles)} boundaries {len(boundaries)} -> {len(reps)}")
    return len(reps), reps


def is_coboundary(c: FiniteComplex, r: int, z: Sequence[Any]) -> Optional[List[Scalar]]:
    """A primitive h with d h = z, or None. Raises when z is not a cocycle."""
    if not 0 <= r < len(c.dims):
        raise ValidationFailure(f"Degree {r} outside the complex", {"degree": r, "top": c.top})
    vec = [scalar(x) for x in z]
    if len(vec) != c.dims[r]:
        raise ValidationFailure("Cochain has the wrong dimension", {"degree": r, "expected": c.dims[r]})
    if not is_zero_vector(c.differential(r).apply(vec)):
        raise ValidationFailure(f"Not a cocycle in degree {r}", {"degree": r})
    if r == 0:
        return [] if is_zero_vector(vec) else None
    return solve(c.differential(r - 1), vec)


@dataclass(frozen=True)
class CheckReport:
    """Outcome of a validate_* call: ok, or the first violated identity."""

    ok: bool
    kind: str = ""
    where: Tuple[Any, ...] = ()
    message: str = ""

    @classmethod
    def passed(cls) -> "CheckReport":
        return cls(True)

    @classmethod
    def failed(cls, kind: str, where: Tuple[Any, ...], message: str) -> "CheckReport":
        logger.info(f"check failed: {kind} at {where}: {message}")
        return cls(False, kind, tuple(where), message)

    def to_dict(self) -> Dict[str, Any]:
        return {"ok": self.ok, "kind": self.kind, "where": list(self.where), "message": self.message}
