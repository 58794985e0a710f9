"""
Diagrams of algebras over finite posets and their Gerstenhaber-Schack cohomology.

Convention: for i <= j the restriction phi_{j->i} maps a^j to a^i and is stored
as a dim(a^i) x dim(a^j) matrix whose column b is the image of e_b. A
p-simplex is a chain i_0 < ... < i_p; its Hochschild-degree-q component lives
in CC^q(a^{i_p}, a^{i_0}) with a^{i_0} a bimodule through phi_{i_p -> i_0}.
The total differential is D = delta_S + (-1)^p delta_H.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .algebra import (
    Bimodule,
    FiniteAlgebra,
    HochschildCochain,
    Weight,
    _add_weights,
    _delta_terms,
    _inverse_products,
    cochain_class_is_zero,
    hochschild_cohomology,
    hochschild_complex,
    validate_algebra,
    zero_weight,
)
from .deform import derivation_class
from .errors import CapExceeded, InputError, ValidationFailure
from .kernel import (
    ONE,
    ZERO,
    CheckReport,
    Derivation,
    ExactMatrix,
    FiniteComplex,
    SparseVector,
    cohomology,
    is_coboundary,
    matmul,
    sparse_add,
    to_dense,
)

logger = logging.getLogger(__name__)

Simplex = Tuple[int, ...]
GSKey = Tuple[Simplex, Tuple[int, ...], int]


# ---------- Posets ----------

@dataclass(frozen=True)
class Poset:
    elements: Tuple[str, ...]
    leq: FrozenSet[Tuple[int, int]]

    @classmethod
    def build(cls, elements: Sequence[str], relations: Sequence[Sequence]) -> "Poset":
        """relations lists pairs (a, b) meaning a < b, by name or index."""
        names = tuple(str(e) for e in elements)
        if len(set(names)) != len(names):
            raise InputError("Poset elements must be distinct")
        pos = {n: k for k, n in enumerate(names)}

        def idx(x) -> int:
            if isinstance(x, int) and 0 <= x < len(names):
                return x
            if str(x) in pos:
                return pos[str(x)]
            raise InputError(f"Unknown poset element {x!r}")

        leq = {(k, k) for k in range(len(names))}
        for rel in relations:
            if len(rel) != 2:
                raise InputError(f"Relation {rel!r} must be a pair")
            leq.add((idx(rel[0]), idx(rel[1])))
        changed = True
        while changed:
            changed = False
            for (a, b), (c, d) in itertools.product(list(leq), repeat=2):
                if b == c and (a, d) not in leq:
                    leq.add((a, d))
                    changed = True
        for a, b in leq:
            if a != b and (b, a) in leq:
                raise ValidationFailure("Relation is not antisymmetric",
                                        {"elements": [names[a], names[b]]})
        return cls(names, frozenset(leq))

    @property
    def size(self) -> int:
        return len(self.elements)

    def less(self, i: int, j: int) -> bool:
        return i != j and (i, j) in self.leq

    def chains(self, p: int) -> List[Simplex]:
        """Strict chains with p+1 elements, in lexicographic order."""
        if p < 0:
            return []
        out = [(k,) for k in range(self.size)]
        for _ in range(p):
            out = [c + (k,) for c in out for k in range(self.size) if self.less(c[-1], k)]
        return out

    @property
    def height(self) -> int:
        p = 0
        while self.chains(p + 1):
            p += 1
        return p

    def covers(self) -> List[Tuple[int, int]]:
        return [(i, j) for i, j in sorted(self.leq) if self.less(i, j)
                and not any(self.less(i, k) and self.less(k, j) for k in range(self.size))]

    def index(self, name: str) -> int:
        try:
            return self.elements.index(name)
        except ValueError:
            raise InputError(f"Unknown poset element {name!r}")


# ---------- Diagrams ----------

@dataclass(frozen=True)
class AlgebraDiagram:
    poset: Poset
    algebras: Tuple[FiniteAlgebra, ...]
    given: Dict[Tuple[int, int], ExactMatrix] = field(repr=False)
    maps: Dict[Tuple[int, int], ExactMatrix] = field(default_factory=dict, repr=False)

    @classmethod
    def build(cls, poset: Poset, algebras: Sequence[FiniteAlgebra],
              maps: Dict[Tuple[int, int], ExactMatrix]) -> "AlgebraDiagram":
        """maps[(i, j)] with i < j is phi_{j->i}; missing pairs are composed from given ones."""
        if len(algebras) != poset.size:
            raise InputError("One algebra per poset element is required")
        for (i, j), m in maps.items():
            if not poset.less(i, j):
                raise InputError(f"Map given for {poset.elements[i]}<{poset.elements[j]}, which is not a relation")
            if (m.nrows, m.ncols) != (algebras[i].dim, algebras[j].dim):
                raise InputError(f"Map {poset.elements[i]}<{poset.elements[j]} has the wrong shape")
        full: Dict[Tuple[int, int], ExactMatrix] = dict(maps)
        pending = sorted((p for p in poset.leq if p[0] != p[1] and p not in full),
                         key=lambda p: len([k for k in range(poset.size) if poset.less(p[0], k) and poset.less(k, p[1])]))
        for _ in range(len(pending) + 1):
            rest = []
            for i, j in pending:
                mid = next((k for k in range(poset.size) if poset.less(i, k) and poset.less(k, j)
                            and (i, k) in full and (k, j) in full), None)
                if mid is None:
                    rest.append((i, j))
                else:
                    full[(i, j)] = matmul(full[(i, mid)], full[(mid, j)])
            pending = rest
        if pending:
            i, j = pending[0]
            raise InputError(f"No map for {poset.elements[i]}<{poset.elements[j]}")
        for k, a in enumerate(algebras):
            full[(k, k)] = ExactMatrix.identity(a.dim)
        return cls(poset, tuple(algebras), dict(maps), full)

    def phi(self, i: int, j: int) -> ExactMatrix:
        """phi_{j->i} for i <= j."""
        return self.maps[(i, j)]

    def bimodule(self, i: int, j: int) -> Bimodule:
        """a^i as an a^j-bimodule through phi_{j->i}."""
        target, source = self.algebras[i], self.algebras[j]
        phi = self.phi(i, j)
        images = [phi.column(b) for b in range(source.dim)]
        left = tuple(tuple(target.product(images[b], {m: ONE}) for m in range(target.dim))
                     for b in range(source.dim))
        right = tuple(tuple(target.product({m: ONE}, images[b]) for b in range(source.dim))
                      for m in range(target.dim))
        return Bimodule(target.basis, left, right, target.weights, diagonal=(i == j))


def validate_diagram(d: AlgebraDiagram) -> CheckReport:
    names = d.poset.elements
    for k, a in enumerate(d.algebras):
        report = validate_algebra(a)
        if not report.ok:
            return CheckReport.failed(f"algebra {names[k]}: {report.kind}", report.where, report.message)
    for (i, j), phi in sorted(d.given.items()):
        src, tgt = d.algebras[j], d.algebras[i]
        label = f"{names[i]}<{names[j]}"
        if phi.apply(to_dense(src.unit_vector(), src.dim)) != to_dense(tgt.unit_vector(), tgt.dim):
            return CheckReport.failed("unit", (label,), f"phi {label} does not send 1 to 1")
        images = [phi.column(b) for b in range(src.dim)]
        for b, c in itertools.product(range(src.dim), repeat=2):
            lhs = _apply(phi, src.mul[b][c])
            rhs = tgt.product(images[b], images[c])
            if lhs != rhs:
                return CheckReport.failed("homomorphism", (label, src.basis[b], src.basis[c]),
                                          f"phi({src.basis[b]}{src.basis[c]}) != phi({src.basis[b]})phi({src.basis[c]})")
    for i, k, j in itertools.product(range(d.poset.size), repeat=3):
        if d.poset.less(i, k) and d.poset.less(k, j):
            if matmul(d.phi(i, k), d.phi(k, j)).rows != d.phi(i, j).rows:
                return CheckReport.failed("functoriality", (names[i], names[k], names[j]),
                                          "composite restriction differs from the direct one")
    return CheckReport.passed()


def _apply(m: ExactMatrix, v: SparseVector) -> SparseVector:
    out: SparseVector = {}
    for b, c in v.items():
        for i, row in enumerate(m.rows):
            val = row.get(b)
            if val:
                sparse_add(out, i, c * val)
    return out


# ---------- Gerstenhaber-Schack complex ----------

@dataclass(frozen=True)
class GSCochain:
    degree: int
    components: Dict[Simplex, HochschildCochain]

    def to_vector(self, labels: Sequence[GSKey]) -> list:
        index = {key: n for n, key in enumerate(labels)}
        vec = [ZERO] * len(labels)
        for sigma, comp in self.components.items():
            for t, out in comp.values.items():
                for o, c in out.items():
                    pos = index.get((sigma, t, o))
                    if pos is None:
                        raise ValidationFailure("GS cochain component outside the complex basis",
                                                {"simplex": list(sigma)})
                    vec[pos] = c
        return vec

    @classmethod
    def from_vector(cls, degree: int, labels: Sequence[GSKey], vec) -> "GSCochain":
        comps: Dict[Simplex, Dict] = {}
        for (sigma, t, o), c in zip(labels, vec):
            if c:
                comps.setdefault(sigma, {}).setdefault(t, {})[o] = c
        return cls(degree, {s: HochschildCochain(degree - len(s) + 1, v) for s, v in comps.items()})

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components.values())


def gs_labels(d: AlgebraDiagram, r: int, weight: Optional[Weight] = None) -> List[GSKey]:
    labels: List[GSKey] = []
    for p in range(0, min(r, d.poset.height) + 1):
        qdeg = r - p
        for sigma in d.poset.chains(p):
            src, tgt = d.algebras[sigma[-1]], d.algebras[sigma[0]]
            for t in itertools.product(range(src.dim), repeat=qdeg):
                for o in range(tgt.dim):
                    if weight is not None:
                        need = _add_weights(weight, *[src.weight(b) for b in t]) if t else weight
                        if tgt.weight(o) != need:
                            continue
                    labels.append((sigma, t, o))
    return labels


class _GSContext:
    """Cached per-diagram data used while assembling differentials."""

    def __init__(self, d: AlgebraDiagram):
        self.d = d
        self.inv = [_inverse_products(a) for a in d.algebras]
        self.bimods: Dict[Tuple[int, int], Bimodule] = {}
        self.preimages: Dict[Tuple[int, int], Dict[int, List[Tuple[int, object]]]] = {}

    def bimodule(self, i: int, j: int) -> Bimodule:
        if (i, j) not in self.bimods:
            self.bimods[(i, j)] = self.d.bimodule(i, j)
        return self.bimods[(i, j)]

    def preimage(self, i: int, j: int) -> Dict[int, List[Tuple[int, object]]]:
        """For phi_{j->i}: output index -> [(input b, coefficient)]."""
        if (i, j) not in self.preimages:
            table: Dict[int, List[Tuple[int, object]]] = {}
            for row_idx, row in enumerate(self.d.phi(i, j).rows):
                for b, c in row.items():
                    table.setdefault(row_idx, []).append((b, c))
            self.preimages[(i, j)] = table
        return self.preimages[(i, j)]


def _gs_terms(ctx: _GSContext, sigma: Simplex, t: Tuple[int, ...], o: int):
    """Nonzero values of D applied to the basis GS cochain (sigma, t -> e_o)."""
    d = ctx.d
    poset = d.poset
    p = len(sigma) - 1
    # Hochschild direction
    hsign = -1 if p % 2 else 1
    src = sigma[-1]
    for u, k, c in _delta_terms(d.algebras[src], ctx.bimodule(sigma[0], src), ctx.inv[src], t, o):
        yield sigma, u, k, hsign * c
    # simplicial direction: tau runs over (p+1)-chains having sigma as a face
    for x in range(poset.size):
        if poset.less(x, sigma[0]):
            for k, c in d.phi(x, sigma[0]).column(o).items():
                yield (x,) + sigma, t, k, c
        if poset.less(sigma[-1], x):
            sign = -1 if (p + 1) % 2 else 1
            pre = ctx.preimage(sigma[-1], x)
            choices = [pre.get(b, []) for b in t]
            for combo in itertools.product(*choices):
                coef = ONE
                for _, c in combo:
                    coef = coef * c
                yield sigma + (x,), tuple(b for b, _ in combo), o, sign * coef
        for k in range(1, p + 1):
            if poset.less(sigma[k - 1], x) and poset.less(x, sigma[k]):
                sign = -1 if k % 2 else 1
                yield sigma[:k] + (x,) + sigma[k:], t, o, sign * ONE


def gs_differential(d: AlgebraDiagram, cochain: GSCochain) -> GSCochain:
    ctx = _GSContext(d)
    out: Dict[Simplex, Dict[Tuple[int, ...], SparseVector]] = {}
    for sigma, comp in cochain.components.items():
        for t, vec in comp.values.items():
            for o, coef in vec.items():
                for tau, u, k, c in _gs_terms(ctx, sigma, t, o):
                    sparse_add(out.setdefault(tau, {}).setdefault(u, {}), k, coef * c)
    r = cochain.degree + 1
    comps = {}
    for tau, vals in out.items():
        vals = {u: v for u, v in vals.items() if v}
        if vals:
            comps[tau] = HochschildCochain(r - len(tau) + 1, vals)
    return GSCochain(r, comps)


def gs_complex(d: AlgebraDiagram, max_total_degree: int = 3, cap: int = 200_000,
               degree_cap: int = 3, weight: Optional[Weight] = None) -> FiniteComplex:
    """Total GS complex in degrees 0..max_total_degree+1."""
    if max_total_degree > degree_cap:
        raise CapExceeded(f"GS total degree {max_total_degree} exceeds cap {degree_cap}",
                          {"degree": max_total_degree, "cap": degree_cap})
    if d.poset.size == 1:
        return hochschild_complex(d.algebras[0], None, max_total_degree, cap, weight)
    top = max_total_degree + 1
    labels = [gs_labels(d, r, weight) for r in range(top + 1)]
    for r, lab in enumerate(labels):
        if len(lab) > cap:
            raise CapExceeded(f"GS term of degree {r} exceeds cap {cap}", {"degree": r, "cap": cap})
    ctx = _GSContext(d)
    differentials = []
    for r in range(top):
        index = {key: n for n, key in enumerate(labels[r + 1])}
        columns = []
        for sigma, t, o in labels[r]:
            col: SparseVector = {}
            for tau, u, k, c in _gs_terms(ctx, sigma, t, o):
                pos = index.get((tau, u, k))
                if pos is None:
                    if len(tau) - 1 > d.poset.height:
                        continue
                    raise ValidationFailure("GS differential leaves the weight summand",
                                            {"simplex": list(tau)})
                sparse_add(col, pos, c)
            columns.append(col)
        differentials.append(ExactMatrix.from_columns(len(labels[r + 1]), columns))
    logger.info(f"GS complex over {d.poset.size} elements: terms {[len(lab) for lab in labels]}")
    return FiniteComplex(tuple(len(lab) for lab in labels), tuple(differentials),
                         tuple(tuple(lab) for lab in labels))


def gs_cohomology_dims(d: AlgebraDiagram, max_total_degree: int = 2, cap: int = 200_000,
                       degree_cap: int = 3) -> List[int]:
    c = gs_complex(d, max_total_degree, cap, degree_cap)
    return [cohomology(c, r)[0] for r in range(max_total_degree + 1)]


def _xi_matrix(m: ExactMatrix, xi: Derivation) -> ExactMatrix:
    rows = []
    for row in m.rows:
        new = {j: xi(c) for j, c in row.items()}
        rows.append({j: c for j, c in new.items() if c})
    return ExactMatrix(m.nrows, m.ncols, tuple(rows))


def gs_derivation_cocycle(d: AlgebraDiagram, xi: Derivation) -> GSCochain:
    """Vertex components xi(m_{a^i}); edge components xi(phi_{j->i})."""
    comps: Dict[Simplex, HochschildCochain] = {}
    for i, a in enumerate(d.algebras):
        values = {}
        for b, c in itertools.product(range(a.dim), repeat=2):
            vec = {k: xi(v) for k, v in a.mul[b][c].items()}
            vec = {k: v for k, v in vec.items() if v}
            if vec:
                values[(b, c)] = vec
        if values:
            comps[(i,)] = HochschildCochain(2, values)
    for i, j in d.poset.chains(1):
        dphi = _xi_matrix(d.phi(i, j), xi)
        values = {}
        for b in range(d.algebras[j].dim):
            col = dphi.column(b)
            if col:
                values[(b,)] = col
        if values:
            comps[(i, j)] = HochschildCochain(1, values)
    return GSCochain(2, comps)


def _part(cochain: GSCochain, p: int) -> GSCochain:
    return GSCochain(cochain.degree, {s: c for s, c in cochain.components.items() if len(s) - 1 == p})


def _hochschild_only(d: AlgebraDiagram, cochain: GSCochain) -> GSCochain:
    ctx = _GSContext(d)
    comps = {}
    for sigma, comp in cochain.components.items():
        src = sigma[-1]
        out: Dict[Tuple[int, ...], SparseVector] = {}
        for t, vec in comp.values.items():
            for o, coef in vec.items():
                for u, k, c in _delta_terms(d.algebras[src], ctx.bimodule(sigma[0], src), ctx.inv[src], t, o):
                    sparse_add(out.setdefault(u, {}), k, coef * c)
        out = {u: v for u, v in out.items() if v}
        if out:
            comps[sigma] = HochschildCochain(comp.degree + 1, out)
    return GSCochain(cochain.degree + 1, comps)


def _simplicial_only(d: AlgebraDiagram, cochain: GSCochain) -> GSCochain:
    full = gs_differential(d, cochain)
    hoch = _hochschild_only(d, cochain)
    comps = {}
    for sigma, comp in full.components.items():
        p_sigma = len(sigma) - 1
        sign = -1 if (p_sigma % 2) else 1
        if sigma in hoch.components:
            comp = comp.combine(hoch.components[sigma], -sign)
        if not comp.is_zero():
            comps[sigma] = comp
    return GSCochain(full.degree, comps)


def _evaluate(comp: HochschildCochain, args: Sequence[SparseVector]) -> SparseVector:
    """The multilinear value of a Hochschild cochain on arbitrary input vectors."""
    out: SparseVector = {}
    for combo in itertools.product(*(sorted(v.items()) for v in args)):
        coef = ONE
        for _, c in combo:
            coef = coef * c
        for o, c in comp.evaluate(tuple(k for k, _ in combo)).items():
            sparse_add(out, o, coef * c)
    return out


def _unit_component_holds(d: AlgebraDiagram, beta: GSCochain) -> bool:
    """c_i = beta^i(1, 1) acts on both sides of beta^i(1, -) and beta^i(-, 1), and the edge parts on 1
    are the simplicial coboundary of c."""
    units = [a.unit_vector() for a in d.algebras]
    section = {}
    for i, a in enumerate(d.algebras):
        comp = beta.components.get((i,), HochschildCochain(2, {}))
        c = _evaluate(comp, [units[i], units[i]])
        for b in range(a.dim):
            if _evaluate(comp, [units[i], {b: ONE}]) != a.product(c, {b: ONE}):
                return False
            if _evaluate(comp, [{b: ONE}, units[i]]) != a.product({b: ONE}, c):
                return False
        if c:
            section[(i,)] = HochschildCochain(0, {(): c})
    moved = _simplicial_only(d, GSCochain(0, section))
    for i, j in d.poset.chains(1):
        edge = beta.components.get((i, j), HochschildCochain(1, {}))
        expected = moved.components.get((i, j), HochschildCochain(0, {})).evaluate(())
        if _evaluate(edge, [units[j]]) != expected:
            return False
    return True


def gs_component_identities(d: AlgebraDiagram, beta: GSCochain) -> Dict[str, bool]:
    """The component identities making beta a total cocycle, checked one by one."""
    vertex = _part(beta, 0)
    edge = _part(beta, 1)
    h_vertex = _hochschild_only(d, vertex)
    s_vertex = _simplicial_only(d, vertex)
    h_edge = _hochschild_only(d, edge)
    s_edge = _simplicial_only(d, edge)
    mixed = {}
    for sigma in set(s_vertex.components) | set(h_edge.components):
        left = s_vertex.components.get(sigma, HochschildCochain(2, {}))
        right = h_edge.components.get(sigma, HochschildCochain(2, {}))
        diff = left.combine(right, -ONE)
        if not diff.is_zero():
            mixed[sigma] = diff
    return {
        "hochschild_of_vertex_part": h_vertex.is_zero(),
        "simplicial_of_vertex_minus_hochschild_of_edge": not mixed,
        "simplicial_of_edge_part": s_edge.is_zero(),
        "simplicial_of_unit_component": _unit_component_holds(d, beta),
    }


def gs_class_is_zero(d: AlgebraDiagram, beta: GSCochain, cap: int = 200_000,
                     degree_cap: int = 3) -> Optional[GSCochain]:
    """Primitive of a total cocycle, or None."""
    weight = _zero_weight(d)
    c = gs_complex(d, max(beta.degree, 1), cap, max(degree_cap, beta.degree), weight)
    if d.poset.size == 1:
        labels = [((0,), t, o) for t, o in c.labels[beta.degree]]
        prev = [((0,), t, o) for t, o in c.labels[beta.degree - 1]]
    else:
        labels, prev = c.labels[beta.degree], c.labels[beta.degree - 1]
    h = is_coboundary(c, beta.degree, beta.to_vector(labels))
    if h is None:
        return None
    return GSCochain.from_vector(beta.degree - 1, prev, h)


def restrict_to_vertex(d: AlgebraDiagram, beta: GSCochain, i: int) -> Tuple[FiniteAlgebra, HochschildCochain]:
    """a^i with the Hochschild component of beta on the 0-simplex (i)."""
    if not 0 <= i < d.poset.size:
        raise InputError(f"No vertex {i} in a poset of {d.poset.size} elements")
    return d.algebras[i], beta.components.get((i,), HochschildCochain(beta.degree, {}))


def vertex_classes(d: AlgebraDiagram, beta: GSCochain, cap: int = 200_000) -> Dict[str, bool]:
    """Per element: is the restricted class zero in HH(a^i)."""
    out = {}
    for i, name in enumerate(d.poset.elements):
        a, comp = restrict_to_vertex(d, beta, i)
        out[name] = cochain_class_is_zero(a, comp, cap=cap, weight=zero_weight(a)) is not None
    return out


def _zero_weight(d: AlgebraDiagram) -> Optional[Weight]:
    if all(a.weights is not None for a in d.algebras):
        return zero_weight(d.algebras[0])
    return None


# ---------- Diagram algebra ----------

def diagram_algebra(d: AlgebraDiagram) -> FiniteAlgebra:
    """Basis x@(i,j) for i <= j and x in a^i; (x_ij)(y_jk) = x phi_{j->i}(y) at (i,k)."""
    poset = d.poset
    pairs = sorted(poset.leq)
    offsets: Dict[Tuple[int, int], int] = {}
    labels = []
    weights = []
    pos = 0
    for i, j in pairs:
        offsets[(i, j)] = pos
        a = d.algebras[i]
        for b in range(a.dim):
            labels.append(f"{a.basis[b]}@{poset.elements[i]}{poset.elements[j]}")
            weights.append(a.weight(b))
        pos += a.dim
    n = pos
    mul: List[List[SparseVector]] = [[{} for _ in range(n)] for _ in range(n)]
    for (i, j), (j2, k) in itertools.product(pairs, repeat=2):
        if j != j2:
            continue
        ai = d.algebras[i]
        phi = d.phi(i, j)
        for b in range(ai.dim):
            for c in range(d.algebras[j].dim):
                prod = ai.product({b: ONE}, phi.column(c))
                mul[offsets[(i, j)] + b][offsets[(j, k)] + c] = {offsets[(i, k)] + m: v for m, v in prod.items()}
    unit = [ZERO] * n
    for i, a in enumerate(d.algebras):
        for b, c in a.unit_vector().items():
            unit[offsets[(i, i)] + b] = c
    has_weights = all(a.weights is not None for a in d.algebras)
    result = FiniteAlgebra(tuple(labels), tuple(unit), tuple(tuple(row) for row in mul),
                           None, tuple(weights) if has_weights else None)
    report = validate_algebra(result)
    if not report.ok:
        raise ValidationFailure(f"Diagram algebra fails {report.kind}", report.to_dict())
    logger.info(f"diagram algebra has dimension {n}")
    return result


# ---------- SCCT comparison ----------

@dataclass
class SCCTReport:
    gs_dims: List[int]
    diagram_algebra_dims: List[int]
    gs_class_zero: bool
    diagram_algebra_class_zero: bool

    @property
    def dims_agree(self) -> bool:
        return self.gs_dims == self.diagram_algebra_dims

    @property
    def verdicts_agree(self) -> bool:
        return self.gs_class_zero == self.diagram_algebra_class_zero


def scct_check(d: AlgebraDiagram, max_degree: int = 2, xi: Optional[Derivation] = None,
               cap: int = 200_000, degree_cap: int = 3) -> SCCTReport:
    xi = xi or Derivation(ONE, "d/dq")
    report = validate_diagram(d)
    if not report.ok:
        raise ValidationFailure(f"Invalid diagram: {report.kind}", report.to_dict())
    gs_dims = gs_cohomology_dims(d, max_degree, cap, degree_cap)
    bang = diagram_algebra(d)
    bang_dims = hochschild_cohomology(bang, None, max_degree, cap).dims
    gs_zero = gs_class_is_zero(d, gs_derivation_cocycle(d, xi), cap, degree_cap) is not None
    bang_zero = derivation_class(bang, xi, cap).is_zero
    logger.info(f"SCCT: GS dims {gs_dims} vs a! dims {bang_dims}; classes {gs_zero} vs {bang_zero}")
    return SCCTReport(gs_dims, bang_dims, gs_zero, bang_zero)
