"""
Finite Z-graded A-infinity categories with structure constants over Q(q).

Composition is written in diagrammatic order: mu(a_1, ..., a_s) needs
target(a_k) = source(a_{k+1}) and lands in Hom(source(a_1), target(a_s)).
Signs follow the reduced-degree convention |a|' = |a| - 1: inserting a
cochain psi after the inputs a_1..a_i costs (-1)^{|psi|' (|a_1|' + ... + |a_i|')}.
A cochain of total degree r has reduced degree r - 1 and its length-l
component has internal degree r - l.
"""
from __future__ import annotations

import itertools
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .algebra import FiniteAlgebra, Weight, _add_weights
from .errors import CapExceeded, InputError, ValidationFailure
from .kernel import (
    ONE,
    ZERO,
    CheckReport,
    Derivation,
    ExactMatrix,
    FiniteComplex,
    Scalar,
    SparseVector,
    cohomology,
    kernel_basis,
    quotient_basis,
    image_basis,
    scalar,
    solve,
    sparse_add,
    to_dense,
    to_sparse,
    transpose,
)

logger = logging.getLogger(__name__)

# (source object, input morphism ids); length-0 components carry only the object
Key = Tuple[int, Tuple[int, ...]]
Label = Tuple[Key, int]


@dataclass(frozen=True)
class Morphism:
    label: str
    source: int
    target: int
    degree: int = 0
    weight: Weight = ()


@dataclass(frozen=True)
class AInfCategory:
    objects: Tuple[str, ...]
    morphisms: Tuple[Morphism, ...]
    mu: Dict[Key, SparseVector] = field(repr=False)
    units: Dict[int, SparseVector] = field(default_factory=dict, repr=False)

    def hom(self, x: int, y: int) -> List[int]:
        return [i for i, m in enumerate(self.morphisms) if m.source == x and m.target == y]

    def reduced(self, i: int) -> int:
        return self.morphisms[i].degree - 1

    def degree(self, i: int) -> int:
        return self.morphisms[i].degree

    def weight(self, i: int) -> Weight:
        return self.morphisms[i].weight

    @property
    def has_weights(self) -> bool:
        return bool(self.morphisms) and all(m.weight != () for m in self.morphisms)

    @property
    def max_arity(self) -> int:
        return max((len(t) for _, t in self.mu), default=0)

    def index(self, label: str) -> int:
        for i, m in enumerate(self.morphisms):
            if m.label == label:
                return i
        raise InputError(f"Unknown morphism {label!r}")

    def object_index(self, name: str) -> int:
        try:
            return self.objects.index(name)
        except ValueError:
            raise InputError(f"Unknown object {name!r}")

    def zero_weight(self) -> Optional[Weight]:
        if not self.has_weights:
            return None
        return tuple(0 for _ in self.morphisms[0].weight)


@dataclass(frozen=True)
class AInfCochain:
    degree: int
    values: Dict[Key, SparseVector] = field(default_factory=dict)

    def is_zero(self) -> bool:
        return all(not v for v in self.values.values())

    def combine(self, other: "AInfCochain", coef: Scalar = ONE) -> "AInfCochain":
        out = {k: dict(v) for k, v in self.values.items()}
        for key, vec in other.values.items():
            target = out.setdefault(key, {})
            for o, c in vec.items():
                sparse_add(target, o, coef * c)
        return AInfCochain(self.degree, {k: v for k, v in out.items() if v})

    def scale(self, coef: Scalar) -> "AInfCochain":
        return AInfCochain(self.degree, {k: {o: coef * c for o, c in v.items()} for k, v in self.values.items()
                                         if coef})

    def to_vector(self, labels: Sequence[Label]) -> List[Scalar]:
        index = {lab: n for n, lab in enumerate(labels)}
        vec = [ZERO] * len(labels)
        for key, out in self.values.items():
            for o, c in out.items():
                pos = index.get((key, o))
                if pos is None:
                    raise ValidationFailure("Cochain component outside the complex basis",
                                            {"inputs": list(key[1]), "output": o})
                vec[pos] = c
        return vec

    @classmethod
    def from_vector(cls, degree: int, labels: Sequence[Label], vec: Sequence[Scalar]) -> "AInfCochain":
        values: Dict[Key, SparseVector] = {}
        for (key, o), c in zip(labels, vec):
            if c:
                values.setdefault(key, {})[o] = c
        return cls(degree, values)


def structure_cochain(c: AInfCategory) -> AInfCochain:
    return AInfCochain(2, dict(c.mu))


# ---------- Construction ----------

def from_algebra(a: FiniteAlgebra, name: str = "X") -> AInfCategory:
    """One object; mu^2(a, b) = (-1)^{|a|} ab."""
    morphisms = tuple(Morphism(a.basis[i], 0, 0, a.degree(i), a.weight(i)) for i in range(a.dim))
    mu: Dict[Key, SparseVector] = {}
    for i, j in itertools.product(range(a.dim), repeat=2):
        sign = -1 if a.degree(i) % 2 else 1
        vec = {k: sign * c for k, c in a.mul[i][j].items()}
        if vec:
            mu[(0, (i, j))] = vec
    return AInfCategory((name,), morphisms, mu, {0: a.unit_vector()})


def from_dga(a: FiniteAlgebra, differential: ExactMatrix, name: str = "X") -> AInfCategory:
    """mu^1 = d (column b is d e_b) and mu^2 as in from_algebra."""
    base = from_algebra(a, name)
    mu = dict(base.mu)
    for b in range(a.dim):
        col = differential.column(b)
        if col:
            mu[(0, (b,))] = col
    return AInfCategory(base.objects, base.morphisms, mu, base.units)


def build_category(objects: Sequence[str], morphisms: Sequence[Morphism],
                   entries: Sequence[Tuple[Sequence[str], Dict[str, object]]],
                   units: Optional[Dict[str, Dict[str, object]]] = None) -> AInfCategory:
    """entries: (input labels, {output label: coefficient})."""
    cat = AInfCategory(tuple(objects), tuple(morphisms), {})
    mu: Dict[Key, SparseVector] = {}
    for inputs, output in entries:
        ids = tuple(cat.index(lab) for lab in inputs)
        if not ids:
            raise InputError("mu^0 entries are not allowed")
        vec = {cat.index(lab): scalar(c) for lab, c in output.items()}
        vec = {k: v for k, v in vec.items() if v}
        if vec:
            mu[(cat.morphisms[ids[0]].source, ids)] = vec
    unit_map: Dict[int, SparseVector] = {}
    for obj, vec in (units or {}).items():
        unit_map[cat.object_index(obj)] = {cat.index(lab): scalar(c) for lab, c in vec.items()}
    return AInfCategory(cat.objects, cat.morphisms, mu, unit_map)


def add_zero_object(c: AInfCategory, name: str = "0") -> AInfCategory:
    return AInfCategory(c.objects + (name,), c.morphisms, dict(c.mu), dict(c.units))


def conjugate(c: AInfCategory, p: ExactMatrix) -> AInfCategory:
    """New basis f_j = sum_i p[i][j] e_i; p must preserve Hom spaces, degrees and weights."""
    n = len(c.morphisms)
    if p.nrows != n or p.ncols != n:
        raise ValidationFailure("Basis change must be square of size #morphisms", {"morphisms": n})
    for i, row in enumerate(p.rows):
        for j in row:
            mi, mj = c.morphisms[i], c.morphisms[j]
            if (mi.source, mi.target, mi.degree, mi.weight) != (mj.source, mj.target, mj.degree, mj.weight):
                raise ValidationFailure("Basis change mixes Hom spaces or degrees",
                                        {"from": mi.label, "to": mj.label})
    inverse_cols: Dict[int, SparseVector] = {}

    def pull_back(vec: SparseVector) -> SparseVector:
        out: SparseVector = {}
        for i, coef in vec.items():
            if i not in inverse_cols:
                x = solve(p, to_dense({i: ONE}, n))
                if x is None:
                    raise ValidationFailure("Basis change matrix is singular")
                inverse_cols[i] = to_sparse(x)
            for k, d in inverse_cols[i].items():
                sparse_add(out, k, coef * d)
        return out

    mu: Dict[Key, SparseVector] = {}
    for (x, t), vec in c.mu.items():
        choices = [list(p.rows[i].items()) for i in t]
        for combo in itertools.product(*choices):
            coef = ONE
            for _, v in combo:
                coef = coef * v
            new_t = tuple(j for j, _ in combo)
            target = mu.setdefault((x, new_t), {})
            for o, d in vec.items():
                sparse_add(target, o, coef * d)
    mu = {k: pull_back(v) for k, v in mu.items()}
    mu = {k: v for k, v in mu.items() if v}
    units = {x: pull_back(v) for x, v in c.units.items()}
    return AInfCategory(c.objects, c.morphisms, mu, units)


# ---------- Composable tuples ----------

def _tuples(c: AInfCategory, length: int) -> Iterator[Key]:
    if length == 0:
        for x in range(len(c.objects)):
            yield x, ()
        return
    outgoing: Dict[int, List[int]] = defaultdict(list)
    for i, m in enumerate(c.morphisms):
        outgoing[m.source].append(i)

    def extend(prefix: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
        if len(prefix) == length:
            yield prefix
            return
        for nxt in outgoing[c.morphisms[prefix[-1]].target]:
            yield from extend(prefix + (nxt,))

    for first in range(len(c.morphisms)):
        for t in extend((first,)):
            yield c.morphisms[t[0]].source, t


def _endpoints(c: AInfCategory, key: Key) -> Tuple[int, int]:
    x, t = key
    if not t:
        return x, x
    return c.morphisms[t[0]].source, c.morphisms[t[-1]].target


# ---------- Validation ----------

def _insert(c: AInfCategory, outer: Dict[Key, SparseVector], inner: Dict[Key, SparseVector],
            inner_degree: int, max_len: Optional[int]) -> Dict[Key, SparseVector]:
    """outer o inner: each input slot of outer filled by the output of inner."""
    inner_red = inner_degree - 1
    by_output: Dict[int, List[Tuple[Key, Scalar]]] = defaultdict(list)
    for key, vec in inner.items():
        for b, coef in vec.items():
            by_output[b].append((key, coef))
    out: Dict[Key, SparseVector] = {}
    for (x, t), vec in outer.items():
        preceding = 0
        for pos, b in enumerate(t):
            for (y, u), coef in by_output.get(b, ()):
                length = len(t) - 1 + len(u)
                if max_len is not None and length > max_len:
                    continue
                sign = -1 if (inner_red * preceding) % 2 else 1
                new_key = (y if pos == 0 else x, t[:pos] + u + t[pos + 1:])
                target = out.setdefault(new_key, {})
                for o, d in vec.items():
                    sparse_add(target, o, sign * coef * d)
            preceding += c.reduced(b)
    return {k: v for k, v in out.items() if v}


def validate_ainf(c: AInfCategory, arity: int = 4) -> CheckReport:
    """Structural checks, then mu o mu = 0 on every input string of length <= arity."""
    for (x, t), vec in sorted(c.mu.items()):
        names = tuple(c.morphisms[i].label for i in t)
        if not t:
            return CheckReport.failed("curvature", (c.objects[x],), "mu^0 must vanish")
        if len(t) > arity:
            return CheckReport.failed("arity", names, f"mu^{len(t)} exceeds the arity bound {arity}")
        for a, b in zip(t, t[1:]):
            if c.morphisms[a].target != c.morphisms[b].source:
                return CheckReport.failed("composability", names, "inputs are not composable")
        src, tgt = _endpoints(c, (x, t))
        expect_deg = sum(c.degree(i) for i in t) + 2 - len(t)
        expect_w = _add_weights(*[c.weight(i) for i in t]) if c.has_weights else ()
        for o in vec:
            m = c.morphisms[o]
            if (m.source, m.target) != (src, tgt):
                return CheckReport.failed("target", names, f"output {m.label} lies in the wrong Hom space")
            if m.degree != expect_deg:
                return CheckReport.failed("degree", names, f"mu^{len(t)} must have degree {2 - len(t)}")
            if c.has_weights and m.weight != expect_w:
                return CheckReport.failed("weights", names, "mu is not weight-homogeneous")
    relation = _insert(c, c.mu, c.mu, 2, arity)
    for (x, t), vec in sorted(relation.items()):
        if vec:
            names = tuple(c.morphisms[i].label for i in t)
            return CheckReport.failed("ainf relation", names,
                                      f"sum of mu(..mu(..)..) on ({', '.join(names)}) is nonzero")
    return CheckReport.passed()


# ---------- Hochschild cochains ----------

def ainf_differential(c: AInfCategory, phi: AInfCochain, max_len: Optional[int] = None) -> AInfCochain:
    """delta phi = mu o phi - (-1)^{|phi|'} phi o mu."""
    first = _insert(c, c.mu, phi.values, phi.degree, max_len)
    second = _insert(c, phi.values, c.mu, 2, max_len)
    sign = -1 if (phi.degree - 1) % 2 else 1
    out = {k: dict(v) for k, v in first.items()}
    for key, vec in second.items():
        target = out.setdefault(key, {})
        for o, coef in vec.items():
            sparse_add(target, o, -sign * coef)
    return AInfCochain(phi.degree + 1, {k: v for k, v in out.items() if v})


def ks_cat(c: AInfCategory, xi: Derivation) -> AInfCochain:
    """xi applied to every structure constant of mu."""
    values = {}
    for key, vec in c.mu.items():
        new = {o: xi(v) for o, v in vec.items()}
        new = {o: v for o, v in new.items() if v}
        if new:
            values[key] = new
    return AInfCochain(2, values)


def unit_cochain(c: AInfCategory) -> AInfCochain:
    missing = [c.objects[x] for x in range(len(c.objects)) if x not in c.units and c.hom(x, x)]
    if missing:
        raise ValidationFailure("Identity morphisms are not known for every object", {"objects": missing})
    return AInfCochain(0, {(x, ()): dict(v) for x, v in c.units.items() if v})


def cochain_labels(c: AInfCategory, r: int, weight: Optional[Weight], length_cap: int,
                   shortest: int = 0) -> List[Label]:
    weighted = weight is not None and c.has_weights
    targets: Dict[tuple, List[int]] = defaultdict(list)
    for o, m in enumerate(c.morphisms):
        targets[(m.source, m.target, m.degree) + ((m.weight,) if weighted else ())].append(o)
    labels: List[Label] = []
    for length in range(shortest, length_cap + 1):
        for key in _tuples(c, length):
            src, tgt = _endpoints(c, key)
            t = key[1]
            slot = (src, tgt, sum(c.degree(i) for i in t) + r - length)
            if weighted:
                slot += (_add_weights(weight, *[c.weight(i) for i in t]),)
            labels.extend((key, o) for o in targets.get(slot, ()))
    return labels


def hh_complex_ainf(c: AInfCategory, max_degree: int = 3, arity: int = 4, weight: Optional[Weight] = None,
                    length_cap: Optional[int] = None, cap: int = 200_000, min_degree: int = 0) -> FiniteComplex:
    """Hochschild cochains of degrees min_degree .. max_degree+1 with lengths <= length_cap.

    Term k of the result is degree min_degree + k. The differential on lengths
    <= length_cap needs mu^k for k <= length_cap + 1, so a smaller arity bound is
    refused. Cochains of length length_cap + 1 or + 2 in these degrees would be
    silently dropped, so their presence is refused too.
    """
    if c.max_arity > arity:
        raise CapExceeded(f"category has mu^{c.max_arity} beyond the arity bound {arity}",
                          {"arity": arity, "needed": c.max_arity})
    length_cap = length_cap if length_cap is not None else max_degree + 1
    if arity < length_cap + 1:
        raise CapExceeded(f"differential on lengths <= {length_cap} needs mu^{length_cap + 1}, "
                          f"beyond the arity bound {arity}", {"arity": arity, "needed": length_cap + 1})
    low = min_degree
    degrees = list(range(low, max_degree + 2))
    for r in degrees:
        if cochain_labels(c, r, weight, length_cap + 2, shortest=length_cap + 1):
            raise CapExceeded(f"degree {r} has cochains longer than the length cap {length_cap}",
                              {"degree": r, "length_cap": length_cap})
    labels = [cochain_labels(c, r, weight, length_cap) for r in degrees]
    for r, lab in zip(degrees, labels):
        if len(lab) > cap:
            raise CapExceeded(f"A-infinity Hochschild term of degree {r} exceeds cap {cap}", {"degree": r})
    differentials = []
    for k in range(len(degrees) - 1):
        index = {lab: n for n, lab in enumerate(labels[k + 1])}
        columns = []
        for key, o in labels[k]:
            image = ainf_differential(c, AInfCochain(degrees[k], {key: {o: ONE}}), length_cap)
            col: SparseVector = {}
            for k2, vec in image.values.items():
                for o2, coef in vec.items():
                    pos = index.get((k2, o2))
                    if pos is None:
                        raise ValidationFailure("Differential leaves the weight summand", {"inputs": list(k2[1])})
                    sparse_add(col, pos, coef)
            columns.append(col)
        differentials.append(ExactMatrix.from_columns(len(labels[k + 1]), columns))
    logger.info(f"A-infinity Hochschild complex degrees {degrees}, weight {weight}: "
                f"terms {[len(lab) for lab in labels]}")
    return FiniteComplex(tuple(len(lab) for lab in labels), tuple(differentials),
                         tuple(tuple(lab) for lab in labels))


def hh_ainf(c: AInfCategory, max_degree: int = 3, arity: int = 4, weight: Optional[Weight] = None,
            length_cap: Optional[int] = None, cap: int = 200_000, min_degree: int = 0) -> Dict[int, int]:
    """dim HH^r for min_degree <= r <= max_degree."""
    cx = hh_complex_ainf(c, max_degree, arity, weight, length_cap, cap, min_degree - 1)
    return {r: cohomology(cx, r - min_degree + 1)[0] for r in range(min_degree, max_degree + 1)}


def ainf_class_is_zero(c: AInfCategory, z: AInfCochain, weight: Optional[Weight] = None,
                       length_cap: Optional[int] = None, cap: int = 200_000) -> Optional[AInfCochain]:
    """Primitive h with delta h = z, or None."""
    if not ainf_differential(c, z).is_zero():
        raise ValidationFailure(f"Not a cocycle in degree {z.degree}", {"degree": z.degree})
    if z.is_zero():
        return AInfCochain(z.degree - 1, {})
    longest = max(len(t) for _, t in z.values)
    length_cap = max(length_cap or 0, longest, z.degree)
    cx = hh_complex_ainf(c, z.degree - 1, max(c.max_arity, length_cap + 1), weight, length_cap, cap,
                         min_degree=z.degree - 1)
    x = solve(cx.differential(0), z.to_vector(cx.labels[1]))
    if x is None:
        return None
    h = AInfCochain.from_vector(z.degree - 1, cx.labels[0], x)
    if not ainf_differential(c, h).combine(z, -ONE).is_zero():
        raise CapExceeded(f"primitive found within length cap {length_cap} misses delta h = z",
                          {"degree": z.degree, "length_cap": length_cap})
    return h


def cup_ainf(c: AInfCategory, alpha: AInfCochain, beta: AInfCochain,
             max_len: Optional[int] = None) -> AInfCochain:
    """mu{alpha, beta}: alpha fills an earlier slot of mu than beta."""
    a_red, b_red = alpha.degree - 1, beta.degree - 1
    a_out: Dict[int, List[Tuple[Key, Scalar]]] = defaultdict(list)
    b_out: Dict[int, List[Tuple[Key, Scalar]]] = defaultdict(list)
    for key, vec in alpha.values.items():
        for o, coef in vec.items():
            a_out[o].append((key, coef))
    for key, vec in beta.values.items():
        for o, coef in vec.items():
            b_out[o].append((key, coef))
    out: Dict[Key, SparseVector] = {}
    for (x, t), vec in c.mu.items():
        reds = [c.reduced(i) for i in t]
        for p, p2 in itertools.combinations(range(len(t)), 2):
            for (ya, ua), ca in a_out.get(t[p], ()):
                a_inputs = sum(c.reduced(i) for i in ua)
                sign_a = (a_red * sum(reds[:p])) % 2
                before_b = sum(reds[:p]) + a_inputs + sum(reds[p + 1:p2])
                sign_b = (b_red * before_b) % 2
                for (yb, ub), cb in b_out.get(t[p2], ()):
                    inputs = t[:p] + ua + t[p + 1:p2] + ub + t[p2 + 1:]
                    if max_len is not None and len(inputs) > max_len:
                        raise CapExceeded("Cup product exceeds the length bound", {"length": len(inputs)})
                    src = ya if p == 0 else x
                    sign = -1 if (sign_a + sign_b) % 2 else 1
                    target = out.setdefault((src, inputs), {})
                    for o, d in vec.items():
                        sparse_add(target, o, sign * ca * cb * d)
    return AInfCochain(alpha.degree + beta.degree, {k: v for k, v in out.items() if v})


# ---------- n-potency ----------

@dataclass
class NPotencyReport:
    n: int
    largest: int
    power_zero: List[bool]
    ks: AInfCochain

    @property
    def potent(self) -> bool:
        return self.largest >= self.n


def npotency(c: AInfCategory, n: int, xi: Optional[Derivation] = None, cap: int = 200_000) -> NPotencyReport:
    """Largest k <= n with KS^{cup k} nonzero; stops at the first vanishing power."""
    xi = xi or Derivation(ONE, "d/dq")
    ks = ks_cat(c, xi)
    weight = c.zero_weight()
    power: Optional[AInfCochain] = None
    zeros: List[bool] = []
    largest = 0
    for k in range(1, n + 1):
        power = ks if power is None else cup_ainf(c, power, ks)
        zero = ainf_class_is_zero(c, power, weight, cap=cap) is not None
        zeros.append(zero)
        logger.info(f"KS^{k} ({xi.name}): {'zero' if zero else 'nonzero'}")
        if zero:
            break
        largest = k
    return NPotencyReport(n, largest, zeros, ks)


# ---------- Restriction ----------

def restrict(c: AInfCategory, subset: Sequence[int]) -> Tuple[AInfCategory, Dict[int, int]]:
    """Full subcategory on ``subset``; returns it with the old->new morphism index map."""
    keep = sorted(set(subset))
    if not keep:
        raise ValidationFailure("Restriction to an empty set of objects")
    obj_map = {x: k for k, x in enumerate(keep)}
    mor_map: Dict[int, int] = {}
    morphisms = []
    for i, m in enumerate(c.morphisms):
        if m.source in obj_map and m.target in obj_map:
            mor_map[i] = len(morphisms)
            morphisms.append(Morphism(m.label, obj_map[m.source], obj_map[m.target], m.degree, m.weight))
    sub = AInfCategory(tuple(c.objects[x] for x in keep), tuple(morphisms), {}, {})
    mu = restrict_cochain(c, keep, AInfCochain(2, c.mu), obj_map, mor_map).values
    units = {obj_map[x]: {mor_map[i]: v for i, v in vec.items()} for x, vec in c.units.items() if x in obj_map}
    return AInfCategory(sub.objects, sub.morphisms, mu, units), mor_map


def restrict_cochain(c: AInfCategory, keep: Sequence[int], phi: AInfCochain,
                     obj_map: Optional[Dict[int, int]] = None,
                     mor_map: Optional[Dict[int, int]] = None) -> AInfCochain:
    keep = sorted(set(keep))
    obj_map = obj_map or {x: k for k, x in enumerate(keep)}
    if mor_map is None:
        mor_map = {}
        for i, m in enumerate(c.morphisms):
            if m.source in obj_map and m.target in obj_map:
                mor_map[i] = len(mor_map)
    values = {}
    for (x, t), vec in phi.values.items():
        if x not in obj_map or any(i not in mor_map for i in t):
            continue
        new_vec = {mor_map[o]: v for o, v in vec.items()}
        values[(obj_map[x], tuple(mor_map[i] for i in t))] = new_vec
    return AInfCochain(phi.degree, values)


# ---------- Hochschild homology ----------

def _cyclic_tuples(c: AInfCategory, length: int) -> Iterator[Tuple[int, ...]]:
    """Strings x_0..x_l closing up: target(x_l) = source(x_0)."""
    outgoing: Dict[int, List[int]] = defaultdict(list)
    for i, m in enumerate(c.morphisms):
        outgoing[m.source].append(i)

    def extend(prefix: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
        if len(prefix) == length + 1:
            if c.morphisms[prefix[-1]].target == c.morphisms[prefix[0]].source:
                yield prefix
            return
        for nxt in outgoing[c.morphisms[prefix[-1]].target]:
            yield from extend(prefix + (nxt,))

    for first in range(len(c.morphisms)):
        yield from extend((first,))


def _chain_boundary(c: AInfCategory, chain: Tuple[int, ...]) -> Dict[Tuple[int, ...], Scalar]:
    """Cyclic bar boundary with every entry suspended."""
    out: Dict[Tuple[int, ...], Scalar] = {}
    n = len(chain)
    reds = [c.reduced(i) for i in chain]
    for start in range(n):
        for s in range(1, n + 1):
            stop = start + s
            if stop <= n:
                block = chain[start:stop]
                key = (c.morphisms[block[0]].source, block)
                vec = c.mu.get(key)
                if not vec:
                    continue
                sign = -1 if sum(reds[:start]) % 2 else 1
                for o, coef in vec.items():
                    new = chain[:start] + (o,) + chain[stop:]
                    out[new] = out.get(new, ZERO) + sign * coef
            else:
                wrap = stop - n
                if start == 0 or wrap > start:
                    continue
                block = chain[start:] + chain[:wrap]
                key = (c.morphisms[block[0]].source, block)
                vec = c.mu.get(key)
                if not vec:
                    continue
                moved = sum(reds[start:])
                sign = -1 if (moved * sum(reds[:start])) % 2 else 1
                for o, coef in vec.items():
                    new = (o,) + chain[wrap:start]
                    out[new] = out.get(new, ZERO) + sign * coef
    return {k: v for k, v in out.items() if v}


def chain_labels(c: AInfCategory, degree: int, weight: Optional[Weight], length_cap: int) -> List[Tuple[int, ...]]:
    labels = []
    for length in range(length_cap + 1):
        for chain in _cyclic_tuples(c, length):
            if sum(c.degree(i) for i in chain) - length != degree:
                continue
            if weight is not None and c.has_weights and _add_weights(*[c.weight(i) for i in chain]) != weight:
                continue
            labels.append(chain)
    return labels


def hochschild_homology_ainf(c: AInfCategory, min_degree: int, max_degree: int,
                             weight: Optional[Weight] = None, length_cap: int = 6,
                             cap: int = 200_000) -> Dict[int, int]:
    """dim HH_d for min_degree <= d <= max_degree; chains graded by sum|a_i| - length."""
    degrees = list(range(min_degree - 1, max_degree + 2))
    labels = [chain_labels(c, d, weight, length_cap) for d in degrees]
    for d, lab in zip(degrees, labels):
        if len(lab) > cap:
            raise CapExceeded(f"Hochschild chains of degree {d} exceed cap {cap}", {"degree": d})
    differentials = []
    for k in range(len(degrees) - 1):
        index = {lab: n for n, lab in enumerate(labels[k + 1])}
        columns = []
        for chain in labels[k]:
            col: SparseVector = {}
            for new, coef in _chain_boundary(c, chain).items():
                pos = index.get(new)
                if pos is None:
                    if len(new) - 1 > length_cap:
                        continue
                    raise ValidationFailure("Boundary leaves the weight summand", {"chain": list(new)})
                sparse_add(col, pos, coef)
            columns.append(col)
        differentials.append(ExactMatrix.from_columns(len(labels[k + 1]), columns))
    cx = FiniteComplex(tuple(len(lab) for lab in labels), tuple(differentials), tuple(tuple(l) for l in labels))
    return {d: cohomology(cx, k)[0] for k, d in enumerate(degrees) if min_degree <= d <= max_degree}


# ---------- Calabi-Yau duality ----------

@dataclass(frozen=True)
class CYTrace:
    """Per object, a functional on Hom(X, X) supported in degree n."""

    functionals: Dict[int, SparseVector]

    def __call__(self, x: int, vec: SparseVector) -> Scalar:
        f = self.functionals.get(x, {})
        return sum((f.get(o, ZERO) * v for o, v in vec.items()), ZERO)


@dataclass
class CYReport:
    nondegenerate: bool
    failure: Optional[Dict[str, object]]
    cohomology_dims: Dict[Tuple[int, Weight], int]
    homology_dims: Dict[Tuple[int, Weight], int]

    @property
    def duality_holds(self) -> bool:
        return all(self.cohomology_dims[k] == self.homology_dims[k] for k in self.cohomology_dims)


def _mu1_cohomology(c: AInfCategory, x: int, y: int, d: int) -> Tuple[List[int], List[List[Scalar]]]:
    """Basis ids of Hom^d(x, y) and representatives of its mu^1-cohomology."""
    ids = [i for i in c.hom(x, y) if c.degree(i) == d]
    prev = [i for i in c.hom(x, y) if c.degree(i) == d - 1]
    nxt = [i for i in c.hom(x, y) if c.degree(i) == d + 1]

    def matrix(src: List[int], tgt: List[int]) -> ExactMatrix:
        pos = {o: k for k, o in enumerate(tgt)}
        cols = []
        for i in src:
            vec = c.mu.get((x, (i,)), {})
            cols.append({pos[o]: v for o, v in vec.items() if o in pos})
        return ExactMatrix.from_columns(len(tgt), cols)

    cycles = kernel_basis(matrix(ids, nxt))
    boundaries = image_basis(matrix(prev, ids))
    return ids, quotient_basis(cycles, boundaries)


def cy_duality_check(c: AInfCategory, tr: CYTrace, n: int, degree_window: Tuple[int, int] = (0, 2),
                     weight_window: Optional[Sequence[Weight]] = None, length_cap: int = 6,
                     cap: int = 200_000) -> CYReport:
    """(i) nondegeneracy of tr(mu^2(a, b)) on mu^1-cohomology; (ii) dim HH^r_w vs dim HH_{n-r, t-w}."""
    t_weight: Optional[Weight] = None
    for x, f in tr.functionals.items():
        for o, v in f.items():
            if v and c.degree(o) != n:
                raise ValidationFailure(f"Trace is not supported in degree {n}", {"morphism": c.morphisms[o].label})
            if v and c.has_weights:
                if t_weight is not None and t_weight != c.weight(o):
                    raise ValidationFailure("Trace is not weight-homogeneous")
                t_weight = c.weight(o)
    failure = None
    degrees = sorted({m.degree for m in c.morphisms})
    for x, y in itertools.product(range(len(c.objects)), repeat=2):
        if failure:
            break
        for d in degrees:
            ids_xy, reps_xy = _mu1_cohomology(c, x, y, d)
            ids_yx, reps_yx = _mu1_cohomology(c, y, x, n - d)
            rows = []
            for u in reps_xy:
                row = {}
                for jj, v in enumerate(reps_yx):
                    total = ZERO
                    for a_pos, a_coef in enumerate(u):
                        if not a_coef:
                            continue
                        for b_pos, b_coef in enumerate(v):
                            if not b_coef:
                                continue
                            prod = c.mu.get((x, (ids_xy[a_pos], ids_yx[b_pos])), {})
                            total += a_coef * b_coef * tr(x, prod)
                    if total:
                        row[jj] = total
                rows.append(row)
            mat = ExactMatrix(len(reps_xy), len(reps_yx), tuple(rows))
            if kernel_basis(transpose(mat)) or kernel_basis(mat):
                failure = {"source": c.objects[x], "target": c.objects[y], "degree": d}
                logger.info(f"CY pairing degenerate on Hom^{d}({c.objects[x]}, {c.objects[y]})")
                break
    coh: Dict[Tuple[int, Weight], int] = {}
    hom: Dict[Tuple[int, Weight], int] = {}
    lo, hi = degree_window
    weights = list(weight_window) if (weight_window is not None and c.has_weights) else [None]
    for w in weights:
        dual_w = tuple(a - b for a, b in zip(t_weight or tuple(0 for _ in w), w)) if w is not None else None
        coh_dims = hh_ainf(c, hi, max(c.max_arity, length_cap + 1), w, length_cap, cap, min_degree=lo)
        hom_dims = hochschild_homology_ainf(c, n - hi, n - lo, dual_w, length_cap, cap)
        for r in range(lo, hi + 1):
            coh[(r, w or ())] = coh_dims[r]
            hom[(r, w or ())] = hom_dims[n - r]
    return CYReport(failure is None, failure, coh, hom)
