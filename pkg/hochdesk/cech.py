"""
Cech cohomology of polyvector fields over finite affine covers.

Intersections are keyed by sorted tuples of cover indices. Every chart carries
a ChartRing and a basis theta_0..theta_{n-1} of its tangent module; a face
I -> J (J = I plus one index) carries the ring restriction and the images of
the tangent generators. Modules of a-vector fields are the exterior powers.

Chart rings are infinite-dimensional, so every linear-algebra step works on
normal-form monomials of bounded weight (the window). A dimension is only
reported when windows W and W+1 agree; coboundaries are searched among
sources of weight up to W + slack.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .chart_ring import ChartRing, Element, RingDerivation, RingMap, RingKey, check_confluence
from .diagram import Poset
from .errors import InputError, ValidationFailure, WindowTooSmall, WindowUnstable
from .kernel import ONE, ZERO, CheckReport, Derivation, ExactMatrix, Scalar, kernel_basis, quotient_basis, solve

logger = logging.getLogger(__name__)

Simplex = Tuple[int, ...]
WedgeKey = Tuple[int, ...]
Wedge = Dict[WedgeKey, Element]
Label = Tuple[Simplex, WedgeKey, RingKey]


@dataclass(frozen=True)
class CechChart:
    name: str
    cover: Simplex
    ring: ChartRing
    tangents: Tuple[RingDerivation, ...]


@dataclass(frozen=True)
class CechFace:
    source: Simplex
    target: Simplex
    ring_map: RingMap
    tangent_images: Tuple[Tuple[Element, ...], ...]  # [h][h']: coefficient of theta'_h' in rho(theta_h)


@dataclass(frozen=True)
class CechDatum:
    charts: Dict[Simplex, CechChart]
    faces: Dict[Tuple[Simplex, Simplex], CechFace]
    rank: int
    slack: int = 2
    _cache: Dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @property
    def top(self) -> int:
        return max(len(j) for j in self.charts) - 1

    def simplices(self, p: int) -> List[Simplex]:
        return sorted(j for j in self.charts if len(j) == p + 1)

    def chart(self, j: Simplex) -> CechChart:
        try:
            return self.charts[j]
        except KeyError:
            raise InputError(f"No chart for the intersection {list(j)}")

    def by_name(self, name: str) -> Simplex:
        for j, c in self.charts.items():
            if c.name == name:
                return j
        raise InputError(f"Unknown chart {name!r}")

    def poset(self) -> Poset:
        """Intersections ordered by inclusion of opens (U_J < U_I when I is a face of J)."""
        names = [self.charts[j].name for j in sorted(self.charts)]
        relations = [(self.charts[t].name, self.charts[s].name) for s, t in sorted(self.faces)]
        return Poset.build(names, relations)

    def restriction(self, i: Simplex, j: Simplex) -> Tuple[RingMap, Tuple[Tuple[Element, ...], ...]]:
        """Composite restriction I -> J through faces adding the missing indices in order."""
        key = (i, j)
        if key in self._cache:
            return self._cache[key]
        if not set(i) <= set(j):
            raise ValidationFailure(f"{list(i)} is not contained in {list(j)}")
        if i == j:
            ring = self.chart(i).ring
            images = {g: ring.gen(g) for g in ring.generators}
            ident = tuple(tuple(ring.one() if h == h2 else {} for h2 in range(self.rank)) for h in range(self.rank))
            out = (RingMap(ring, ring, images), ident)
        else:
            missing = sorted(set(j) - set(i))
            step = tuple(sorted(i + (missing[0],)))
            face = self.faces.get((i, step))
            if face is None:
                raise InputError(f"Missing restriction {list(i)} -> {list(step)}")
            rest_map, rest_tan = self.restriction(step, j)
            target = self.chart(j).ring
            ring_map = face.ring_map.compose(rest_map)
            tangents = []
            for h in range(self.rank):
                row: List[Element] = [{} for _ in range(self.rank)]
                for h1, coef in enumerate(face.tangent_images[h]):
                    if not coef:
                        continue
                    moved = rest_map.apply(coef)
                    for h2, coef2 in enumerate(rest_tan[h1]):
                        row[h2] = target.add(row[h2], target.mul(moved, coef2))
                tangents.append(tuple(row))
            out = (ring_map, tuple(tangents))
        self._cache[key] = out
        return out


@dataclass(frozen=True)
class CechCochain:
    degree: int
    wedge: int
    values: Dict[Simplex, Wedge] = field(default_factory=dict)

    def is_zero(self) -> bool:
        return all(not el for w in self.values.values() for el in w.values())

    def to_vector(self, labels: Sequence[Label]) -> List[Scalar]:
        index = {lab: n for n, lab in enumerate(labels)}
        vec = [ZERO] * len(labels)
        for j, w in self.values.items():
            for s, el in w.items():
                for key, c in el.items():
                    pos = index.get((j, s, key))
                    if pos is None:
                        raise WindowTooSmall("Cochain leaves the window", {"simplex": list(j), "monomial": list(key)})
                    vec[pos] = c
        return vec

    @classmethod
    def from_vector(cls, degree: int, wedge: int, labels: Sequence[Label], vec: Sequence[Scalar]) -> "CechCochain":
        values: Dict[Simplex, Wedge] = {}
        for (j, s, key), c in zip(labels, vec):
            if c:
                values.setdefault(j, {}).setdefault(s, {})[key] = c
        return cls(degree, wedge, values)

    def support_weight(self, d: CechDatum) -> int:
        return max((d.chart(j).ring.max_weight(el) for j, w in self.values.items() for el in w.values()),
                   default=0)


@dataclass(frozen=True)
class LiftedDerivation:
    """Per chart, a xi-derivation of the chart ring given on generators."""

    xi: Derivation
    lifts: Dict[Simplex, RingDerivation]


# ---------- Wedge algebra ----------

def _merge_sign(s: WedgeKey, t: WedgeKey) -> int:
    inversions = sum(1 for a in s for b in t if a > b)
    return -1 if inversions % 2 else 1


def wedge(ring: ChartRing, u: Wedge, v: Wedge) -> Wedge:
    out: Wedge = {}
    for s, a in u.items():
        for t, b in v.items():
            if set(s) & set(t):
                continue
            key = tuple(sorted(s + t))
            prod = ring.mul(a, b)
            if _merge_sign(s, t) < 0:
                prod = ring.scale(prod, -ONE)
            out[key] = ring.add(out.get(key, {}), prod)
    return {k: v for k, v in out.items() if v}


def restrict_wedge(d: CechDatum, i: Simplex, j: Simplex, value: Wedge) -> Wedge:
    ring_map, tangents = d.restriction(i, j)
    target = d.chart(j).ring
    out: Wedge = {}
    for s, coef in value.items():
        image: Wedge = {(): ring_map.apply(coef)}
        for h in s:
            image = wedge(target, image, {(h2,): c for h2, c in enumerate(tangents[h]) if c})
        for key, el in image.items():
            out[key] = target.add(out.get(key, {}), el)
    return {k: v for k, v in out.items() if v}


def wedge_basis(rank: int, a: int) -> List[WedgeKey]:
    return list(itertools.combinations(range(rank), a))


# ---------- Validation ----------

def _apply_field(d: CechDatum, j: Simplex, coeffs: Sequence[Element], element: Element) -> Element:
    """(sum_h coeffs[h] theta_h)(element) on chart j."""
    chart = d.chart(j)
    out: Element = {}
    for h, a in enumerate(coeffs):
        if a:
            out = chart.ring.add(out, chart.ring.mul(a, chart.tangents[h].apply(element)))
    return out


def validate_cech(d: CechDatum, window: int = 3) -> CheckReport:
    for j, chart in sorted(d.charts.items()):
        if len(chart.tangents) != d.rank:
            return CheckReport.failed("tangent rank", (chart.name,), f"expected {d.rank} tangent generators")
        for theta in chart.tangents:
            msg = theta.check()
            if msg:
                return CheckReport.failed("tangent generator", (chart.name,), msg)
        msg = check_confluence(chart.ring, window)
        if msg:
            return CheckReport.failed("normal form", (chart.name,), msg)
    for j in d.charts:
        for t in range(len(j)):
            face = tuple(x for n, x in enumerate(j) if n != t)
            if face and face in d.charts and (face, j) not in d.faces:
                return CheckReport.failed("restriction", (d.charts[face].name, d.charts[j].name),
                                          "missing restriction map")
    for (i, j), face in sorted(d.faces.items()):
        names = (d.chart(i).name, d.chart(j).name)
        msg = face.ring_map.check()
        if msg:
            return CheckReport.failed("ring map", names, msg)
        source = d.chart(i)
        for h in range(d.rank):
            for g in source.ring.generators:
                pushed = _apply_field(d, j, face.tangent_images[h], face.ring_map.apply(source.ring.gen(g)))
                expected = face.ring_map.apply(source.tangents[h].apply(source.ring.gen(g)))
                if pushed != expected:
                    return CheckReport.failed("tangent restriction", names,
                                              f"image of theta_{h} disagrees on {g}")
    return CheckReport.passed()


def validate_lift(d: CechDatum, lifts: LiftedDerivation) -> CheckReport:
    for j, lift in sorted(lifts.lifts.items()):
        msg = lift.check()
        if msg:
            return CheckReport.failed("lift", (d.chart(j).name,), msg)
    return CheckReport.passed()


# ---------- Windowed complexes ----------

def cech_differential(d: CechDatum, c: CechCochain) -> CechCochain:
    values: Dict[Simplex, Wedge] = {}
    for j in d.simplices(c.degree + 1):
        ring = d.chart(j).ring
        acc: Wedge = {}
        for t in range(len(j)):
            face = j[:t] + j[t + 1:]
            if face not in c.values:
                continue
            moved = restrict_wedge(d, face, j, c.values[face])
            for s, el in moved.items():
                acc[s] = ring.add(acc.get(s, {}), el, ONE if t % 2 == 0 else -ONE)
        acc = {s: el for s, el in acc.items() if el}
        if acc:
            values[j] = acc
    return CechCochain(c.degree + 1, c.wedge, values)


def cech_labels(d: CechDatum, p: int, a: int, window: int) -> List[Label]:
    labels = []
    for j in d.simplices(p):
        for s in wedge_basis(d.rank, a):
            labels.extend((j, s, key) for key in d.chart(j).ring.keys(window))
    return labels


def _images(d: CechDatum, p: int, a: int, labels: Sequence[Label]) -> List[Dict[Label, Scalar]]:
    out = []
    for j, s, key in labels:
        image = cech_differential(d, CechCochain(p, a, {j: {s: {key: ONE}}}))
        flat = {(j2, s2, k2): c for j2, w in image.values.items() for s2, el in w.items() for k2, c in el.items()}
        out.append(flat)
    return out


def _matrix(columns: Sequence[Dict[Label, Scalar]], rows: Sequence[Label]) -> ExactMatrix:
    index = {lab: n for n, lab in enumerate(rows)}
    cols = [{index[lab]: c for lab, c in col.items() if lab in index} for col in columns]
    return ExactMatrix.from_columns(len(rows), cols)


def _row_labels(columns: Sequence[Dict[Label, Scalar]]) -> List[Label]:
    return sorted({lab for col in columns for lab in col})


def _boundaries_in_window(d: CechDatum, p: int, a: int, window: int, inside: Sequence[Label]) -> List[List[Scalar]]:
    """Coboundaries of sources with weight <= window + slack that land inside the window."""
    if p == 0:
        return []
    sources = cech_labels(d, p - 1, a, window + d.slack)
    columns = _images(d, p - 1, a, sources)
    inside_set = set(inside)
    outside = [lab for lab in _row_labels(columns) if lab not in inside_set]
    combos = kernel_basis(_matrix(columns, outside)) if outside else [
        [ONE if k == n else ZERO for k in range(len(columns))] for n in range(len(columns))]
    index = {lab: n for n, lab in enumerate(inside)}
    out = []
    for lam in combos:
        vec = [ZERO] * len(inside)
        for coef, col in zip(lam, columns):
            if not coef:
                continue
            for lab, c in col.items():
                pos = index.get(lab)
                if pos is not None:
                    vec[pos] += coef * c
        if any(vec):
            out.append(vec)
    return out


@dataclass
class CechCohomology:
    degree: int
    wedge: int
    dim: int
    window: int
    stable: bool
    window_dims: Tuple[int, int]
    representatives: List[CechCochain]


def _windowed(d: CechDatum, p: int, a: int, window: int) -> Tuple[int, List[CechCochain]]:
    labels = cech_labels(d, p, a, window)
    columns = _images(d, p, a, labels)
    rows = _row_labels(columns)
    cycles = kernel_basis(_matrix(columns, rows)) if rows else [
        [ONE if k == n else ZERO for k in range(len(labels))] for n in range(len(labels))]
    boundaries = _boundaries_in_window(d, p, a, window, labels)
    reps = quotient_basis(cycles, boundaries)
    logger.debug(f"H^{p}(wedge^{a} T) window {window}: cycles {len(cycles)} boundaries {len(boundaries)}")
    return len(reps), [CechCochain.from_vector(p, a, labels, v) for v in reps]


def cech_cohomology(d: CechDatum, p: int, window: int, wedge_rank: int = 1,
                    require_stable: bool = True) -> CechCohomology:
    """dim H^p(wedge^a T) certified by agreement of windows W and W+1."""
    if p < 0 or p > d.top:
        return CechCohomology(p, wedge_rank, 0, window, True, (0, 0), [])
    if wedge_rank > d.rank:
        return CechCohomology(p, wedge_rank, 0, window, True, (0, 0), [])
    dim, reps = _windowed(d, p, wedge_rank, window)
    dim_next, _ = _windowed(d, p, wedge_rank, window + 1)
    stable = dim == dim_next
    logger.info(f"H^{p}(wedge^{wedge_rank} T): windows {window}/{window + 1} give {dim}/{dim_next}")
    if not stable and require_stable:
        raise WindowUnstable(f"H^{p} does not stabilize between windows {window} and {window + 1}",
                             {"degree": p, "wedge": wedge_rank, "dims": [dim, dim_next]})
    return CechCohomology(p, wedge_rank, dim, window, stable, (dim, dim_next), reps)


def _class_zero_at(d: CechDatum, c: CechCochain, window: int) -> Optional[CechCochain]:
    sources = cech_labels(d, c.degree - 1, c.wedge, window + d.slack)
    columns = _images(d, c.degree - 1, c.wedge, sources)
    target = {(j, s, key): v for j, w in c.values.items() for s, el in w.items() for key, v in el.items()}
    rows = sorted(set(_row_labels(columns)) | set(target))
    x = solve(_matrix(columns, rows), [target.get(lab, ZERO) for lab in rows])
    if x is None:
        return None
    return CechCochain.from_vector(c.degree - 1, c.wedge, sources, x)


def cech_class_is_zero(d: CechDatum, c: CechCochain, window: int) -> Optional[CechCochain]:
    """A primitive when c is a coboundary; the verdict must agree at windows W and W+1."""
    if not cech_differential(d, c).is_zero():
        raise ValidationFailure(f"Not a Cech cocycle in degree {c.degree}", {"degree": c.degree})
    if c.is_zero():
        return CechCochain(c.degree - 1, c.wedge, {})
    if c.degree == 0 or c.wedge > d.rank:
        return None
    window = max(window, c.support_weight(d))
    first = _class_zero_at(d, c, window)
    second = _class_zero_at(d, c, window + 1)
    if (first is None) != (second is None):
        raise WindowUnstable("Coboundary verdict changes with the window",
                             {"degree": c.degree, "window": window})
    return first


# ---------- Kodaira-Spencer classes ----------

def _is_identity_on_generators(face: CechFace) -> bool:
    s, t = face.ring_map.source, face.ring_map.target
    if len(s.generators) != len(t.generators):
        return False
    return all(face.ring_map.images[gs] == t.gen(gt) for gs, gt in zip(s.generators, t.generators))


def lift_on(d: CechDatum, lifts: LiftedDerivation, j: Simplex) -> RingDerivation:
    """The given lift, or the one carried over from a chart whose coordinates j uses."""
    if j in lifts.lifts:
        return lifts.lifts[j]
    target = d.chart(j).ring
    for (i, j2), face in sorted(d.faces.items()):
        if j2 != j or not _is_identity_on_generators(face):
            continue
        source_lift = lift_on(d, lifts, i)
        src = d.chart(i).ring
        values = {gt: face.ring_map.apply(source_lift.values[gs]) for gs, gt in zip(src.generators, target.generators)}
        return RingDerivation(target, values, lifts.xi)
    raise InputError(f"No lift available on chart {d.chart(j).name}")


def _solve_field(d: CechDatum, j: Simplex, images: Dict[str, Element], wanted: Dict[str, Element],
                 window: int) -> Optional[List[Element]]:
    """Coefficients on theta^J of the field v with v(images[g]) = wanted[g] for every g, or None."""
    target = d.chart(j)
    ring = target.ring
    if all(not v for v in wanted.values()):
        return [{} for _ in range(d.rank)]
    window = max(window, max(ring.max_weight(v) for v in wanted.values()))
    unknowns = [(h, key) for h in range(d.rank) for key in ring.keys(window)]
    thetas = {(h, g): target.tangents[h].apply(image) for h in range(d.rank) for g, image in images.items()}
    columns = []
    for h, key in unknowns:
        col = {}
        for g in images:
            for k2, c in ring.mul({key: ONE}, thetas[(h, g)]).items():
                col[(g, k2)] = c
        columns.append(col)
    rhs = {(g, k2): c for g, el in wanted.items() for k2, c in el.items()}
    rows = sorted(set(rhs) | {lab for col in columns for lab in col})
    index = {lab: n for n, lab in enumerate(rows)}
    mat = ExactMatrix.from_columns(len(rows), [{index[lab]: c for lab, c in col.items()} for col in columns])
    x = solve(mat, [rhs.get(lab, ZERO) for lab in rows])
    if x is None:
        return None
    coeffs: List[Element] = [{} for _ in range(d.rank)]
    for (h, key), c in zip(unknowns, x):
        if c:
            coeffs[h][key] = c
    return coeffs


def face_field(d: CechDatum, lifts: LiftedDerivation, i: Simplex, j: Simplex, window: int) -> List[Element]:
    """Coefficients on theta^J of the vector field tau with tau o rho = xi^J o rho - rho o xi^I."""
    face = d.faces[(i, j)]
    source, target = d.chart(i), d.chart(j)
    lift_i, lift_j = lift_on(d, lifts, i), lift_on(d, lifts, j)
    ring = target.ring
    images = {g: face.ring_map.apply(source.ring.gen(g)) for g in source.ring.generators}
    wanted = {g: ring.add(lift_j.apply(image), face.ring_map.apply(lift_i.values[g]), -ONE)
              for g, image in images.items()}
    coeffs = _solve_field(d, j, images, wanted, window)
    if coeffs is None:
        raise WindowTooSmall(f"No tangent field on {target.name} within window {window}",
                             {"source": source.name, "target": target.name, "window": window})
    return coeffs


def vertical_field(d: CechDatum, lift: RingDerivation, j: Simplex, window: int) -> List[Element]:
    """The lift minus the coefficient derivative, as coefficients on theta^J."""
    ring = d.chart(j).ring
    coeffs = _solve_field(d, j, {g: ring.gen(g) for g in ring.generators}, dict(lift.values), window)
    if coeffs is None:
        raise WindowTooSmall(f"Lift on {d.chart(j).name} is not a tangent field within window {window}",
                             {"chart": d.chart(j).name, "window": window})
    return coeffs


def push_forward(d: CechDatum, i: Simplex, j: Simplex, coeffs: Sequence[Element]) -> List[Element]:
    """rho_* of a field on chart i through the face tangent matrix."""
    face = d.faces[(i, j)]
    ring = d.chart(j).ring
    out: List[Element] = [{} for _ in range(d.rank)]
    for h, a in enumerate(coeffs):
        if not a:
            continue
        moved = face.ring_map.apply(a)
        for h2, t in enumerate(face.tangent_images[h]):
            out[h2] = ring.add(out[h2], ring.mul(moved, t))
    return out


def ks_cocycle(d: CechDatum, lifts: LiftedDerivation, window: int = 6) -> CechCochain:
    """On U_ab: (xi^b - xi^a) restricted, as a tangent field."""
    values: Dict[Simplex, Wedge] = {}
    for j in d.simplices(1):
        ring = d.chart(j).ring
        tau_a = face_field(d, lifts, (j[0],), j, window)
        tau_b = face_field(d, lifts, (j[1],), j, window)
        w = {(h,): ring.add(tau_a[h], tau_b[h], -ONE) for h in range(d.rank)}
        w = {k: v for k, v in w.items() if v}
        if w:
            values[j] = w
    cocycle = CechCochain(1, 1, values)
    if not cech_differential(d, cocycle).is_zero():
        raise ValidationFailure("Lift differences do not form a Cech cocycle")
    return cocycle


@dataclass
class KSClass:
    cocycle: CechCochain
    zero: bool
    primitive: Optional[CechCochain]
    window: int


def ks_class(d: CechDatum, lifts: LiftedDerivation, window: int = 6) -> KSClass:
    report = validate_lift(d, lifts)
    if not report.ok:
        raise ValidationFailure(f"Invalid lift: {report.message}", report.to_dict())
    cocycle = ks_cocycle(d, lifts, window)
    primitive = cech_class_is_zero(d, cocycle, window)
    logger.info(f"KS({lifts.xi.name}) class: {'zero' if primitive is not None else 'nonzero'}")
    return KSClass(cocycle, primitive is not None, primitive, window)


def perturb_lifts(d: CechDatum, lifts: LiftedDerivation,
                  fields: Dict[Simplex, Sequence[Element]]) -> LiftedDerivation:
    """xi^i + sum_h fields[i][h] theta_h on the listed charts."""
    out = dict(lifts.lifts)
    for j, coeffs in fields.items():
        chart = d.chart(j)
        base = lift_on(d, lifts, j)
        for h, a in enumerate(coeffs):
            if a:
                base = base.plus(chart.tangents[h].scaled_field(a))
        out[j] = base
    return LiftedDerivation(lifts.xi, out)


def lift_independence_check(d: CechDatum, lifts: LiftedDerivation, window: int = 6,
                            fields: Optional[Dict[Simplex, Sequence[Element]]] = None) -> Optional[CechCochain]:
    """Primitive of KS(perturbed) - KS(original); None would mean the class moved."""
    if fields is None:
        fields = {}
        for j in d.simplices(0):
            ring = d.chart(j).ring
            fields[j] = [ring.gen(ring.x)] + [{} for _ in range(d.rank - 1)]
    first = ks_cocycle(d, lifts, window)
    second = ks_cocycle(d, perturb_lifts(d, lifts, fields), window)
    diff_values: Dict[Simplex, Wedge] = {}
    for j in set(first.values) | set(second.values):
        ring = d.chart(j).ring
        w: Wedge = {}
        for s in set(first.values.get(j, {})) | set(second.values.get(j, {})):
            el = ring.add(second.values.get(j, {}).get(s, {}), first.values.get(j, {}).get(s, {}), -ONE)
            if el:
                w[s] = el
        if w:
            diff_values[j] = w
    return cech_class_is_zero(d, CechCochain(1, 1, diff_values), window)


# ---------- Products ----------

def unit_section(d: CechDatum) -> CechCochain:
    return CechCochain(0, 0, {j: {(): d.chart(j).ring.one()} for j in d.simplices(0)})


def ht_cup(d: CechDatum, alpha: CechCochain, beta: CechCochain) -> CechCochain:
    """(alpha u beta)_{j_0..j_{p+r}} = alpha_{j_0..j_p} ^ beta_{j_p..j_{p+r}} on the deepest overlap."""
    p, r = alpha.degree, beta.degree
    degree, rank = p + r, alpha.wedge + beta.wedge
    if rank > d.rank:
        return CechCochain(degree, rank, {})
    values: Dict[Simplex, Wedge] = {}
    for j in d.simplices(degree):
        front, back = j[:p + 1], j[p:]
        if front not in alpha.values or back not in beta.values:
            continue
        ring = d.chart(j).ring
        a = restrict_wedge(d, front, j, alpha.values[front])
        b = restrict_wedge(d, back, j, beta.values[back])
        w = wedge(ring, a, b)
        if w:
            values[j] = w
    return CechCochain(degree, rank, values)


@dataclass
class UnipotencyReport:
    n: int
    maximal: bool
    ks_zero: bool
    power_zero: bool


def max_unipotent(d: CechDatum, lifts: LiftedDerivation, n: int, window: int = 6) -> UnipotencyReport:
    if n < 1:
        raise InputError(f"max-unipotent needs n >= 1, got {n}", {"n": n})
    ks = ks_class(d, lifts, window)
    power = ks.cocycle
    for _ in range(n - 1):
        power = ht_cup(d, power, ks.cocycle)
    if power.degree > d.top or power.wedge > d.rank or power.is_zero():
        zero = True
    else:
        zero = cech_class_is_zero(d, power, window) is not None
    logger.info(f"KS^{n}: {'zero' if zero else 'nonzero'}")
    return UnipotencyReport(n, not zero, ks.zero, zero)


# ---------- HKR components ----------

@dataclass
class HKRReport:
    antisymmetry_pairs: int
    antisymmetry_ok: bool
    edges: List[Dict[str, object]]
    ks_zero: Optional[bool] = None

    @property
    def ok(self) -> bool:
        return self.antisymmetry_ok and all(e["ok"] for e in self.edges)


def _coefficient_xi(ring: ChartRing, a: Element, xi: Derivation) -> Element:
    return {k: v for k, v in ((k, xi(c)) for k, c in a.items()) if v}


def hkr_component_check(d: CechDatum, lifts: LiftedDerivation, window: int = 3,
                        with_class: bool = True) -> HKRReport:
    """(i) xi(m)(a, b) = xi(m)(b, a) on window monomials of every lifted chart;
    (ii) per face rho: U_I -> U_J, the GS component xi(rho), solved as a field sigma on U_J from the
    face data alone, equals tau - eta^J + rho_* eta^I, where tau is the lift difference and eta are
    the vertical parts of the chart lifts."""
    xi = lifts.xi
    pairs, sym_ok = 0, True
    for j in sorted(lifts.lifts):
        ring = d.chart(j).ring
        keys = ring.keys(window)
        for a, b in itertools.combinations_with_replacement(keys, 2):
            pairs += 1
            left = _coefficient_xi(ring, ring.mul({a: ONE}, {b: ONE}), xi)
            right = _coefficient_xi(ring, ring.mul({b: ONE}, {a: ONE}), xi)
            if left != right:
                sym_ok = False
    edges = []
    for (i, j), face in sorted(d.faces.items()):
        source, target = d.chart(i), d.chart(j)
        ring = target.ring
        images = {g: face.ring_map.apply(source.ring.gen(g)) for g in source.ring.generators}
        gs_values = {g: ring.coefficient_derivative(image, xi) for g, image in images.items()}
        sigma = _solve_field(d, j, images, gs_values, window)
        if sigma is None:
            raise WindowTooSmall(f"xi(rho) is not a tangent field on {target.name} within window {window}",
                                 {"source": source.name, "target": target.name, "window": window})
        tau = face_field(d, lifts, i, j, window)
        eta_j = vertical_field(d, lift_on(d, lifts, j), j, window)
        pushed = push_forward(d, i, j, vertical_field(d, lift_on(d, lifts, i), i, window))
        expected = [ring.add(ring.add(tau[h], eta_j[h], -ONE), pushed[h]) for h in range(d.rank)]
        edges.append({"source": source.name, "target": target.name, "ok": sigma == expected,
                      "gs_component_zero": all(not v for v in gs_values.values())})
    ks_zero = ks_class(d, lifts, max(window, 6)).zero if with_class and d.top >= 1 else None
    return HKRReport(pairs, sym_ok, edges, ks_zero)
