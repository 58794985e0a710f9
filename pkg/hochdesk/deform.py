"""
First-order deformations over K[V]/V^2.

A deformation stores, for every basis vector v of V, a correction 2-cochain
c^v so that e_i *_A e_j = e_i e_j + sum_v eps_v c^v(e_i, e_j). A splitting
lifts e_i to e_i + sum_v eps_v sigma^v(e_i).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .algebra import (
    Bimodule,
    FiniteAlgebra,
    HochschildCochain,
    cochain_class_is_zero,
    hochschild_differential,
    zero_weight,
)
from .errors import ValidationFailure
from .kernel import ONE, CheckReport, Derivation, SparseVector, sparse_add

logger = logging.getLogger(__name__)

# element of a (x) K[V]/V^2: classical part plus one sparse vector per direction
Lifted = Tuple[SparseVector, Tuple[SparseVector, ...]]


@dataclass(frozen=True)
class FirstOrderDeformation:
    algebra: FiniteAlgebra
    vdim: int
    corrections: Tuple[HochschildCochain, ...]

    def __post_init__(self):
        if len(self.corrections) != self.vdim:
            raise ValidationFailure("One correction cochain per V-basis vector is required",
                                    {"vdim": self.vdim, "corrections": len(self.corrections)})
        for c in self.corrections:
            if c.degree != 2:
                raise ValidationFailure("Corrections must be 2-cochains", {"degree": c.degree})

    def multiply(self, x: Lifted, y: Lifted) -> Lifted:
        a = self.algebra
        x0, xs = x
        y0, ys = y
        classical = a.product(x0, y0)
        parts = []
        for v in range(self.vdim):
            out: SparseVector = {}
            for k, c in a.product(x0, ys[v]).items():
                sparse_add(out, k, c)
            for k, c in a.product(xs[v], y0).items():
                sparse_add(out, k, c)
            for i, ci in x0.items():
                for j, cj in y0.items():
                    for k, c in self.corrections[v].evaluate((i, j)).items():
                        sparse_add(out, k, ci * cj * c)
            parts.append(out)
        return classical, tuple(parts)

    def basis_element(self, i: int) -> Lifted:
        return {i: ONE}, tuple({} for _ in range(self.vdim))

    def validate(self) -> CheckReport:
        """Associativity of the deformed product on all basis triples."""
        a = self.algebra
        n = a.dim
        for i in range(n):
            for j in range(n):
                ij = self.multiply(self.basis_element(i), self.basis_element(j))
                for k in range(n):
                    jk = self.multiply(self.basis_element(j), self.basis_element(k))
                    left = self.multiply(ij, self.basis_element(k))
                    right = self.multiply(self.basis_element(i), jk)
                    if left != right:
                        names = (a.basis[i], a.basis[j], a.basis[k])
                        return CheckReport.failed("deformed associativity", names,
                                                  "associativity fails modulo eps^2")
        return CheckReport.passed()


@dataclass(frozen=True)
class Splitting:
    """lifts[i] is the image of e_i in the deformed algebra."""

    lifts: Tuple[Lifted, ...]

    @classmethod
    def from_sigma(cls, a: FiniteAlgebra, sigma: Sequence[HochschildCochain]) -> "Splitting":
        lifts = []
        for i in range(a.dim):
            lifts.append(({i: ONE}, tuple(dict(s.evaluate((i,))) for s in sigma)))
        return cls(tuple(lifts))

    def check(self, deformation: FirstOrderDeformation) -> None:
        a = deformation.algebra
        if len(self.lifts) != a.dim:
            raise ValidationFailure("Splitting must lift every basis element", {"dim": a.dim})
        for i, (classical, parts) in enumerate(self.lifts):
            if classical != {i: ONE}:
                raise ValidationFailure(f"Not a splitting: lift of {a.basis[i]} does not project to it",
                                        {"basis": a.basis[i]})
            if len(parts) != deformation.vdim:
                raise ValidationFailure("Splitting has the wrong number of directions", {"vdim": deformation.vdim})

    def apply(self, vec: SparseVector, vdim: int) -> Lifted:
        classical: SparseVector = {}
        parts = [dict() for _ in range(vdim)]
        for i, c in vec.items():
            lift0, lifts = self.lifts[i]
            for k, d in lift0.items():
                sparse_add(classical, k, c * d)
            for v in range(vdim):
                for k, d in lifts[v].items():
                    sparse_add(parts[v], k, c * d)
        return classical, tuple(parts)


def canonical_splitting(deformation: FirstOrderDeformation) -> Splitting:
    return Splitting(tuple(deformation.basis_element(i) for i in range(deformation.algebra.dim)))


@dataclass(frozen=True)
class DeformationCocycle:
    """beta, one V-component per basis vector of V."""

    components: Tuple[HochschildCochain, ...]
    algebra_dim: int = 0

    @property
    def vdim(self) -> int:
        return len(self.components)

    def combined(self) -> HochschildCochain:
        """The same cochain valued in V* (x) a (index v * dim a + k)."""
        n = self.algebra_dim
        values = {}
        for v, comp in enumerate(self.components):
            for t, vec in comp.values.items():
                target = values.setdefault(t, {})
                for k, c in vec.items():
                    target[v * n + k] = c
        return HochschildCochain(2, values, diagonal=False)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)


def is_cocycle(a: FiniteAlgebra, z: DeformationCocycle) -> bool:
    module = Bimodule.param_dual(a, z.vdim)
    return hochschild_differential(a, z.combined(), module).is_zero()


def beta_cocycle(deformation: FirstOrderDeformation, splitting: Optional[Splitting] = None) -> DeformationCocycle:
    """beta(e_i, e_j) = s(e_i) s(e_j) - s(e_i e_j)."""
    a = deformation.algebra
    s = splitting or canonical_splitting(deformation)
    s.check(deformation)
    vdim = deformation.vdim
    values: List[dict] = [{} for _ in range(vdim)]
    for i in range(a.dim):
        for j in range(a.dim):
            prod0, prods = deformation.multiply(s.lifts[i], s.lifts[j])
            lift0, lifts = s.apply(a.mul[i][j], vdim)
            if prod0 != lift0:
                raise ValidationFailure("Classical part of beta does not vanish", {"pair": (i, j)})
            for v in range(vdim):
                out = dict(prods[v])
                for k, c in lifts[v].items():
                    sparse_add(out, k, -c)
                if out:
                    values[v][(i, j)] = out
    comps = tuple(HochschildCochain(2, vals) for vals in values)
    return DeformationCocycle(comps, a.dim)


@dataclass
class DeformationClass:
    """Per direction: zero or nonzero, with a primitive when zero."""

    zero: List[bool]
    primitives: List[Optional[HochschildCochain]]
    cocycle: DeformationCocycle

    @property
    def is_zero(self) -> bool:
        return all(self.zero)


def classes_equal(a: FiniteAlgebra, z1: DeformationCocycle, z2: DeformationCocycle,
                  cap: int = 200_000) -> Tuple[bool, Optional[List[HochschildCochain]]]:
    """True with per-direction primitives iff z1 - z2 is a coboundary."""
    if z1.vdim != z2.vdim:
        raise ValidationFailure("Cocycles over different parameter spaces", {"left": z1.vdim, "right": z2.vdim})
    for z in (z1, z2):
        if z.algebra_dim and z.algebra_dim != a.dim:
            raise ValidationFailure("Cocycle belongs to a different algebra", {"dim": a.dim})
    primitives = []
    for c1, c2 in zip(z1.components, z2.components):
        h = cochain_class_is_zero(a, c1.combine(c2, -ONE), cap=cap)
        if h is None:
            return False, None
        primitives.append(h)
    return True, primitives


def class_of(deformation: FirstOrderDeformation, cap: int = 200_000,
             check_splitting: bool = True) -> DeformationClass:
    """[beta] per V-direction; optionally recomputed with a second splitting."""
    a = deformation.algebra
    report = deformation.validate()
    if not report.ok:
        raise ValidationFailure(f"Invalid deformation: {report.message}", report.to_dict())
    beta = beta_cocycle(deformation)
    zero, primitives = [], []
    for v, comp in enumerate(beta.components):
        h = cochain_class_is_zero(a, comp, cap=cap)
        zero.append(h is not None)
        primitives.append(h)
        logger.info(f"deformation class direction {v}: {'zero' if h is not None else 'nonzero'}")
    if check_splitting:
        sigma = [HochschildCochain(1, {(i,): a.unit_vector() for i in range(a.dim)})
                 for _ in range(deformation.vdim)]
        other = beta_cocycle(deformation, Splitting.from_sigma(a, sigma))
        same, _ = classes_equal(a, beta, other, cap)
        if not same:
            raise ValidationFailure("Deformation class depends on the splitting")
    return DeformationClass(zero, primitives, beta)


def trivial_deformation(a: FiniteAlgebra, vdim: int = 1) -> FirstOrderDeformation:
    return FirstOrderDeformation(a, vdim, tuple(HochschildCochain(2, {}) for _ in range(vdim)))


def twisted_deformation(a: FiniteAlgebra, h: Sequence[HochschildCochain]) -> FirstOrderDeformation:
    """a (x) K_eps with corrections delta h^v; its class is zero."""
    corrections = tuple(hochschild_differential(a, hv) for hv in h)
    return FirstOrderDeformation(a, len(corrections), corrections)


def derivation_deformation(a: FiniteAlgebra, xi: Derivation) -> DeformationCocycle:
    """xi applied entrywise to the structure constants."""
    values = {}
    for i in range(a.dim):
        for j in range(a.dim):
            vec = {k: xi(c) for k, c in a.mul[i][j].items()}
            vec = {k: c for k, c in vec.items() if c}
            if vec:
                values[(i, j)] = vec
    return DeformationCocycle((HochschildCochain(2, values),), a.dim)


def as_deformation(a: FiniteAlgebra, xi: Derivation) -> FirstOrderDeformation:
    """The deformation A_xi whose canonical beta is xi(m)."""
    return FirstOrderDeformation(a, 1, derivation_deformation(a, xi).components)


def derivation_class(a: FiniteAlgebra, xi: Derivation, cap: int = 200_000) -> DeformationClass:
    beta = derivation_deformation(a, xi)
    comp = beta.components[0]
    h = cochain_class_is_zero(a, comp, cap=cap, weight=zero_weight(a))
    logger.info(f"derivation class for {xi.name}: {'zero' if h is not None else 'nonzero'}")
    return DeformationClass([h is not None], [h], beta)
