"""
Affine chart rings from a fixed menu, with closed-form normal forms.

A chart ring is Q(q)[x], optionally with a second generator y subject to
y^2 = f(x), optionally with x - r inverted for finitely many distinct roots r
(r = 0 is Laurent inversion). Every element has a unique normal form

    sum c * x^i * y^e   +   sum c * (x - r_k)^(-j) * y^e      (e in {0, 1}, j >= 1)

stored sparsely as {(e, k, j): c} with k = -1 for the polynomial part.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Symbol
from sympy.parsing.sympy_parser import parse_expr

from .errors import InputError
from .kernel import FIELD, ONE, ZERO, Derivation, Scalar, q, scalar

logger = logging.getLogger(__name__)

POLY = -1
RingKey = Tuple[int, int, int]
Element = Dict[RingKey, Scalar]


def _pow(c: Scalar, n: int) -> Scalar:
    out = ONE
    for _ in range(n):
        out = out * c
    return out


def _accumulate(target: Element, key: RingKey, value: Scalar) -> None:
    total = target.get(key, ZERO) + value
    if total:
        target[key] = total
    else:
        target.pop(key, None)


@dataclass(frozen=True)
class ChartRing:
    name: str
    x: str = "x"
    y: Optional[str] = None
    curve: Tuple[Scalar, ...] = ()
    roots: Tuple[Scalar, ...] = ()
    _cache: Dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if self.y is not None and not any(self.curve):
            raise InputError(f"Chart {self.name}: y needs a curve equation y^2 = f(x)")
        if self.y is None and self.curve:
            raise InputError(f"Chart {self.name}: curve given without a y generator")
        if len(set(self.roots)) != len(self.roots):
            raise InputError(f"Chart {self.name}: inverted roots must be distinct")

    @classmethod
    def build(cls, name: str, x: str = "x", y: Optional[str] = None, curve: Sequence = (),
              roots: Sequence = ()) -> "ChartRing":
        """curve lists the coefficients of f from the constant term up."""
        return cls(name, x, y, tuple(scalar(c) for c in curve), tuple(scalar(r) for r in roots))

    @property
    def generators(self) -> Tuple[str, ...]:
        return (self.x,) if self.y is None else (self.x, self.y)

    # ---------- Elements ----------

    def const(self, c: Scalar) -> Element:
        c = scalar(c)
        return {(0, POLY, 0): c} if c else {}

    def one(self) -> Element:
        return self.const(ONE)

    def gen(self, name: str) -> Element:
        if name == self.x:
            return {(0, POLY, 1): ONE}
        if self.y is not None and name == self.y:
            return {(1, POLY, 0): ONE}
        raise InputError(f"Chart {self.name} has no generator {name!r}")

    def add(self, a: Element, b: Element, coef: Scalar = ONE) -> Element:
        out = dict(a)
        for k, c in b.items():
            _accumulate(out, k, coef * c)
        return out

    def scale(self, a: Element, c: Scalar) -> Element:
        if not c:
            return {}
        return {k: c * v for k, v in a.items()}

    def mul(self, a: Element, b: Element) -> Element:
        out: Element = {}
        for ka, ca in a.items():
            for kb, cb in b.items():
                for k, c in self._mul_keys(ka, kb).items():
                    _accumulate(out, k, ca * cb * c)
        return out

    def power(self, a: Element, n: int) -> Element:
        out = self.one()
        for _ in range(n):
            out = self.mul(out, a)
        return out

    def weight(self, key: RingKey) -> int:
        e, _, j = key
        return j + e

    def keys(self, window: int) -> List[RingKey]:
        """Normal-form monomials of weight <= window."""
        out = []
        for e in range(2 if self.y is not None else 1):
            out.extend((e, POLY, i) for i in range(0, window - e + 1))
            for k in range(len(self.roots)):
                out.extend((e, k, j) for j in range(1, window - e + 1))
        return sorted(out)

    def max_weight(self, a: Element) -> int:
        return max((self.weight(k) for k in a), default=0)

    # ---------- Multiplication of monomials ----------

    def _mul_keys(self, ka: RingKey, kb: RingKey) -> Element:
        cached = self._cache.get((ka, kb))
        if cached is not None:
            return cached
        e = ka[0] + kb[0]
        xpart = self._mul_x((ka[1], ka[2]), (kb[1], kb[2]))
        out: Element = {}
        if e <= 1:
            for (r, n), c in xpart.items():
                _accumulate(out, (e, r, n), c)
        else:
            for (r, n), c in xpart.items():
                for i, f in enumerate(self.curve):
                    if not f:
                        continue
                    for (r2, n2), c2 in self._mul_x((r, n), (POLY, i)).items():
                        _accumulate(out, (0, r2, n2), c * f * c2)
        self._cache[(ka, kb)] = out
        return out

    def _mul_x(self, a: Tuple[int, int], b: Tuple[int, int]) -> Dict[Tuple[int, int], Scalar]:
        (ra, na), (rb, nb) = a, b
        if ra == POLY and rb == POLY:
            return {(POLY, na + nb): ONE}
        if ra == POLY:
            return self._poly_times_pole(na, rb, nb)
        if rb == POLY:
            return self._poly_times_pole(nb, ra, na)
        if ra == rb:
            return {(ra, na + nb): ONE}
        return self._pole_times_pole(ra, na, rb, nb)

    def _poly_times_pole(self, i: int, k: int, j: int) -> Dict[Tuple[int, int], Scalar]:
        # x^i = sum_m C(i, m) r^(i-m) (x - r)^m
        r = self.roots[k]
        out: Dict[Tuple[int, int], Scalar] = {}
        for m in range(i + 1):
            coef = comb(i, m) * _pow(r, i - m)
            if not coef:
                continue
            n = m - j
            if n < 0:
                key = (k, -n)
                out[key] = out.get(key, ZERO) + coef
            else:
                for l in range(n + 1):
                    c = coef * comb(n, l) * _pow(-r, n - l)
                    if c:
                        out[(POLY, l)] = out.get((POLY, l), ZERO) + c
        return {k2: v for k2, v in out.items() if v}

    def _pole_times_pole(self, k: int, j: int, l: int, m: int) -> Dict[Tuple[int, int], Scalar]:
        # A^j B^m = (A^j B^(m-1) - A^(j-1) B^m) / (a - b)
        if m == 0:
            return {(k, j): ONE}
        if j == 0:
            return {(l, m): ONE}
        inv = ONE / (self.roots[k] - self.roots[l])
        out: Dict[Tuple[int, int], Scalar] = {}
        for key, c in self._pole_times_pole(k, j, l, m - 1).items():
            out[key] = out.get(key, ZERO) + inv * c
        for key, c in self._pole_times_pole(k, j - 1, l, m).items():
            out[key] = out.get(key, ZERO) - inv * c
        return {k2: v for k2, v in out.items() if v}

    # ---------- Units ----------

    def linear(self, k: int) -> Element:
        """x - r_k."""
        return self.add(self.gen(self.x), self.const(-self.roots[k]))

    def inverse_of_unit(self, a: Element) -> Element:
        """Inverse of c * (x - r_k)^(+-m); anything else is rejected."""
        if not a:
            raise InputError(f"Chart {self.name}: cannot invert zero")
        if len(a) == 1:
            (key, c), = a.items()
            e, k, n = key
            if e == 0 and k != POLY:
                return self.scale(self.power(self.linear(k), n), ONE / c)
            if e == 0 and n == 0:
                return self.const(ONE / c)
        if all(e == 0 and k == POLY for e, k, _ in a):
            top = max(n for _, _, n in a)
            lead = a[(0, POLY, top)]
            for k in range(len(self.roots)):
                if self.scale(self.power(self.linear(k), top), lead) == a:
                    return {(0, k, top): ONE / lead}
        raise InputError(f"Chart {self.name}: {self.render(a)} is not an inverted element")

    # ---------- Derivatives of normal forms ----------

    def partial_x(self, a: Element) -> Element:
        out: Element = {}
        for (e, k, n), c in a.items():
            if k == POLY:
                if n:
                    _accumulate(out, (e, POLY, n - 1), n * c)
            else:
                _accumulate(out, (e, k, n + 1), -n * c)
        return out

    def partial_y(self, a: Element) -> Element:
        return {(0, k, n): c for (e, k, n), c in a.items() if e == 1}

    def coefficient_derivative(self, a: Element, xi: Derivation) -> Element:
        """Apply xi to coefficients, roots included: d(x - r)^-j = j (x - r)^-(j+1) xi(r)."""
        out: Element = {}
        for (e, k, n), c in a.items():
            _accumulate(out, (e, k, n), xi(c))
            if k != POLY:
                _accumulate(out, (e, k, n + 1), n * c * xi(self.roots[k]))
        return out

    def curve_polynomial(self) -> Element:
        return {(0, POLY, i): c for i, c in enumerate(self.curve) if c}

    # ---------- Parsing and rendering ----------

    def parse(self, text) -> Element:
        if isinstance(text, (int, float)) and not isinstance(text, bool):
            return self.const(scalar(int(text)))
        symbols = {g: Symbol(g) for g in self.generators}
        try:
            expr = parse_expr(str(text), local_dict={**symbols, "q": q}, evaluate=True)
        except Exception:
            raise InputError(f"Chart {self.name}: cannot parse {text!r}")
        return self._from_sympy(expr)

    def _from_sympy(self, expr) -> Element:
        if not (expr.free_symbols - {q}):
            try:
                return self.const(FIELD.from_sympy(expr))
            except Exception:
                raise InputError(f"Chart {self.name}: {expr} is not a rational function of q")
        if expr.is_Symbol:
            return self.gen(str(expr))
        if expr.is_Add:
            out: Element = {}
            for arg in expr.args:
                out = self.add(out, self._from_sympy(arg))
            return out
        if expr.is_Mul:
            out = self.one()
            for arg in expr.args:
                out = self.mul(out, self._from_sympy(arg))
            return out
        if expr.is_Pow and expr.args[1].is_Integer:
            base = self._from_sympy(expr.args[0])
            n = int(expr.args[1])
            if n >= 0:
                return self.power(base, n)
            return self.power(self.inverse_of_unit(base), -n)
        raise InputError(f"Chart {self.name}: unsupported expression {expr}")

    def to_sympy(self, a: Element):
        xs = Symbol(self.x)
        total = 0
        for (e, k, n), c in sorted(a.items()):
            mono = xs ** n if k == POLY else (xs - FIELD.to_sympy(self.roots[k])) ** (-n)
            if e:
                mono = mono * Symbol(self.y)
            total = total + FIELD.to_sympy(c) * mono
        return total

    def render(self, a: Element) -> str:
        return str(self.to_sympy(a)) if a else "0"


@dataclass(frozen=True)
class RingMap:
    """Q(q)-algebra map source -> target given by the images of the generators."""

    source: ChartRing
    target: ChartRing
    images: Dict[str, Element] = field(repr=False)
    _cache: Dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        missing = [g for g in self.source.generators if g not in self.images]
        if missing:
            raise InputError(f"Map {self.source.name} -> {self.target.name} misses images of {missing}")

    def _monomial(self, key: RingKey) -> Element:
        if key in self._cache:
            return self._cache[key]
        e, k, n = key
        s, t = self.source, self.target
        img_x = self.images[s.x]
        if k == POLY:
            out = t.power(img_x, n)
        else:
            shifted = t.add(img_x, t.const(-s.roots[k]))
            out = t.power(t.inverse_of_unit(shifted), n)
        if e:
            out = t.mul(out, self.images[s.y])
        self._cache[key] = out
        return out

    def apply(self, a: Element) -> Element:
        out: Element = {}
        for key, c in a.items():
            for k2, c2 in self._monomial(key).items():
                _accumulate(out, k2, c * c2)
        return out

    def check(self) -> Optional[str]:
        """None when the relation y^2 = f(x) is respected, else a message."""
        s, t = self.source, self.target
        if s.y is None:
            return None
        left = t.power(self.images[s.y], 2)
        right = self.apply(s.curve_polynomial())
        if left != right:
            return f"map {s.name} -> {t.name} does not respect {s.y}^2 = f({s.x})"
        return None

    def compose(self, after: "RingMap") -> "RingMap":
        """after o self."""
        images = {g: after.apply(v) for g, v in self.images.items()}
        return RingMap(self.source, after.target, images)


@dataclass(frozen=True)
class RingDerivation:
    """D with D(c a) = xi(c) a + c D(a); xi is None for Q(q)-linear vector fields."""

    ring: ChartRing
    values: Dict[str, Element] = field(repr=False)
    xi: Optional[Derivation] = None

    def __post_init__(self):
        missing = [g for g in self.ring.generators if g not in self.values]
        if missing:
            raise InputError(f"Derivation on {self.ring.name} misses values on {missing}")

    def apply(self, a: Element) -> Element:
        r = self.ring
        out = r.coefficient_derivative(a, self.xi) if self.xi is not None else {}
        out = r.add(out, r.mul(r.partial_x(a), self.values[r.x]))
        if r.y is not None:
            out = r.add(out, r.mul(r.partial_y(a), self.values[r.y]))
        return out

    def plus(self, other: "RingDerivation", coef: Scalar = ONE) -> "RingDerivation":
        r = self.ring
        values = {g: r.add(self.values[g], other.values[g], coef) for g in r.generators}
        return RingDerivation(r, values, self.xi)

    def scaled_field(self, a: Element) -> "RingDerivation":
        """a * self, for a vector field self."""
        r = self.ring
        return RingDerivation(r, {g: r.mul(a, v) for g, v in self.values.items()}, None)

    def check(self) -> Optional[str]:
        """Compatibility with y^2 = f(x): 2 y D(y) = D(f(x))."""
        r = self.ring
        if r.y is None:
            return None
        left = r.scale(r.mul(r.gen(r.y), self.values[r.y]), scalar(2))
        right = self.apply(r.curve_polynomial())
        if left != right:
            return f"derivation on {r.name} does not respect {r.y}^2 = f({r.x})"
        return None


def check_confluence(ring: ChartRing, window: int) -> Optional[str]:
    """Products of window monomials are commutative and associative in normal form."""
    keys = ring.keys(window)
    for a in keys:
        for b in keys:
            ab = ring._mul_keys(a, b)
            if ab != ring._mul_keys(b, a):
                return f"{ring.name}: product of {a} and {b} depends on the order"
            for c in keys:
                left = ring.mul(ab, {c: ONE})
                right = ring.mul({a: ONE}, ring._mul_keys(b, c))
                if left != right:
                    return f"{ring.name}: product of {a}, {b}, {c} depends on the bracketing"
    return None
