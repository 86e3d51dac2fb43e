"""Single-chart exterior calculus.

Vector fields and one-forms are component tuples in chart order; two-forms
and bivectors are full antisymmetric matrices.  Conventions:

* ``(d a)[i][j] = d_i a_j - d_j a_i``
* ``(iota_X w)_j = sum_i X^i w[i][j]``
* ``bivec_contract(p, a)^j = sum_i p[i][j] a_i`` so that
  ``bivec_pair(p, a, b) = pair(b, bivec_contract(p, a))``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .symbolic import ONE, ZERO, Scalar

__all__ = [
    "CalculusError",
    "ChartMismatch",
    "Chart",
    "VectorField",
    "OneForm",
    "TwoForm",
    "Bivector",
    "product_chart",
    "lie_bracket",
    "d_function",
    "d_oneform",
    "interior",
    "lie_derivative_oneform",
    "pair",
    "bivec_contract",
    "bivec_pair",
    "wedge",
    "lift_to_product",
]


class CalculusError(Exception):
    pass


class ChartMismatch(CalculusError):
    pass


_RESERVED = {"i", "zero"}


@dataclass(frozen=True)
class Chart:
    """Ordered coordinate names.  Product charts remember their factors."""

    coords: tuple
    factors: tuple | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        coords = tuple(self.coords)
        object.__setattr__(self, "coords", coords)
        if not coords:
            raise CalculusError("a chart needs at least one coordinate")
        if len(set(coords)) != len(coords):
            raise CalculusError(f"duplicate coordinate names in {coords}")
        bad = [c for c in coords if c in _RESERVED]
        if bad:
            raise CalculusError(f"reserved coordinate name(s): {bad}")

    @property
    def dim(self) -> int:
        return len(self.coords)

    def index(self, name: str) -> int:
        try:
            return self.coords.index(name)
        except ValueError:
            raise CalculusError(f"coordinate {name!r} not in chart {self.coords}") from None

    def __str__(self):
        return "[" + ", ".join(self.coords) + "]"


def product_chart(left: Chart, right: Chart) -> Chart:
    clash = set(left.coords) & set(right.coords)
    if clash:
        raise CalculusError(f"coordinate collision in product: {sorted(clash)}")
    return Chart(left.coords + right.coords, factors=(left, right))


def _same_chart(*objs):
    chart = objs[0].chart
    for o in objs[1:]:
        if o.chart != chart:
            raise ChartMismatch(f"chart mismatch: {chart} vs {o.chart}")
    return chart


def _coeff_str(c: Scalar) -> str:
    s = str(c)
    if c.is_polynomial() and len(c.num.terms) == 1:
        return s
    return f"({s})"


def _terms_str(items) -> str:
    """Render ``[(coeff, basis_token), ...]`` as a parseable linear combination."""
    parts = []
    for c, basis in items:
        if not c:
            continue
        if c == ONE:
            neg, term = False, basis
        elif c == -ONE:
            neg, term = True, basis
        else:
            neg = c.is_polynomial() and len(c.num.terms) == 1 and next(iter(c.num.terms.values())).is_negative()
            term = f"{_coeff_str(-c if neg else c)}*{basis}"
        parts.append((neg, term))
    if not parts:
        return "0"
    out = []
    for k, (neg, term) in enumerate(parts):
        if k == 0:
            out.append(f"-{term}" if neg else term)
        else:
            out.append(f"- {term}" if neg else f"+ {term}")
    return " ".join(out)


def _linear_str(chart: Chart, comps, prefix: str) -> str:
    return _terms_str((c, f"{prefix}{name}") for name, c in zip(chart.coords, comps))


class _Linear:
    """Shared component-wise arithmetic for vector fields and one-forms."""

    __slots__ = ("chart", "comps")
    _prefix = ""

    def __init__(self, chart: Chart, comps: Sequence):
        comps = tuple(Scalar.coerce(c) for c in comps)
        if len(comps) != chart.dim:
            raise CalculusError(f"expected {chart.dim} components, got {len(comps)}")
        self.chart = chart
        self.comps = comps

    @classmethod
    def zero(cls, chart: Chart):
        return cls(chart, [ZERO] * chart.dim)

    @classmethod
    def basis(cls, chart: Chart, name: str):
        k = chart.index(name)
        return cls(chart, [ONE if i == k else ZERO for i in range(chart.dim)])

    def __getitem__(self, i):
        return self.comps[i]

    def __iter__(self):
        return iter(self.comps)

    def __add__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        _same_chart(self, other)
        return type(self)(self.chart, [a + b for a, b in zip(self.comps, other.comps)])

    def __sub__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        _same_chart(self, other)
        return type(self)(self.chart, [a - b for a, b in zip(self.comps, other.comps)])

    def __neg__(self):
        return type(self)(self.chart, [-a for a in self.comps])

    def __mul__(self, f):
        if isinstance(f, _Linear):
            return NotImplemented
        f = Scalar.coerce(f)
        return type(self)(self.chart, [f * a for a in self.comps])

    __rmul__ = __mul__

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.chart == other.chart and all(a == b for a, b in zip(self.comps, other.comps))

    __hash__ = None

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def __str__(self):
        return _linear_str(self.chart, self.comps, self._prefix)

    def __repr__(self):
        return f"{type(self).__name__}({self})"


class VectorField(_Linear):
    __slots__ = ()
    _prefix = "D"

    def apply(self, f: Scalar) -> Scalar:
        """Directional derivative X(f)."""
        acc = ZERO
        for name, c in zip(self.chart.coords, self.comps):
            if c:
                df = f.diff(name)
                if df:
                    acc = acc + c * df
        return acc


class OneForm(_Linear):
    __slots__ = ()
    _prefix = "d"


class _Antisym:
    """Antisymmetric n x n matrix of Scalars."""

    __slots__ = ("chart", "m")
    _kind = ""

    def __init__(self, chart: Chart, matrix: Sequence[Sequence]):
        n = chart.dim
        m = [[Scalar.coerce(x) for x in row] for row in matrix]
        if len(m) != n or any(len(r) != n for r in m):
            raise CalculusError(f"{self._kind} needs an {n}x{n} matrix")
        for i in range(n):
            if m[i][i]:
                raise CalculusError(f"{self._kind} has nonzero diagonal entry ({i},{i})")
            for j in range(i + 1, n):
                if not (m[i][j] + m[j][i]).is_zero():
                    raise CalculusError(f"{self._kind} is not antisymmetric at ({i},{j})")
        self.chart = chart
        self.m = tuple(tuple(r) for r in m)

    @classmethod
    def from_upper(cls, chart: Chart, entries: dict):
        """Build from ``{(i, j): value}`` with ``i < j`` (missing = 0)."""
        n = chart.dim
        m = [[ZERO] * n for _ in range(n)]
        for (i, j), v in entries.items():
            v = Scalar.coerce(v)
            m[i][j] = v
            m[j][i] = -v
        return cls(chart, m)

    @classmethod
    def zero(cls, chart: Chart):
        return cls.from_upper(chart, {})

    def __getitem__(self, ij):
        i, j = ij
        return self.m[i][j]

    def __add__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        _same_chart(self, other)
        return type(self)(self.chart, [[a + b for a, b in zip(r, s)] for r, s in zip(self.m, other.m)])

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return type(self)(self.chart, [[-a for a in r] for r in self.m])

    def __mul__(self, f):
        if isinstance(f, (_Antisym, _Linear)):
            return NotImplemented
        f = Scalar.coerce(f)
        return type(self)(self.chart, [[f * a for a in r] for r in self.m])

    __rmul__ = __mul__

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.chart == other.chart and all(
            a == b for r, s in zip(self.m, other.m) for a, b in zip(r, s)
        )

    __hash__ = None

    def is_zero(self) -> bool:
        return all(x.is_zero() for r in self.m for x in r)

    def matrix(self) -> list:
        return [list(r) for r in self.m]

    def _basis(self, a: str, b: str) -> str:
        raise NotImplementedError

    def __str__(self):
        coords = self.chart.coords
        n = len(coords)
        return _terms_str(
            (self.m[i][j], self._basis(coords[i], coords[j])) for i in range(n) for j in range(i + 1, n)
        )

    def __repr__(self):
        return f"{type(self).__name__}({self})"


class TwoForm(_Antisym):
    __slots__ = ()
    _kind = "two-form"

    def _basis(self, a, b):
        return f"d{a}^d{b}"

    def __call__(self, X: VectorField, Y: VectorField) -> Scalar:
        _same_chart(self, X, Y)
        return pair(interior(X, self), Y)


class Bivector(_Antisym):
    __slots__ = ()
    _kind = "bivector"

    def _basis(self, a, b):
        return f"D{a}^D{b}"


# --------------------------------------------------------------------------
# Cartan operations


def lie_bracket(X: VectorField, Y: VectorField) -> VectorField:
    chart = _same_chart(X, Y)
    return VectorField(chart, [X.apply(Yk) - Y.apply(Xk) for Xk, Yk in zip(X.comps, Y.comps)])


def d_function(f, chart: Chart) -> OneForm:
    f = Scalar.coerce(f)
    return OneForm(chart, [f.diff(c) for c in chart.coords])


def d_oneform(alpha: OneForm) -> TwoForm:
    chart = alpha.chart
    n = chart.dim
    entries = {}
    for i in range(n):
        for j in range(i + 1, n):
            v = alpha.comps[j].diff(chart.coords[i]) - alpha.comps[i].diff(chart.coords[j])
            if v:
                entries[(i, j)] = v
    return TwoForm.from_upper(chart, entries)


def interior(X: VectorField, w):
    """iota_X of a one-form (a Scalar) or a two-form (a one-form)."""
    if isinstance(w, OneForm):
        return pair(w, X)
    if isinstance(w, TwoForm):
        chart = _same_chart(X, w)
        n = chart.dim
        out = []
        for j in range(n):
            acc = ZERO
            for i in range(n):
                if X.comps[i] and w.m[i][j]:
                    acc = acc + X.comps[i] * w.m[i][j]
            out.append(acc)
        return OneForm(chart, out)
    raise TypeError(f"cannot contract a vector field into {type(w).__name__}")


def lie_derivative_oneform(X: VectorField, alpha: OneForm) -> OneForm:
    """L_X alpha = iota_X d alpha + d(iota_X alpha)."""
    chart = _same_chart(X, alpha)
    return interior(X, d_oneform(alpha)) + d_function(pair(alpha, X), chart)


def pair(alpha: OneForm, X: VectorField) -> Scalar:
    _same_chart(alpha, X)
    acc = ZERO
    for a, x in zip(alpha.comps, X.comps):
        if a and x:
            acc = acc + a * x
    return acc


def bivec_contract(p: Bivector, alpha: OneForm) -> VectorField:
    chart = _same_chart(p, alpha)
    n = chart.dim
    out = []
    for j in range(n):
        acc = ZERO
        for i in range(n):
            if p.m[i][j] and alpha.comps[i]:
                acc = acc + p.m[i][j] * alpha.comps[i]
        out.append(acc)
    return VectorField(chart, out)


def bivec_pair(p: Bivector, alpha: OneForm, beta: OneForm) -> Scalar:
    return pair(beta, bivec_contract(p, alpha))


def wedge(alpha: OneForm, beta: OneForm) -> TwoForm:
    """(a ^ b)[i][j] = a_i b_j - a_j b_i, so d(f dg) = df ^ dg."""
    chart = _same_chart(alpha, beta)
    n = chart.dim
    entries = {}
    for i in range(n):
        for j in range(i + 1, n):
            v = alpha.comps[i] * beta.comps[j] - alpha.comps[j] * beta.comps[i]
            if v:
                entries[(i, j)] = v
    return TwoForm.from_upper(chart, entries)


# --------------------------------------------------------------------------
# Product-factor lifts


def lift_to_product(obj, side: str, product: Chart):
    """Zero-pad a factor object into the product chart.

    Scalars are returned unchanged: monomials are keyed by coordinate name,
    so a function on a factor already is its pullback.
    """
    if product.factors is None:
        raise CalculusError("target chart is not a product chart")
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    left, right = product.factors
    factor = left if side == "left" else right
    offset = 0 if side == "left" else left.dim
    if isinstance(obj, (int, Scalar)):
        return Scalar.coerce(obj)
    if obj.chart != factor:
        raise CalculusError(f"{obj.chart} is not the {side} factor of {product}")
    if isinstance(obj, _Linear):
        comps = [ZERO] * product.dim
        comps[offset:offset + factor.dim] = obj.comps
        return type(obj)(product, comps)
    if isinstance(obj, _Antisym):
        m = [[ZERO] * product.dim for _ in range(product.dim)]
        for i in range(factor.dim):
            for j in range(factor.dim):
                m[offset + i][offset + j] = obj.m[i][j]
        return type(obj)(product, m)
    if hasattr(obj, "lift"):
        return obj.lift(side, product)
    raise TypeError(f"cannot lift {type(obj).__name__}")
