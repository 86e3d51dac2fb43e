"""Exact rational functions in chart coordinates over the Gaussian rationals.

A :class:`Scalar` is a quotient ``num / den`` where ``num`` is a sparse
multivariate polynomial with coefficients in Q(i) and ``den`` is kept as a
product of monic polynomial factors.  Fractions are never GCD-reduced;
instead known denominator factors are cancelled by exact trial division,
and equality is decided by cross-multiplication.

Monomials are tuples of ``(coordinate name, exponent)`` pairs sorted by
name, so values built on different charts can be mixed freely (product
charts rely on this).  Canonical term order is lexicographic in coordinate
name order.
"""

from __future__ import annotations

import functools
import re
from fractions import Fraction
from typing import Iterable, Mapping

__all__ = [
    "GaussRat",
    "Poly",
    "Scalar",
    "ScalarError",
    "ParseError",
    "PoleError",
    "DivisionByZero",
    "UnknownIdentifier",
    "parse_scalar",
    "scalar_arith",
    "partial",
    "is_zero",
    "eval_at",
    "I",
    "ZERO",
    "ONE",
]


class ScalarError(Exception):
    """Base class for errors raised by the scalar kernel."""


class ParseError(ScalarError):
    def __init__(self, message: str, pos: int | None = None, text: str | None = None):
        self.pos = pos
        self.text = text
        if pos is not None:
            message = f"{message} at position {pos}"
        super().__init__(message)


class UnknownIdentifier(ParseError):
    pass


class DivisionByZero(ScalarError, ZeroDivisionError):
    pass


class PoleError(ScalarError):
    pass


# --------------------------------------------------------------------------
# Gaussian rationals


class GaussRat:
    """An element ``re + im*i`` of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @classmethod
    def coerce(cls, value) -> "GaussRat":
        if isinstance(value, GaussRat):
            return value
        if isinstance(value, complex):
            raise TypeError("floating point complex values are not exact")
        return cls(value)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussRat):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __add__(self, other):
        other = GaussRat.coerce(other)
        return GaussRat(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = GaussRat.coerce(other)
        return GaussRat(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussRat.coerce(other) - self

    def __mul__(self, other):
        other = GaussRat.coerce(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussRat(a * c, 0)
        return GaussRat(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def conjugate(self):
        return GaussRat(self.re, -self.im)

    def inverse(self):
        if not self:
            raise DivisionByZero("division by zero")
        if not self.im:
            return GaussRat(1 / self.re, 0)
        n = self.re * self.re + self.im * self.im
        return GaussRat(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * GaussRat.coerce(other).inverse()

    def __rtruediv__(self, other):
        return GaussRat.coerce(other) * self.inverse()

    def is_negative(self) -> bool:
        """Sign used for printing: leading nonzero part is negative."""
        return self.re < 0 or (self.re == 0 and self.im < 0)

    def __repr__(self):
        return f"GaussRat({self})"

    def __str__(self):
        return _fmt_coeff(self)


def _fmt_rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _fmt_coeff(c: GaussRat) -> str:
    if not c.im:
        return _fmt_rat(c.re)
    if not c.re:
        if c.im == 1:
            return "i"
        if c.im == -1:
            return "-i"
        return f"{_fmt_rat(c.im)}*i"
    im = f"{_fmt_rat(abs(c.im))}*i" if abs(c.im) != 1 else "i"
    sign = "+" if c.im > 0 else "-"
    return f"({_fmt_rat(c.re)} {sign} {im})"


_G0 = GaussRat(0)
_G1 = GaussRat(1)
_GI = GaussRat(0, 1)


# --------------------------------------------------------------------------
# Monomials

Monomial = tuple  # tuple[tuple[str, int], ...], sorted by name

_ONE_MONO: Monomial = ()


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        na, ea = a[i]
        nb, eb = b[j]
        if na == nb:
            out.append((na, ea + eb))
            i += 1
            j += 1
        elif na < nb:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def _mono_div(a: Monomial, b: Monomial) -> Monomial | None:
    """a / b if b divides a, else None."""
    if not b:
        return a
    da = dict(a)
    for name, e in b:
        have = da.get(name, 0)
        if have < e:
            return None
        if have == e:
            del da[name]
        else:
            da[name] = have - e
    return tuple(sorted(da.items()))


def _mono_cmp(a: Monomial, b: Monomial) -> int:
    """Lex comparison, variables ordered by name ('x' outranks 'y')."""
    for (na, ea), (nb, eb) in zip(a, b):
        if na != nb:
            return 1 if na < nb else -1
        if ea != eb:
            return 1 if ea > eb else -1
    if len(a) != len(b):
        return 1 if len(a) > len(b) else -1
    return 0


_mono_key = functools.cmp_to_key(_mono_cmp)


def _mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def _mono_str(m: Monomial) -> str:
    return "*".join(n if e == 1 else f"{n}^{e}" for n, e in m)


# --------------------------------------------------------------------------
# Polynomials


class Poly:
    """Sparse polynomial: mapping monomial -> nonzero GaussRat."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping | None = None):
        self.terms = dict(terms) if terms else {}
        self._hash = None

    @classmethod
    def const(cls, c) -> "Poly":
        c = GaussRat.coerce(c)
        return cls({(): c}) if c else cls()

    @classmethod
    def var(cls, name: str) -> "Poly":
        return cls({((name, 1),): _G1})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def constant_value(self) -> GaussRat:
        return self.terms.get((), _G0)

    def variables(self) -> set[str]:
        return {n for m in self.terms for n, _ in m}

    def degree(self) -> int:
        return max((_mono_degree(m) for m in self.terms), default=-1)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _mono_key(t[0]), reverse=True)

    def leading(self):
        m = max(self.terms, key=_mono_key)
        return m, self.terms[m]

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def __add__(self, other: "Poly") -> "Poly":
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Poly(out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        if not self.terms or not other.terms:
            return Poly()
        if len(other.terms) == 1 and () in other.terms:
            return self.scale(other.terms[()])
        if len(self.terms) == 1 and () in self.terms:
            return other.scale(self.terms[()])
        out: dict = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = _mono_mul(ma, mb)
                c = ca * cb
                s = out.get(m)
                if s is None:
                    out[m] = c
                else:
                    s = s + c
                    if s:
                        out[m] = s
                    else:
                        del out[m]
        return Poly(out)

    def scale(self, c) -> "Poly":
        c = GaussRat.coerce(c)
        if not c:
            return Poly()
        if c == _G1:
            return self
        return Poly({m: v * c for m, v in self.terms.items()})

    def mul_mono(self, mono: Monomial) -> "Poly":
        return Poly({_mono_mul(m, mono): c for m, c in self.terms.items()})

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative exponent")
        result = Poly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def diff(self, name: str) -> "Poly":
        out = {}
        for m, c in self.terms.items():
            for idx, (n, e) in enumerate(m):
                if n == name:
                    if e == 1:
                        nm = m[:idx] + m[idx + 1:]
                    else:
                        nm = m[:idx] + ((n, e - 1),) + m[idx + 1:]
                    out[nm] = c * e
                    break
        return Poly(out)

    def evaluate(self, point: Mapping[str, GaussRat]) -> GaussRat:
        total = _G0
        for m, c in self.terms.items():
            v = c
            for n, e in m:
                try:
                    x = point[n]
                except KeyError:
                    raise KeyError(f"point does not assign coordinate {n!r}") from None
                for _ in range(e):
                    v = v * x
            total = total + v
        return total

    def monomial_content(self) -> Monomial:
        """Largest monomial dividing every term."""
        it = iter(self.terms)
        try:
            common = dict(next(it))
        except StopIteration:
            return ()
        for m in it:
            md = dict(m)
            for n in list(common):
                e = md.get(n, 0)
                if e == 0:
                    del common[n]
                elif e < common[n]:
                    common[n] = e
            if not common:
                break
        return tuple(sorted(common.items()))

    def div_mono(self, mono: Monomial) -> "Poly":
        return Poly({_mono_div(m, mono): c for m, c in self.terms.items()})

    def divexact(self, divisor: "Poly") -> "Poly | None":
        """Quotient if ``divisor`` divides ``self`` exactly, else None."""
        if not divisor.terms:
            raise DivisionByZero("polynomial division by zero")
        if not self.terms:
            return Poly()
        dm, dc = divisor.leading()
        dinv = dc.inverse()
        rem = self
        quot: dict = {}
        while rem.terms:
            rm, rc = rem.leading()
            qm = _mono_div(rm, dm)
            if qm is None:
                return None
            qc = rc * dinv
            quot[qm] = qc
            rem = rem - divisor.mul_mono(qm).scale(qc)
        return Poly(quot)

    def monic(self) -> tuple[GaussRat, "Poly"]:
        """(lc, self/lc) with the leading coefficient normalised to 1."""
        _, lc = self.leading()
        if lc == _G1:
            return lc, self
        return lc, self.scale(lc.inverse())

    def __str__(self):
        return _fmt_poly(self)

    def __repr__(self):
        return f"Poly({self})"


def _fmt_term(c: GaussRat, m: Monomial) -> str:
    if not m:
        return _fmt_coeff(c)
    ms = _mono_str(m)
    if c == _G1:
        return ms
    return f"{_fmt_coeff(c)}*{ms}"


def _fmt_poly(p: Poly) -> str:
    if not p.terms:
        return "0"
    parts = []
    for k, (m, c) in enumerate(p.sorted_terms()):
        neg = c.is_negative()
        body = _fmt_term(-c if neg else c, m)
        if k == 0:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts)


# --------------------------------------------------------------------------
# Scalars


def _split_denominator(p: Poly, known: Iterable[Poly]) -> tuple[GaussRat, Monomial, dict]:
    """Write nonzero ``p`` as lc * monomial * prod(factors^k).

    Known factors are divided out first so repeated denominators share a
    factor entry; whatever is left becomes one new monic factor.
    """
    lc, p = p.monic()
    mono = p.monomial_content()
    if mono:
        p = p.div_mono(mono)
    factors: dict = {}
    for f in known:
        if p.is_constant():
            break
        while True:
            q = p.divexact(f)
            if q is None:
                break
            factors[f] = factors.get(f, 0) + 1
            p = q
    if not p.is_constant():
        c, p = p.monic()
        lc = lc * c
        factors[p] = factors.get(p, 0) + 1
    else:
        lc = lc * p.constant_value()
    for name, e in mono:
        v = Poly.var(name)
        factors[v] = factors.get(v, 0) + e
    return lc, mono, factors


def _den_poly(den: Mapping[Poly, int]) -> Poly:
    out = Poly.const(1)
    for f, k in den.items():
        out = out * (f ** k)
    return out


class Scalar:
    """Exact rational function ``num / prod(f**k for f, k in den)``.

    ``poles`` records every denominator factor ever introduced while
    building the value; :func:`eval_at` refuses points on that locus even
    when the factor has since cancelled.
    """

    __slots__ = ("num", "den", "poles")

    def __init__(self, num: Poly, den: Mapping[Poly, int] | None = None, poles: frozenset = frozenset()):
        self.num = num
        self.den = dict(den) if den else {}
        self.poles = poles
        if not num.terms:
            self.den = {}
        elif self.den:
            self._cancel()

    def _cancel(self):
        num = self.num
        for f in list(self.den):
            k = self.den[f]
            while k:
                q = num.divexact(f)
                if q is None:
                    break
                num = q
                k -= 1
            if k:
                self.den[f] = k
            else:
                del self.den[f]
        if not num.is_constant():
            lc, monic = num.monic()
            for f in list(self.den):
                q = f.divexact(monic)
                if q is None:
                    continue
                # numerator divides a factor: f = monic*q, keep only q
                num = Poly.const(lc)
                if self.den[f] == 1:
                    del self.den[f]
                else:
                    self.den[f] -= 1
                if not q.is_constant():
                    self.den[q] = self.den.get(q, 0) + 1
                else:
                    num = num.scale(q.constant_value().inverse())
                break
        self.num = num

    # construction -------------------------------------------------------

    @classmethod
    def const(cls, c) -> "Scalar":
        return cls(Poly.const(c))

    @classmethod
    def coord(cls, name: str) -> "Scalar":
        return cls(Poly.var(name))

    @classmethod
    def coerce(cls, value) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, Poly):
            return cls(value)
        return cls(Poly.const(GaussRat.coerce(value)))

    # predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num.terms

    def is_polynomial(self) -> bool:
        return not self.den

    def is_constant(self) -> bool:
        return not self.den and self.num.is_constant()

    def constant_value(self) -> GaussRat:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num.constant_value()

    def variables(self) -> set[str]:
        out = self.num.variables()
        for f in self.den:
            out |= f.variables()
        return out

    def degree(self) -> int:
        """Total degree of the numerator (pivoting heuristic)."""
        return self.num.degree()

    def denominator(self) -> Poly:
        return _den_poly(self.den)

    # arithmetic ---------------------------------------------------------

    def __neg__(self):
        return Scalar(-self.num, self.den, self.poles)

    def __add__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return other
        if not other.num.terms and not other.poles:
            return self
        if not self.num.terms and not self.poles:
            return other
        poles = self.poles | other.poles
        if not self.den and not other.den:
            return Scalar(self.num + other.num, None, poles)
        if self.den == other.den:
            return Scalar(self.num + other.num, self.den, poles)
        lcm = dict(self.den)
        for f, k in other.den.items():
            if lcm.get(f, 0) < k:
                lcm[f] = k
        a = self.num * _den_poly({f: k - self.den.get(f, 0) for f, k in lcm.items() if k > self.den.get(f, 0)})
        b = other.num * _den_poly({f: k - other.den.get(f, 0) for f, k in lcm.items() if k > other.den.get(f, 0)})
        return Scalar(a + b, lcm, poles)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return other
        poles = self.poles | other.poles
        if not self.den and not other.den:
            return Scalar(self.num * other.num, None, poles)
        den = dict(self.den)
        for f, k in other.den.items():
            den[f] = den.get(f, 0) + k
        return Scalar(self.num * other.num, den, poles)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self.num.terms:
            raise DivisionByZero("division by the zero Scalar")
        lc, _, factors = _split_denominator(self.num, self.den.keys())
        num = _den_poly(self.den).scale(lc.inverse())
        return Scalar(num, factors, self.poles | frozenset(factors))

    def __truediv__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return other
        if other.is_constant():
            c = other.num.constant_value()
            if not c:
                raise DivisionByZero("division by the zero Scalar")
            return Scalar(self.num.scale(c.inverse()), self.den, self.poles | other.poles)
        if not other.num.terms:
            raise DivisionByZero("division by the zero Scalar")
        if not self.num.is_constant():
            # cheap cancellation when the divisor is a multiple of our numerator
            q = other.num.divexact(self.num)
            if q is not None:
                res = Scalar(_den_poly(other.den), self.den) / Scalar(q)
                locus = frozenset([other.num.monic()[1]])
                return Scalar(res.num, res.den, res.poles | self.poles | other.poles | locus)
        lc, _, factors = _split_denominator(other.num, list(self.den) + list(other.den))
        den = dict(self.den)
        for f, k in factors.items():
            den[f] = den.get(f, 0) + k
        num = (self.num * _den_poly(other.den)).scale(lc.inverse())
        return Scalar(num, den, self.poles | other.poles | frozenset(factors))

    def __rtruediv__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        return Scalar(self.num ** k, {f: e * k for f, e in self.den.items()}, self.poles)

    def conjugate(self) -> "Scalar":
        return Scalar(
            Poly({m: c.conjugate() for m, c in self.num.terms.items()}),
            {Poly({m: c.conjugate() for m, c in f.terms.items()}): k for f, k in self.den.items()},
            frozenset(Poly({m: c.conjugate() for m, c in f.terms.items()}) for f in self.poles),
        )

    def real_imag(self) -> tuple["Scalar", "Scalar"]:
        """Exact split into real and imaginary parts (rational coefficients)."""
        if all(not c.im for f in self.den for c in f.terms.values()):
            re_num = Poly({m: GaussRat(c.re) for m, c in self.num.terms.items() if c.re})
            im_num = Poly({m: GaussRat(c.im) for m, c in self.num.terms.items() if c.im})
            return Scalar(re_num, self.den, self.poles), Scalar(im_num, self.den, self.poles)
        conj = self.conjugate()
        half = GaussRat(Fraction(1, 2))
        re = (self + conj) * Scalar.const(half)
        im = (self - conj) * Scalar.const(GaussRat(0, Fraction(-1, 2)))
        return re, im

    def diff(self, name: str) -> "Scalar":
        num_d = Scalar(self.num.diff(name), self.den, self.poles)
        if not self.den:
            return num_d
        # d(N/prod f^k) = N'/D - N/D * sum k f'/f
        log_d = Scalar(Poly())
        for f, k in self.den.items():
            fd = f.diff(name)
            if fd.terms:
                log_d = log_d + Scalar(fd.scale(k), {f: 1})
        if not log_d.num.terms:
            return num_d
        return num_d - Scalar(self.num, self.den, self.poles) * log_d

    def evaluate(self, point: Mapping) -> GaussRat:
        pt = {n: GaussRat.coerce(v) for n, v in point.items()}
        for f in set(self.poles) | set(self.den):
            if not f.evaluate(pt):
                raise PoleError(f"pole at {dict(point)}: ({f}) vanishes")
        value = self.num.evaluate(pt)
        if self.den:
            value = value / _den_poly(self.den).evaluate(pt)
        return value

    # comparison ---------------------------------------------------------

    def __eq__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return other
        if not self.den and not other.den:
            return self.num == other.num
        return (self - other).is_zero()

    __hash__ = None  # equality is semantic, not structural

    def __bool__(self):
        return not self.is_zero()

    # printing -----------------------------------------------------------

    def __str__(self):
        if not self.den:
            return str(self.num)
        num = str(self.num)
        if len(self.num.terms) > 1:
            num = f"({num})"
        return f"{num}/({self.denominator()})"

    def __repr__(self):
        return f"Scalar({self})"


def _as_scalar(value):
    if isinstance(value, Scalar):
        return value
    if isinstance(value, (int, Fraction, GaussRat)):
        return Scalar(Poly.const(GaussRat.coerce(value)))
    if isinstance(value, Poly):
        return Scalar(value)
    return NotImplemented


ZERO = Scalar(Poly())
ONE = Scalar.const(1)
I = Scalar.const(_GI)


# --------------------------------------------------------------------------
# Functional surface


def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def partial(a: Scalar, coord: str, chart: Iterable[str] | None = None) -> Scalar:
    if chart is not None and coord not in tuple(chart):
        raise ScalarError(f"coordinate {coord!r} is not in the chart")
    return Scalar.coerce(a).diff(coord)


def is_zero(a) -> bool:
    return Scalar.coerce(a).is_zero()


def eval_at(a: Scalar, point: Mapping) -> GaussRat:
    return Scalar.coerce(a).evaluate(point)


# --------------------------------------------------------------------------
# Parser

_TOKEN_RE = re.compile(r"\s*(?:(?P<num>\d+)|(?P<ident>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*/^()]))")


def tokenize(text: str):
    """Yield (kind, value, position) triples; kind is num/ident/op/end."""
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            yield ("end", "", pos)
            return
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        start = m.start(kind)
        yield (kind, m.group(kind), start)
        pos = m.end()


class _ScalarParser:
    def __init__(self, text: str, chart: Iterable[str]):
        self.text = text
        self.chart = tuple(chart)
        if "i" in self.chart:
            raise ParseError("'i' is reserved for the imaginary unit")
        self.tokens = list(tokenize(text))
        self.k = 0

    def peek(self):
        return self.tokens[self.k]

    def take(self):
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def expect(self, value):
        tok = self.take()
        if tok[1] != value or tok[0] == "end":
            raise ParseError(f"expected {value!r}, found {tok[1] or 'end of input'!r}", tok[2], self.text)
        return tok

    def parse(self) -> Scalar:
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected token {tok[1]!r}", tok[2], self.text)
        return value

    def expr(self) -> Scalar:
        value = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> Scalar:
        value = self.factor()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            _, op, pos = self.take()
            if op == "*":
                value = value * self.factor()
            else:
                nxt = self.peek()
                if nxt[0] == "num" and int(nxt[1]) == 0:
                    raise ParseError("division by literal zero", nxt[2], self.text)
                rhs = self.factor()
                try:
                    value = value / rhs
                except DivisionByZero:
                    raise ParseError("division by an expression equal to zero", pos, self.text) from None
        return value

    def factor(self) -> Scalar:
        if self.peek()[0] == "op" and self.peek()[1] == "-":
            self.take()
            return -self.factor()
        base = self.base()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "num":
                raise ParseError("exponent must be a nonnegative integer", tok[2], self.text)
            base = base ** int(tok[1])
        return base

    def base(self) -> Scalar:
        kind, value, pos = self.take()
        if kind == "num":
            return Scalar.const(int(value))
        if kind == "ident":
            if value == "i":
                return I
            if value in self.chart:
                return Scalar.coord(value)
            raise UnknownIdentifier(f"unknown identifier {value!r}", pos, self.text)
        if kind == "op" and value == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "op" and value == "-":
            return -self.factor()
        raise ParseError(f"unexpected {value or 'end of input'!r}", pos, self.text)


def parse_scalar(text: str, chart: Iterable[str]) -> Scalar:
    """Parse an expression over the given coordinate names.

    >>> str(parse_scalar("(1 - y^2)/(1 - y)", ["x", "y"]))
    'y + 1'
    """
    return _ScalarParser(text, chart).parse()
