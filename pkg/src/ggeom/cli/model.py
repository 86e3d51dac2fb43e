"""Parser and printer for ``.ggm`` model files.

A model is a sequence of statements::

    manifold M { coords: [x, y, z] }
    vector xi on M = Dz
    form eta on M = dz - y*dx
    twoform w on M = dx^dy
    map phi on M { Dx -> Dy; Dy -> -Dx; Dz -> 0 }
    structure S on M = almost_contact(phi, xi, eta)
    product P = product(S, U)

Expressions extend the scalar grammar with basis tokens ``D<coord>`` and
``d<coord>``, the wedge ``^`` between one-forms, and references to named
objects on the same manifold.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..calculus import Chart, CalculusError, OneForm, TwoForm, VectorField, product_chart, wedge
from ..ggcore import (
    GACS,
    GCS,
    ClassicalACS,
    GGError,
    GVector,
    PreconditionError,
    from_almost_contact,
    from_complex,
    from_contact,
    from_symplectic,
)
from ..linalg import zeros
from ..products import ProductStructure, product_gacs, product_gcs
from ..report import Report
from ..symbolic import I, ZERO, Scalar

KEYWORDS = {"manifold", "vector", "form", "twoform", "form2", "map", "structure", "product"}
CONSTRUCTORS = {"almost_contact": 3, "contact": 1, "complex": 1, "symplectic": 1}


class ModelError(Exception):
    """Syntax or resolution error with a 1-based source position."""

    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.message = message
        self.line = line
        self.col = col
        super().__init__(f"{line}:{col}: {message}" if line else message)


# --------------------------------------------------------------------------
# Lexer

_TOKEN = re.compile(
    r"(?P<newline>\n)|(?P<space>[ \t\r]+)|(?P<comment>\#[^\n]*)"
    r"|(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>->|[-+*/^(){}\[\],;:=])"
)


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    line: int
    col: int


def lex(text: str) -> list[Token]:
    out = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ModelError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "newline":
            out.append(Token("newline", "\n", line, pos - line_start + 1))
            line += 1
            line_start = m.end()
        elif kind not in ("space", "comment"):
            out.append(Token(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    out.append(Token("end", "", line, pos - line_start + 1))
    return out


# --------------------------------------------------------------------------
# Model


@dataclass
class ObjectEntry:
    name: str
    kind: str  # vector | form | twoform | map
    manifold: str
    value: object


@dataclass
class StructureEntry:
    name: str
    manifold: str
    constructor: str
    args: list  # printed argument texts
    value: GACS | GCS | None = None
    classical: ClassicalACS | None = None
    error: str = ""
    error_report: Report | None = None

    @property
    def kind(self) -> str:
        return "gcs" if self.constructor in ("complex", "symplectic") else "gacs"

    @property
    def ok(self) -> bool:
        return self.value is not None


@dataclass
class ProductEntry:
    name: str
    left: str
    right: str
    chart: Chart
    value: ProductStructure | None = None
    error: str = ""
    error_report: Report | None = None

    @property
    def kind(self) -> str:
        """gcs for an odd x odd product, gacs for odd x even."""
        if self.value is not None:
            return "gcs" if isinstance(self.value.result, GCS) else "gacs"
        return "unknown"

    @property
    def ok(self) -> bool:
        return self.value is not None


@dataclass
class Model:
    manifolds: dict = field(default_factory=dict)
    objects: dict = field(default_factory=dict)
    structures: dict = field(default_factory=dict)
    products: dict = field(default_factory=dict)

    def to_text(self) -> str:
        return print_model(self)

    def subject(self, name: str):
        if name in self.structures:
            return self.structures[name]
        if name in self.products:
            return self.products[name]
        raise KeyError(name)

    def chart_of(self, name: str) -> Chart:
        if name in self.manifolds:
            return self.manifolds[name]
        if name in self.structures:
            return self.manifolds[self.structures[name].manifold]
        if name in self.products:
            return self.products[name].chart
        raise KeyError(name)


# --------------------------------------------------------------------------
# Expression evaluation


def _is_zero_scalar(v) -> bool:
    return isinstance(v, Scalar) and v.is_zero()


class _Expr:
    """Recursive-descent evaluator over Scalar | GVector | TwoForm values."""

    def __init__(self, parser: "_Parser", chart: Chart, manifold: str | None):
        self.p = parser
        self.chart = chart
        self.manifold = manifold

    def fail(self, msg, tok):
        raise ModelError(msg, tok.line, tok.col)

    def expr(self):
        value = self.term()
        while self.p.peek().value in ("+", "-") and self.p.peek().kind == "op":
            tok = self.p.take()
            rhs = self.term()
            value = self.add(value, rhs if tok.value == "+" else self.neg(rhs), tok)
        return value

    def term(self):
        value = self.factor()
        while self.p.peek().value in ("*", "/") and self.p.peek().kind == "op":
            tok = self.p.take()
            rhs = self.factor()
            if tok.value == "*":
                value = self.mul(value, rhs, tok)
            else:
                if not isinstance(rhs, Scalar):
                    self.fail("can only divide by a scalar", tok)
                if rhs.is_zero():
                    self.fail("division by zero", tok)
                value = self.mul(value, Scalar.const(1) / rhs, tok)
        return value

    def factor(self):
        tok = self.p.peek()
        if tok.kind == "op" and tok.value == "-":
            self.p.take()
            return self.neg(self.factor())
        base = self.base()
        tok = self.p.peek()
        if tok.kind == "op" and tok.value == "^":
            self.p.take()
            nxt = self.p.peek()
            if nxt.kind == "num":
                self.p.take()
                if not isinstance(base, Scalar):
                    self.fail("only scalars can be raised to a power", tok)
                return base ** int(nxt.value)
            rhs = self.base()
            return self.wedge(base, rhs, tok)
        return base

    def base(self):
        tok = self.p.take()
        if tok.kind == "num":
            return Scalar.const(int(tok.value))
        if tok.kind == "op" and tok.value == "(":
            inner = self.expr()
            self.p.expect(")")
            return inner
        if tok.kind == "ident":
            return self.resolve(tok)
        self.fail(f"unexpected {tok.value or 'end of input'!r} in expression", tok)

    def resolve(self, tok):
        name = tok.value
        coords = self.chart.coords
        if name == "i":
            return I
        if name == "zero":
            return ZERO
        if name in coords:
            return Scalar.coord(name)
        if len(name) > 1 and name[0] in "Dd" and name[1:] in coords:
            cls = VectorField if name[0] == "D" else OneForm
            return GVector.of(cls.basis(self.chart, name[1:]))
        obj = self.p.model.objects.get(name)
        if obj is not None:
            if obj.manifold != self.manifold:
                self.fail(f"{name!r} lives on {obj.manifold}, not {self.manifold}", tok)
            if obj.kind == "map":
                self.fail(f"map {name!r} cannot be used in an expression", tok)
            return GVector.of(obj.value) if obj.kind in ("vector", "form") else obj.value
        self.fail(f"unresolved name {name!r}", tok)

    # algebra

    def add(self, a, b, tok):
        if _is_zero_scalar(a):
            return b
        if _is_zero_scalar(b):
            return a
        if type(a) is not type(b):
            self.fail(f"cannot add {_kind(a)} and {_kind(b)}", tok)
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b, tok):
        if isinstance(a, Scalar) and isinstance(b, Scalar):
            return a * b
        if isinstance(a, Scalar):
            return b * a
        if isinstance(b, Scalar):
            return a * b
        self.fail(f"cannot multiply {_kind(a)} by {_kind(b)} (use ^ for wedge)", tok)

    def wedge(self, a, b, tok):
        if not (isinstance(a, GVector) and isinstance(b, GVector) and a.vec.is_zero() and b.vec.is_zero()):
            self.fail("^ needs two one-forms (or a scalar and an integer exponent)", tok)
        return wedge(a.form, b.form)


def _kind(v) -> str:
    if isinstance(v, Scalar):
        return "scalar"
    if isinstance(v, TwoForm):
        return "two-form"
    if isinstance(v, GVector):
        if v.form.is_zero():
            return "vector field"
        if v.vec.is_zero():
            return "one-form"
        return "section"
    return type(v).__name__


def evaluate(text: str, chart: Chart, model: Model | None = None, manifold: str | None = None):
    """Evaluate a standalone expression (used for -a/-b arguments)."""
    p = _Parser(text, model or Model())
    value = _Expr(p, chart, manifold).expr()
    tok = p.peek()
    if tok.kind == "newline":
        p.skip_newlines()
        tok = p.peek()
    if tok.kind != "end":
        raise ModelError(f"unexpected {tok.value!r}", tok.line, tok.col)
    return value


def expression_identifiers(text: str) -> set[str]:
    return {t.value for t in lex(text) if t.kind == "ident"}


# --------------------------------------------------------------------------
# Statement parser


class _Parser:
    def __init__(self, text: str, model: Model | None = None):
        self.tokens = lex(text)
        self.k = 0
        self.model = model if model is not None else Model()

    def peek(self) -> Token:
        return self.tokens[self.k]

    def take(self) -> Token:
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def expect(self, value: str, kind: str = "op") -> Token:
        tok = self.take()
        if tok.kind != kind or tok.value != value:
            found = "end of line" if tok.kind == "newline" else (tok.value or "end of input")
            raise ModelError(f"expected {value!r}, found {found!r}", tok.line, tok.col)
        return tok

    def ident(self, what: str = "identifier") -> Token:
        tok = self.take()
        if tok.kind != "ident":
            found = "end of line" if tok.kind == "newline" else (tok.value or "end of input")
            raise ModelError(f"expected {what}, found {found!r}", tok.line, tok.col)
        return tok

    def skip_newlines(self):
        while self.peek().kind == "newline":
            self.k += 1

    def end_statement(self):
        tok = self.peek()
        if tok.kind == "op" and tok.value == ";":
            self.take()
            tok = self.peek()
        if tok.kind not in ("newline", "end"):
            raise ModelError(f"unexpected {tok.value!r} after statement", tok.line, tok.col)

    def parse(self) -> Model:
        while True:
            self.skip_newlines()
            tok = self.peek()
            if tok.kind == "end":
                return self.model
            if tok.kind != "ident" or tok.value not in KEYWORDS:
                raise ModelError(f"expected a statement keyword, found {tok.value!r}", tok.line, tok.col)
            getattr(self, f"stmt_{tok.value}")()
            self.end_statement()

    # names

    def _fresh(self, tok: Token, table: dict, kind: str):
        name = tok.value
        if name in KEYWORDS or name in CONSTRUCTORS or name in ("zero", "i", "on", "product"):
            raise ModelError(f"{name!r} is reserved", tok.line, tok.col)
        m = self.model
        if name in m.manifolds or name in m.objects or name in m.structures or name in m.products:
            raise ModelError(f"duplicate name {name!r}", tok.line, tok.col)
        return name

    def _on_manifold(self) -> tuple[str, Chart]:
        self.expect("on", "ident")
        tok = self.ident("manifold name")
        if tok.value not in self.model.manifolds:
            raise ModelError(f"unresolved manifold {tok.value!r}", tok.line, tok.col)
        return tok.value, self.model.manifolds[tok.value]

    # statements

    def stmt_manifold(self):
        self.take()
        name = self._fresh(self.ident("manifold name"), self.model.manifolds, "manifold")
        self.expect("{")
        self.skip_newlines()
        self.expect("coords", "ident")
        self.expect(":")
        self.expect("[")
        coords = []
        while True:
            tok = self.ident("coordinate name")
            if tok.value in coords:
                raise ModelError(f"duplicate coordinate {tok.value!r}", tok.line, tok.col)
            if tok.value in ("i", "zero"):
                raise ModelError(f"{tok.value!r} cannot be a coordinate", tok.line, tok.col)
            coords.append(tok.value)
            sep = self.take()
            if sep.value == "]":
                break
            if sep.value != ",":
                raise ModelError(f"expected ',' or ']', found {sep.value!r}", sep.line, sep.col)
        self.skip_newlines()
        self.expect("}")
        self.model.manifolds[name] = Chart(tuple(coords))

    def _object(self, kind: str):
        self.take()
        tok = self.ident(f"{kind} name")
        name = self._fresh(tok, self.model.objects, kind)
        mname, chart = self._on_manifold()
        self.expect("=")
        start = self.peek()
        value = _Expr(self, chart, mname).expr()
        value = self._coerce(value, kind, start, chart)
        self.model.objects[name] = ObjectEntry(name, kind, mname, value)

    def _coerce(self, value, kind: str, tok: Token, chart: Chart):
        chart_err = f"expected a {kind}, got a {_kind(value)}"
        if kind == "vector":
            if _is_zero_scalar(value):
                return VectorField.zero(chart)
            if isinstance(value, GVector) and value.form.is_zero():
                return value.vec
        elif kind == "form":
            if _is_zero_scalar(value):
                return OneForm.zero(chart)
            if isinstance(value, GVector) and value.vec.is_zero():
                return value.form
        elif kind == "twoform":
            if isinstance(value, TwoForm):
                return value
            if _is_zero_scalar(value):
                return TwoForm.zero(chart)
        raise ModelError(chart_err, tok.line, tok.col)

    def stmt_vector(self):
        self._object("vector")

    def stmt_form(self):
        self._object("form")

    def stmt_twoform(self):
        self._object("twoform")

    stmt_form2 = stmt_twoform

    def stmt_map(self):
        self.take()
        name = self._fresh(self.ident("map name"), self.model.objects, "map")
        mname, chart = self._on_manifold()
        self.expect("{")
        n = chart.dim
        m = zeros(n)
        seen = set()
        while True:
            self.skip_newlines()
            tok = self.peek()
            if tok.kind == "op" and tok.value == "}":
                self.take()
                break
            key = self.ident("basis vector D<coord>")
            if not (key.value.startswith("D") and key.value[1:] in chart.coords):
                raise ModelError(f"map keys must be basis vectors D<coord>, found {key.value!r}", key.line, key.col)
            if key.value in seen:
                raise ModelError(f"duplicate map entry {key.value!r}", key.line, key.col)
            seen.add(key.value)
            self.expect("->")
            start = self.peek()
            image = self._coerce(_Expr(self, chart, mname).expr(), "vector", start, chart)
            col = chart.index(key.value[1:])
            for i in range(n):
                m[i][col] = image.comps[i]
            sep = self.peek()
            if sep.kind == "op" and sep.value == ";":
                self.take()
            elif not (sep.kind == "newline" or (sep.kind == "op" and sep.value == "}")):
                raise ModelError(f"expected ';' or '}}', found {sep.value!r}", sep.line, sep.col)
        self.model.objects[name] = ObjectEntry(name, "map", mname, m)

    def stmt_structure(self):
        self.take()
        name = self._fresh(self.ident("structure name"), self.model.structures, "structure")
        mname, chart = self._on_manifold()
        self.expect("=")
        ctor = self.ident("constructor")
        if ctor.value not in CONSTRUCTORS:
            raise ModelError(
                f"unknown constructor {ctor.value!r} (expected one of {', '.join(sorted(CONSTRUCTORS))})",
                ctor.line, ctor.col,
            )
        self.expect("(")
        args = []
        while True:
            args.append(self._structure_arg(chart, mname))
            sep = self.take()
            if sep.value == ")":
                break
            if sep.value != ",":
                raise ModelError(f"expected ',' or ')', found {sep.value!r}", sep.line, sep.col)
        if len(args) != CONSTRUCTORS[ctor.value]:
            raise ModelError(
                f"{ctor.value} takes {CONSTRUCTORS[ctor.value]} argument(s), got {len(args)}", ctor.line, ctor.col
            )
        entry = StructureEntry(name, mname, ctor.value, [a[0] for a in args])
        self._build_structure(entry, chart, [a[1] for a in args], [a[2] for a in args])
        self.model.structures[name] = entry

    def _structure_arg(self, chart, mname):
        """Returns (printed text, value, start token); maps are referenced by name or ``zero``."""
        tok = self.peek()
        nxt = self.tokens[self.k + 1]
        if tok.kind == "ident" and nxt.value in (",", ")"):
            obj = self.model.objects.get(tok.value)
            if obj is not None and obj.kind == "map":
                if obj.manifold != mname:
                    raise ModelError(f"{tok.value!r} lives on {obj.manifold}, not {mname}", tok.line, tok.col)
                self.take()
                return tok.value, obj.value, tok
            if tok.value == "zero":
                self.take()
                return "zero", zeros(chart.dim), tok
            if obj is not None:
                self.take()
                v = obj.value
                return tok.value, (GVector.of(v) if obj.kind in ("vector", "form") else v), tok
        value = _Expr(self, chart, mname).expr()
        return _value_str(value), value, tok

    def _build_structure(self, entry: StructureEntry, chart: Chart, values: list, toks: list):
        ctor = entry.constructor

        def need(idx, kind):
            v = values[idx]
            if kind == "map":
                if not isinstance(v, list):
                    raise ModelError("expected a map name or zero", toks[idx].line, toks[idx].col)
                return v
            if isinstance(v, list):
                raise ModelError(f"expected a {kind}, got a map", toks[idx].line, toks[idx].col)
            return self._coerce(v, kind, toks[idx], chart)

        try:
            if ctor == "almost_contact":
                phi, xi, eta = need(0, "map"), need(1, "vector"), need(2, "form")
                entry.classical = ClassicalACS(chart, phi, xi, eta)
                entry.value = from_almost_contact(entry.classical)
            elif ctor == "contact":
                entry.value = from_contact(need(0, "form"))
            elif ctor == "complex":
                entry.value = from_complex(need(0, "map"), chart)
            elif ctor == "symplectic":
                entry.value = from_symplectic(need(0, "twoform"))
        except PreconditionError as exc:
            entry.error = str(exc)
            entry.error_report = exc.report
        except (GGError, CalculusError, ArithmeticError) as exc:
            entry.error = str(exc)
        if entry.value is not None:
            entry.value.origin = entry.name

    def stmt_product(self):
        self.take()
        tok = self.ident("product name")
        name = self._fresh(tok, self.model.products, "product")
        self.expect("=")
        first = self.ident("structure name")
        if first.value == "product":
            self.expect("(")
            left = self.ident("structure name")
            self.expect(",")
            right = self.ident("structure name")
            self.expect(")")
        else:
            left = first
            self.expect("x", "ident")
            right = self.ident("structure name")
        entries = []
        for t in (left, right):
            if t.value not in self.model.structures:
                raise ModelError(f"unresolved structure {t.value!r}", t.line, t.col)
            entries.append(self.model.structures[t.value])
        a, b = entries
        ca, cb = self.model.manifolds[a.manifold], self.model.manifolds[b.manifold]
        try:
            chart = product_chart(ca, cb)
        except CalculusError as exc:
            raise ModelError(f"coordinate collision in product {name!r}: {exc}", right.line, right.col) from None
        if a.kind == "gcs":
            raise ModelError("the first factor of a product must be generalized almost contact", left.line, left.col)
        entry = ProductEntry(name, a.name, b.name, chart)
        if not (a.ok and b.ok):
            bad = a if not a.ok else b
            entry.error = f"factor {bad.name} failed to construct: {bad.error}"
        else:
            try:
                entry.value = product_gcs(a.value, b.value) if b.kind == "gacs" else product_gacs(a.value, b.value)
                entry.value.result.origin = name
            except PreconditionError as exc:
                entry.error = str(exc)
                entry.error_report = exc.report
        self.model.products[name] = entry


def parse_model(text: str) -> Model:
    return _Parser(text).parse()


# --------------------------------------------------------------------------
# Printer


def _value_str(v) -> str:
    if isinstance(v, GVector):
        if v.form.is_zero():
            return str(v.vec)
        if v.vec.is_zero():
            return str(v.form)
    return str(v)


def print_model(model: Model) -> str:
    lines = []
    for name, chart in model.manifolds.items():
        lines.append(f"manifold {name} {{ coords: [{', '.join(chart.coords)}] }}")
    for obj in model.objects.values():
        if obj.kind == "map":
            chart = model.manifolds[obj.manifold]
            entries = []
            for j, c in enumerate(chart.coords):
                image = VectorField(chart, [row[j] for row in obj.value])
                entries.append(f"D{c} -> {image}")
            lines.append(f"map {obj.name} on {obj.manifold} {{ {'; '.join(entries)} }}")
        else:
            lines.append(f"{obj.kind} {obj.name} on {obj.manifold} = {obj.value}")
    for s in model.structures.values():
        lines.append(f"structure {s.name} on {s.manifold} = {s.constructor}({', '.join(s.args)})")
    for p in model.products.values():
        lines.append(f"product {p.name} = product({p.left}, {p.right})")
    return "\n".join(lines) + "\n"
