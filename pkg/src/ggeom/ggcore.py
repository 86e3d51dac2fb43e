"""The generalized tangent bundle TM + T*M on a chart.

A section ``X + a`` is a :class:`GVector`; its coordinate vector has the
``n`` tangent components first and the ``n`` cotangent components after.
An endomorphism is a :class:`GEndo` holding the ``2n x 2n`` matrix whose
column ``k`` is the image of the ``k``-th frame element
(``D<c1> .. D<cn>, d<c1> .. d<cn>``).

Tensor convention: ``(u (x) v)(b) = 2 <v, b> u``, i.e. ``v`` acts through
the natural dual pairing ``beta(X) + alpha(Y)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg
from .calculus import (
    Bivector,
    CalculusError,
    Chart,
    ChartMismatch,
    OneForm,
    TwoForm,
    VectorField,
    _terms_str,
    d_function,
    d_oneform,
    lie_bracket,
    lie_derivative_oneform,
    pair,
)
from .report import Report
from .symbolic import ONE, ZERO, Scalar

__all__ = [
    "GGError",
    "PreconditionError",
    "GVector",
    "GEndo",
    "GACS",
    "GCS",
    "ClassicalACS",
    "HALF",
    "neutral_pairing",
    "courant_bracket",
    "endo_apply",
    "endo_adjoint",
    "endo_compose",
    "tensor_term",
    "frame",
    "frame_labels",
    "check_gcs_axioms",
    "check_gacs_axioms",
    "check_classical_axioms",
    "from_complex",
    "from_symplectic",
    "from_almost_contact",
    "from_contact",
    "contact_rho",
    "reeb_field",
]

HALF = Scalar.const(Fraction(1, 2))


class GGError(Exception):
    pass


class PreconditionError(GGError):
    """A constructor precondition failed; ``report`` carries the witnesses."""

    def __init__(self, message: str, report: Report | None = None):
        super().__init__(message)
        self.report = report


# --------------------------------------------------------------------------
# Sections


class GVector:
    __slots__ = ("chart", "vec", "form")

    def __init__(self, vec: VectorField, form: OneForm):
        if vec.chart != form.chart:
            raise ChartMismatch(f"chart mismatch: {vec.chart} vs {form.chart}")
        self.chart = vec.chart
        self.vec = vec
        self.form = form

    @classmethod
    def of(cls, obj) -> "GVector":
        """Promote a vector field or one-form to a section."""
        if isinstance(obj, GVector):
            return obj
        if isinstance(obj, VectorField):
            return cls(obj, OneForm.zero(obj.chart))
        if isinstance(obj, OneForm):
            return cls(VectorField.zero(obj.chart), obj)
        raise TypeError(f"cannot make a section from {type(obj).__name__}")

    @classmethod
    def zero(cls, chart: Chart) -> "GVector":
        return cls(VectorField.zero(chart), OneForm.zero(chart))

    @classmethod
    def from_comps(cls, chart: Chart, comps: Sequence) -> "GVector":
        n = chart.dim
        return cls(VectorField(chart, comps[:n]), OneForm(chart, comps[n:]))

    def comps(self) -> list:
        return list(self.vec.comps) + list(self.form.comps)

    def __add__(self, other):
        other = _coerce_gv(other)
        if other is NotImplemented:
            return other
        return GVector(self.vec + other.vec, self.form + other.form)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_gv(other)
        if other is NotImplemented:
            return other
        return GVector(self.vec - other.vec, self.form - other.form)

    def __rsub__(self, other):
        other = _coerce_gv(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return GVector(-self.vec, -self.form)

    def __mul__(self, f):
        if isinstance(f, (GVector, VectorField, OneForm)):
            return NotImplemented
        f = Scalar.coerce(f)
        return GVector(self.vec * f, self.form * f)

    __rmul__ = __mul__

    def __eq__(self, other):
        other = _coerce_gv(other)
        if other is NotImplemented:
            return other
        return self.vec == other.vec and self.form == other.form

    __hash__ = None

    def is_zero(self) -> bool:
        return self.vec.is_zero() and self.form.is_zero()

    def lift(self, side: str, product: Chart) -> "GVector":
        from .calculus import lift_to_product

        return GVector(lift_to_product(self.vec, side, product), lift_to_product(self.form, side, product))

    def __str__(self):
        coords = self.chart.coords
        items = [(c, f"D{n}") for n, c in zip(coords, self.vec.comps)]
        items += [(c, f"d{n}") for n, c in zip(coords, self.form.comps)]
        return _terms_str(items)

    def __repr__(self):
        return f"GVector({self})"


def _coerce_gv(obj):
    if isinstance(obj, GVector):
        return obj
    if isinstance(obj, (VectorField, OneForm)):
        return GVector.of(obj)
    return NotImplemented


def frame(chart: Chart) -> list[GVector]:
    """Coordinate frame D<c1>..D<cn>, d<c1>..d<cn>."""
    n = 2 * chart.dim
    return [GVector.from_comps(chart, [ONE if k == j else ZERO for k in range(n)]) for j in range(n)]


def frame_labels(chart: Chart) -> list[str]:
    return [f"D{c}" for c in chart.coords] + [f"d{c}" for c in chart.coords]


def neutral_pairing(a, b) -> Scalar:
    """<X + alpha, Y + beta> = (beta(X) + alpha(Y)) / 2."""
    a, b = GVector.of(a), GVector.of(b)
    if a.chart != b.chart:
        raise ChartMismatch(f"chart mismatch: {a.chart} vs {b.chart}")
    return HALF * (pair(b.form, a.vec) + pair(a.form, b.vec))


def courant_bracket(a, b) -> GVector:
    a, b = GVector.of(a), GVector.of(b)
    if a.chart != b.chart:
        raise ChartMismatch(f"chart mismatch: {a.chart} vs {b.chart}")
    X, alpha, Y, beta = a.vec, a.form, b.vec, b.form
    vec = lie_bracket(X, Y)
    form = lie_derivative_oneform(X, beta) - lie_derivative_oneform(Y, alpha)
    skew = pair(beta, X) - pair(alpha, Y)
    if skew:
        form = form - d_function(skew, a.chart) * HALF
    return GVector(vec, form)


# --------------------------------------------------------------------------
# Endomorphisms


class GEndo:
    __slots__ = ("chart", "m")

    def __init__(self, chart: Chart, matrix: Sequence[Sequence]):
        size = 2 * chart.dim
        m = [[Scalar.coerce(x) for x in row] for row in matrix]
        if len(m) != size or any(len(r) != size for r in m):
            raise GGError(f"endomorphism needs a {size}x{size} matrix")
        self.chart = chart
        self.m = m

    @classmethod
    def zero(cls, chart: Chart) -> "GEndo":
        return cls(chart, linalg.zeros(2 * chart.dim))

    @classmethod
    def identity(cls, chart: Chart) -> "GEndo":
        return cls(chart, linalg.identity(2 * chart.dim))

    @classmethod
    def from_blocks(cls, chart: Chart, A=None, pi=None, sigma=None, B=None) -> "GEndo":
        """Assemble from blocks.

        ``A`` (tangent -> tangent) and ``B`` (form -> form) are n x n
        matrices with column j the image of the j-th basis element.  ``pi``
        acts on forms by ``bivec_contract`` and ``sigma`` on vectors by
        ``interior``; raw n x n matrices are also accepted for both.
        """
        n = chart.dim
        m = linalg.zeros(2 * n)
        if A is not None:
            for i in range(n):
                for j in range(n):
                    m[i][j] = Scalar.coerce(A[i][j])
        if B is not None:
            for i in range(n):
                for j in range(n):
                    m[n + i][n + j] = Scalar.coerce(B[i][j])
        if pi is not None:
            if isinstance(pi, Bivector):
                # image of dx_i is sum_j pi[i][j] D_j
                for i in range(n):
                    for j in range(n):
                        m[j][n + i] = pi.m[i][j]
            else:
                for i in range(n):
                    for j in range(n):
                        m[i][n + j] = Scalar.coerce(pi[i][j])
        if sigma is not None:
            if isinstance(sigma, TwoForm):
                # image of D_i is iota_{D_i} w = sum_j w[i][j] dx_j
                for i in range(n):
                    for j in range(n):
                        m[n + j][i] = sigma.m[i][j]
            else:
                for i in range(n):
                    for j in range(n):
                        m[n + i][j] = Scalar.coerce(sigma[i][j])
        return cls(chart, m)

    @classmethod
    def from_function(cls, chart: Chart, fn) -> "GEndo":
        """Materialise a linear map given as a function on sections."""
        cols = [fn(e).comps() for e in frame(chart)]
        return cls(chart, linalg.transpose(cols))

    # blocks -------------------------------------------------------------

    def block(self, name: str) -> list:
        n = self.chart.dim
        r0, c0 = {"A": (0, 0), "pi": (0, n), "sigma": (n, 0), "B": (n, n)}[name]
        return [row[c0:c0 + n] for row in self.m[r0:r0 + n]]

    def bivector(self) -> Bivector:
        """The form -> tangent block read as a bivector (must be skew)."""
        n = self.chart.dim
        return Bivector(self.chart, [[self.m[j][n + i] for j in range(n)] for i in range(n)])

    def twoform(self) -> TwoForm:
        n = self.chart.dim
        return TwoForm(self.chart, [[self.m[n + j][i] for j in range(n)] for i in range(n)])

    # algebra ------------------------------------------------------------

    def __call__(self, a) -> GVector:
        return endo_apply(self, a)

    def __matmul__(self, other: "GEndo") -> "GEndo":
        return endo_compose(self, other)

    def __add__(self, other: "GEndo") -> "GEndo":
        _check(self, other)
        return GEndo(self.chart, linalg.mat_add(self.m, other.m))

    def __sub__(self, other: "GEndo") -> "GEndo":
        _check(self, other)
        return GEndo(self.chart, linalg.mat_sub(self.m, other.m))

    def __neg__(self) -> "GEndo":
        return GEndo(self.chart, linalg.mat_neg(self.m))

    def __mul__(self, f) -> "GEndo":
        f = Scalar.coerce(f)
        return GEndo(self.chart, linalg.mat_scale(f, self.m))

    __rmul__ = __mul__

    def adjoint(self) -> "GEndo":
        return endo_adjoint(self)

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self.m for x in row)

    def first_nonzero(self):
        return linalg.first_nonzero(self.m)

    def __eq__(self, other):
        if not isinstance(other, GEndo):
            return NotImplemented
        return self.chart == other.chart and (self - other).is_zero()

    __hash__ = None

    def lift(self, side: str, product: Chart) -> "GEndo":
        """Extend by zero from a factor to the product chart."""
        left, right = product.factors
        factor = left if side == "left" else right
        if self.chart != factor:
            raise CalculusError(f"{self.chart} is not the {side} factor of {product}")
        idx = _factor_slots(product, side)
        m = linalg.zeros(2 * product.dim)
        for a, ia in enumerate(idx):
            for b, ib in enumerate(idx):
                m[ia][ib] = self.m[a][b]
        return GEndo(product, m)

    def describe_entry(self, i: int, j: int) -> str:
        labels = frame_labels(self.chart)
        return f"{labels[j]} -> {labels[i]}"

    def __str__(self):
        labels = frame_labels(self.chart)
        cols = linalg.transpose(self.m)
        return "; ".join(
            f"{labels[j]} -> {GVector.from_comps(self.chart, col)}" for j, col in enumerate(cols)
        )

    def __repr__(self):
        return f"GEndo({self})"


def _factor_slots(product: Chart, side: str) -> list[int]:
    left, right = product.factors
    n = product.dim
    if side == "left":
        off, k = 0, left.dim
    else:
        off, k = left.dim, right.dim
    return [off + i for i in range(k)] + [n + off + i for i in range(k)]


def _check(a, b):
    if a.chart != b.chart:
        raise ChartMismatch(f"chart mismatch: {a.chart} vs {b.chart}")


def endo_apply(phi: GEndo, a) -> GVector:
    a = GVector.of(a)
    _check(phi, a)
    return GVector.from_comps(phi.chart, linalg.mat_vec(phi.m, a.comps()))


def endo_compose(phi: GEndo, psi: GEndo) -> GEndo:
    """phi o psi."""
    _check(phi, psi)
    return GEndo(phi.chart, linalg.mat_mul(phi.m, psi.m))


def endo_adjoint(phi: GEndo) -> GEndo:
    """Adjoint under the neutral metric: [[A, P], [S, B]]* = [[B^T, P^T], [S^T, A^T]]."""
    n = phi.chart.dim
    m = phi.m
    size = 2 * n

    def swap(k):
        return k + n if k < n else k - n

    return GEndo(phi.chart, [[m[swap(j)][swap(i)] for j in range(size)] for i in range(size)])


def tensor_term(u, v) -> GEndo:
    """u (x) v : b -> 2 <v, b> u."""
    u, v = GVector.of(u), GVector.of(v)
    _check(u, v)
    uc = u.comps()
    gv = list(v.form.comps) + list(v.vec.comps)
    return GEndo(u.chart, [[x * y if x and y else ZERO for y in gv] for x in uc])


# --------------------------------------------------------------------------
# Structures


@dataclass
class ClassicalACS:
    """Classical almost contact data; ``phi[i][j]`` is the D_i-component of phi(D_j)."""

    chart: Chart
    phi: list
    xi: VectorField
    eta: OneForm

    def phi_apply(self, X: VectorField) -> VectorField:
        return VectorField(self.chart, linalg.mat_vec(self.phi, X.comps))

    def phi_dual(self, alpha: OneForm) -> OneForm:
        """(phi* alpha)(X) = alpha(phi X)."""
        return OneForm(self.chart, linalg.mat_vec(linalg.transpose(self.phi), alpha.comps))


@dataclass
class GACS:
    phi: GEndo
    e_plus: GVector
    e_minus: GVector
    origin: str = "custom"
    classical: ClassicalACS | None = field(default=None, repr=False)

    @property
    def chart(self) -> Chart:
        return self.phi.chart


@dataclass
class GCS:
    j: GEndo
    origin: str = "custom"

    @property
    def chart(self) -> Chart:
        return self.j.chart


def _endo_witness(e: GEndo) -> str:
    hit = e.first_nonzero()
    if hit is None:
        return ""
    i, j, x = hit
    return f"entry {e.describe_entry(i, j)} = {x}"


def check_gcs_axioms(j) -> Report:
    j = j.j if isinstance(j, GCS) else j
    report = Report("axioms", "gcs")
    skew = j + endo_adjoint(j)
    report.add("skew", "J + J* = 0", skew.is_zero(), _endo_witness(skew))
    square = endo_compose(j, j) + GEndo.identity(j.chart)
    report.add("square", "J^2 = -Id", square.is_zero(), _endo_witness(square))
    even = j.chart.dim % 2 == 0
    report.add("even", "chart dimension is even", even, "" if even else f"dim = {j.chart.dim}")
    return report


def check_gacs_axioms(phi, e_plus=None, e_minus=None) -> Report:
    if isinstance(phi, GACS):
        phi, e_plus, e_minus = phi.phi, phi.e_plus, phi.e_minus
    e_plus, e_minus = GVector.of(e_plus), GVector.of(e_minus)
    chart = phi.chart
    report = Report("axioms", "gacs")
    skew = phi + endo_adjoint(phi)
    report.add("eq1", "Phi + Phi* = 0", skew.is_zero(), _endo_witness(skew))
    rhs = GEndo.identity(chart) * -1 + tensor_term(e_plus, e_minus) + tensor_term(e_minus, e_plus)
    square = endo_compose(phi, phi) - rhs
    report.add("eq2", "Phi^2 = -Id + E+ (x) E- + E- (x) E+", square.is_zero(), _endo_witness(square))
    pp = neutral_pairing(e_plus, e_plus)
    report.add("eq3_plus", "<E+, E+> = 0", pp.is_zero(), f"<E+, E+> = {pp}")
    mm = neutral_pairing(e_minus, e_minus)
    report.add("eq3_minus", "<E-, E-> = 0", mm.is_zero(), f"<E-, E-> = {mm}")
    pm = 2 * neutral_pairing(e_plus, e_minus)
    report.add("eq3_pair", "2<E+, E-> = 1", (pm - ONE).is_zero(), f"2<E+, E-> = {pm}")
    kp = endo_apply(phi, e_plus)
    report.add("kernel_plus", "Phi(E+) = 0", kp.is_zero(), f"Phi(E+) = {kp}")
    km = endo_apply(phi, e_minus)
    report.add("kernel_minus", "Phi(E-) = 0", km.is_zero(), f"Phi(E-) = {km}")
    return report


def _mat_witness(m, chart: Chart, what: str) -> str:
    hit = linalg.first_nonzero(m)
    if hit is None:
        return ""
    i, j, x = hit
    return f"{what}: D{chart.coords[j]} -> D{chart.coords[i]} coefficient {x}"


def check_classical_axioms(a: ClassicalACS) -> Report:
    chart = a.chart
    n = chart.dim
    report = Report("axioms", "classical")
    phi = a.phi
    rank_one = [[a.xi.comps[i] * a.eta.comps[j] for j in range(n)] for i in range(n)]
    target = linalg.mat_add(linalg.mat_neg(linalg.identity(n)), rank_one)
    diff = linalg.mat_sub(linalg.mat_mul(phi, phi), target)
    report.add("phi_square", "phi^2 = -Id + eta (x) xi", linalg.first_nonzero(diff) is None,
               _mat_witness(diff, chart, "phi^2 + Id - eta(x)xi"))
    ex = pair(a.eta, a.xi)
    report.add("eta_xi", "eta(xi) = 1", (ex - ONE).is_zero(), f"eta(xi) = {ex}")
    px = a.phi_apply(a.xi)
    report.add("phi_xi", "phi(xi) = 0", px.is_zero(), f"phi(xi) = {px}")
    ep = a.phi_dual(a.eta)
    report.add("eta_phi", "eta o phi = 0", ep.is_zero(), f"eta o phi = {ep}")
    return report


def from_complex(jcl: Sequence[Sequence], chart: Chart) -> GCS:
    """Generalized complex structure [[-J, 0], [0, J*]] of a classical J."""
    n = chart.dim
    jm = [[Scalar.coerce(x) for x in row] for row in jcl]
    sq = linalg.mat_add(linalg.mat_mul(jm, jm), linalg.identity(n))
    if linalg.first_nonzero(sq) is not None:
        report = Report("axioms", "complex")
        report.add("j_square", "J^2 = -Id", False, _mat_witness(sq, chart, "J^2 + Id"))
        raise PreconditionError("J^2 != -Id", report)
    j = GEndo.from_blocks(chart, A=linalg.mat_neg(jm), B=linalg.transpose(jm))
    return GCS(j, origin="complex")


def from_symplectic(omega: TwoForm) -> GCS:
    """[[0, -omega^-1], [omega, 0]] on the generic locus where omega is invertible."""
    chart = omega.chart
    sigma = GEndo.from_blocks(chart, sigma=omega).block("sigma")
    det = linalg.determinant(sigma)
    if det.is_zero():
        report = Report("axioms", "symplectic")
        report.add("nondegenerate", "det(omega) != 0", False, "det(omega) = 0")
        raise PreconditionError("omega is degenerate", report)
    inv = linalg.inverse(sigma)
    j = GEndo.from_blocks(chart, pi=linalg.mat_neg(inv), sigma=omega)
    return GCS(j, origin="symplectic")


def from_almost_contact(a: ClassicalACS) -> GACS:
    """Phi = [[phi, 0], [0, -phi*]], E+ = xi, E- = eta."""
    report = check_classical_axioms(a)
    if not report.passed:
        raise PreconditionError("classical almost contact axioms fail", report)
    phi = GEndo.from_blocks(a.chart, A=a.phi, B=linalg.mat_neg(linalg.transpose(a.phi)))
    return GACS(phi, GVector.of(a.xi), GVector.of(a.eta), origin="almost_contact", classical=a)


def contact_rho(eta: OneForm) -> list:
    """Matrix of rho(X) = iota_X d eta - eta(X) eta (column j = rho(D_j))."""
    deta = d_oneform(eta)
    n = eta.chart.dim
    return [[deta.m[j][i] - eta.comps[i] * eta.comps[j] for j in range(n)] for i in range(n)]


def reeb_field(eta: OneForm) -> VectorField:
    """Solve iota_xi d eta = 0, eta(xi) = 1 exactly."""
    chart = eta.chart
    n = chart.dim
    deta = d_oneform(eta)
    # rows: (iota_xi deta)_j = sum_i xi^i deta[i][j]; last row eta(xi)
    rows = [[deta.m[i][j] for i in range(n)] for j in range(n)]
    rows.append(list(eta.comps))
    rhs = [ZERO] * n + [ONE]
    sol = linalg.solve(rows, rhs)
    if sol is None:
        raise PreconditionError("Reeb system iota_xi d eta = 0, eta(xi) = 1 has no solution")
    if len(linalg.nullspace(rows)) != 0:
        raise PreconditionError("Reeb field is not unique")
    return VectorField(chart, sol)


def from_contact(eta: OneForm) -> GACS:
    """Phi = [[0, pi], [d eta, 0]], E+ = eta, E- = xi with xi the Reeb field."""
    chart = eta.chart
    n = chart.dim
    report = Report("axioms", "contact")
    if n % 2 == 0:
        report.add("odd", "chart dimension is odd", False, f"dim = {n}")
        raise PreconditionError("contact forms need an odd-dimensional chart", report)
    rho = contact_rho(eta)
    det = linalg.determinant(rho)
    if det.is_zero():
        report.add("rho_invertible", "rho(X) = iota_X d eta - eta(X) eta is invertible", False, "det(rho) = 0")
        raise PreconditionError("rho is singular: not a contact form", report)
    xi = reeb_field(eta)
    deta = d_oneform(eta)
    rinv = linalg.inverse(rho)
    # pi(a, b) = d eta(rho^-1 a, rho^-1 b) = (R^-T dEta R^-1)[a][b]
    pm = linalg.mat_mul(linalg.mat_mul(linalg.transpose(rinv), deta.matrix()), rinv)
    pi = Bivector(chart, pm)
    phi = GEndo.from_blocks(chart, pi=pi, sigma=deta)
    return GACS(phi, GVector.of(eta), GVector.of(xi), origin="contact")
