"""Products of generalized structures and the normality correspondence.

Product charts concatenate factor coordinates (left then right); factor
objects are zero-padded into the product with ``lift``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg
from .calculus import (
    Chart,
    OneForm,
    VectorField,
    d_oneform,
    lie_bracket,
    lie_derivative_oneform,
    pair,
    product_chart,
)
from .ggcore import (
    GACS,
    GCS,
    GEndo,
    GVector,
    PreconditionError,
    ClassicalACS,
    check_classical_axioms,
    check_gacs_axioms,
    check_gcs_axioms,
    courant_bracket,
    endo_apply,
    from_almost_contact,
    from_complex,
    tensor_term,
)
from .integrability import (
    SubbundleFrame,
    classify_gacs,
    eigenframe_E10,
    eigenframe_L,
    is_integrable_gcs,
    nijenhuis,
    same_span,
)
from .report import Report
from .symbolic import I, ONE, ZERO, Scalar

__all__ = [
    "ProductStructure",
    "product_gcs",
    "product_eigenframe",
    "verify_product_gcs",
    "product_gacs",
    "verify_product_gacs",
    "classical_product_j",
    "classical_cone_j",
    "standard_real_acs",
    "standard_real_gacs",
    "NormalityResult",
    "normality_tensors",
    "normality_correspondence",
]


@dataclass
class ProductStructure:
    left: GACS | GCS
    right: GACS | GCS
    chart: Chart
    result: GACS | GCS


def _require(report: Report, what: str):
    if not report.passed:
        raise PreconditionError(f"{what} axioms fail", report)


def _lift(obj, side, chart):
    return obj.lift(side, chart)


def product_gcs(s1: GACS, s2: GACS, check: bool = True) -> ProductStructure:
    """J(a1, a2) = (Phi1 a1 - 2<E+2,a2>E+1 - 2<E-2,a2>E-1, Phi2 a2 + 2<E+1,a1>E+2 + 2<E-1,a1>E-2)."""
    if check:
        _require(check_gacs_axioms(s1), "left generalized almost contact")
        _require(check_gacs_axioms(s2), "right generalized almost contact")
    chart = product_chart(s1.chart, s2.chart)
    p1, m1 = _lift(s1.e_plus, "left", chart), _lift(s1.e_minus, "left", chart)
    p2, m2 = _lift(s2.e_plus, "right", chart), _lift(s2.e_minus, "right", chart)
    # (u (x) v)(b) = 2<v, b> u
    j = (
        s1.phi.lift("left", chart)
        + s2.phi.lift("right", chart)
        - tensor_term(p1, p2)
        - tensor_term(m1, m2)
        + tensor_term(p2, p1)
        + tensor_term(m2, m1)
    )
    return ProductStructure(s1, s2, chart, GCS(j, origin="product"))


def product_eigenframe(s1: GACS, s2: GACS, chart: Chart | None = None) -> tuple[SubbundleFrame, dict]:
    """The i-eigenbundle of the product structure from factor data, by family."""
    chart = chart or product_chart(s1.chart, s2.chart)
    e1 = [g.lift("left", chart) for g in eigenframe_E10(s1).generators]
    e2 = [g.lift("right", chart) for g in eigenframe_E10(s2).generators]
    p1, m1 = s1.e_plus.lift("left", chart), s1.e_minus.lift("left", chart)
    p2, m2 = s2.e_plus.lift("right", chart), s2.e_minus.lift("right", chart)
    families = {
        "E10_left": e1,
        "E10_right": e2,
        "Eminus1_Eplus2": [m1 - p2 * I],
        "Eplus1_Eminus2": [p1 - m2 * I],
    }
    gens = [g for fam in families.values() for g in fam]
    return SubbundleFrame(chart, gens, "Lbundle"), families


def _bracket_pm(s: GACS) -> GVector:
    return courant_bracket(s.e_plus, s.e_minus)


def verify_product_gcs(s1: GACS, s2: GACS, seed: int | None = None) -> Report:
    """Product GCS is integrable iff both factors are strong with [[E+, E-]] = 0."""
    report = Report("product-verify", "product")
    prod = product_gcs(s1, s2)
    j = prod.result
    ax = check_gcs_axioms(j)
    for c in ax.checks:
        report.add(f"product_{c.id}", f"product: {c.description}", c.ok, c.witness, violation=True)
    if not ax.passed:
        return report

    c1, c2 = classify_gacs(s1), classify_gacs(s2)
    report.add("left_strong", "left factor is strong", c1.verdict.strong, c1.verdict.value, soft=True)
    report.add("right_strong", "right factor is strong", c2.verdict.strong, c2.verdict.value, soft=True)
    b1, b2 = _bracket_pm(s1), _bracket_pm(s2)
    report.add("left_bracket", "[[E+, E-]] = 0 on the left factor", b1.is_zero(), f"[[E+, E-]] = {b1}", soft=True)
    report.add("right_bracket", "[[E+, E-]] = 0 on the right factor", b2.is_zero(), f"[[E+, E-]] = {b2}", soft=True)

    integ = is_integrable_gcs(j, seed=seed)
    report.extend(integ, "product_")
    integrable = integ.data["integrable"]

    # cross-factor Nijenhuis value on the kernel sections
    chart = prod.chart
    p1, m1 = s1.e_plus.lift("left", chart), s1.e_minus.lift("left", chart)
    n_pm = nijenhuis(j, p1, m1)
    expected = b1.lift("left", chart) * -1 - b2.lift("right", chart)
    report.add("kernel_pair", "N((E+1,0),(E-1,0)) = (-[[E+1,E-1]], -[[E+2,E-2]])",
               (n_pm - expected).is_zero(), f"N = {n_pm}", violation=True)

    fr, families = product_eigenframe(s1, s2, chart)
    bad = ""
    for name, gens in families.items():
        for g in gens:
            r = endo_apply(j.j, g) - g * I
            if not r.is_zero() and not bad:
                bad = f"{name}: J(g) - i g = {r} for g = {g}"
    report.add("eigen_families", "factor-built generators are i-eigenvectors of J", not bad, bad, violation=True)
    eq, w = same_span(fr, eigenframe_L(j, check=False))
    report.add("eigen_span", "factor-built frame spans the i-eigenbundle of J", eq, w, violation=True)

    predicted = c1.verdict.strong and c2.verdict.strong and b1.is_zero() and b2.is_zero()
    report.add(
        "biconditional",
        "product integrable iff both factors strong and both [[E+, E-]] vanish",
        integrable == predicted,
        f"product integrable: {integrable}; factor condition: {predicted}",
        violation=True,
        always=True,
    )
    report.data.update(product=prod, integrable=integrable, predicted=predicted,
                       left=c1, right=c2, nijenhuis=integ.data["nonzero"])
    return report


def product_gacs(s: GACS, j: GCS, check: bool = True) -> ProductStructure:
    """Psi = Phi (+) J block-diagonally, with E+- lifted from the odd factor."""
    if check:
        _require(check_gacs_axioms(s), "generalized almost contact")
        _require(check_gcs_axioms(j), "generalized almost complex")
    chart = product_chart(s.chart, j.chart)
    psi = s.phi.lift("left", chart) + j.j.lift("right", chart)
    result = GACS(psi, s.e_plus.lift("left", chart), s.e_minus.lift("left", chart), origin="product")
    return ProductStructure(s, j, chart, result)


def verify_product_gacs(s: GACS, j: GCS, seed: int | None = None) -> Report:
    report = Report("product-verify", "product")
    prod = product_gacs(s, j)
    psi = prod.result
    ax = check_gacs_axioms(psi)
    for c in ax.checks:
        report.add(f"product_{c.id}", f"product: {c.description}", c.ok, c.witness, violation=True)
    if not ax.passed:
        return report

    cs = classify_gacs(s)
    ij = is_integrable_gcs(j, seed=seed)
    cp = classify_gacs(psi)
    j_int = ij.data["integrable"]
    report.add("left_class", "odd factor classification", cs.verdict.strong, cs.verdict.value, soft=True)
    report.add("right_integrable", "even factor is integrable", j_int,
               ij.get("nijenhuis").witness or ij.get("eigenbundle").witness, soft=True)
    report.extend(cp.report(), "product_")

    report.add("integrable_biconditional", "product integrable iff both factors integrable",
               cp.verdict.integrable == (cs.verdict.integrable and j_int),
               f"product: {cp.verdict.value}; odd factor: {cs.verdict.value}; even factor integrable: {j_int}",
               violation=True, always=True)
    report.add("strong_biconditional", "product strong iff odd factor strong and even factor integrable",
               cp.verdict.strong == (cs.verdict.strong and j_int),
               f"product strong: {cp.verdict.strong}", violation=True, always=True)

    chart = prod.chart
    lifted = [g.lift("left", chart) for g in cs.e10.generators]
    lifted += [g.lift("right", chart) for g in eigenframe_L(j, check=False).generators]
    eq, w = same_span(cp.e10, SubbundleFrame(chart, lifted, "custom"))
    report.add("eigen_span", "E10 of the product = lifted E10 + lifted L", eq, w, violation=True)
    report.data.update(product=prod, left=cs, right_integrable=j_int, classification=cp)
    return report


# --------------------------------------------------------------------------
# Classical constructions


def _require_classical(a: ClassicalACS):
    _require(check_classical_axioms(a), "classical almost contact")


def classical_product_j(a1: ClassicalACS, a2: ClassicalACS) -> list:
    """J(X1, X2) = (phi1 X1 - eta2(X2) xi1, phi2 X2 + eta1(X1) xi2) on the product chart."""
    _require_classical(a1)
    _require_classical(a2)
    chart = product_chart(a1.chart, a2.chart)
    n1, n2 = a1.chart.dim, a2.chart.dim
    m = linalg.zeros(chart.dim)
    for i in range(n1):
        for k in range(n1):
            m[i][k] = a1.phi[i][k]
        for k in range(n2):
            m[i][n1 + k] = -(a1.xi.comps[i] * a2.eta.comps[k])
    for i in range(n2):
        for k in range(n2):
            m[n1 + i][n1 + k] = a2.phi[i][k]
        for k in range(n1):
            m[n1 + i][k] = a2.xi.comps[i] * a1.eta.comps[k]
    return m


def standard_real_acs(coord: str = "t") -> ClassicalACS:
    chart = Chart((coord,))
    return ClassicalACS(chart, [[ZERO]], VectorField(chart, [ONE]), OneForm(chart, [ONE]))


def standard_real_gacs(coord: str = "t") -> GACS:
    """Phi = 0 on R with E+ = dt and E- = Dt."""
    chart = Chart((coord,))
    return GACS(GEndo.zero(chart), GVector.of(OneForm(chart, [ONE])),
                GVector.of(VectorField(chart, [ONE])), origin="standard R")


def classical_cone_j(a: ClassicalACS, coord: str = "t") -> tuple[Chart, list]:
    """J(X, f Dt) = (phi X - f xi, eta(X) Dt) on chart ++ [t]."""
    _require_classical(a)
    chart = product_chart(a.chart, Chart((coord,)))
    n = a.chart.dim
    m = linalg.zeros(n + 1)
    for i in range(n):
        for k in range(n):
            m[i][k] = a.phi[i][k]
        m[i][n] = -a.xi.comps[i]
        m[n][i] = a.eta.comps[i]
    return chart, m


@dataclass
class NormalityResult:
    tensors: dict  # name -> list of (label, value) nonzero components
    descriptions: dict = field(default_factory=dict)

    @property
    def is_normal(self) -> bool:
        return not any(self.tensors.values())

    def first(self, name: str) -> str:
        comps = self.tensors[name]
        return f"{comps[0][0]} = {comps[0][1]}" if comps else ""


def _phi_vec(a: ClassicalACS, X: VectorField) -> VectorField:
    return a.phi_apply(X)


def _torsion(a: ClassicalACS, X, Y) -> VectorField:
    """[phi, phi](X, Y) = phi^2[X,Y] + [phiX, phiY] - phi[phiX, Y] - phi[X, phiY]."""
    phi = lambda v: _phi_vec(a, v)
    return (
        phi(phi(lie_bracket(X, Y)))
        + lie_bracket(phi(X), phi(Y))
        - phi(lie_bracket(phi(X), Y))
        - phi(lie_bracket(X, phi(Y)))
    )


def normality_tensors(a: ClassicalACS, deta_factor=1) -> NormalityResult:
    """The four normality tensors on all coordinate fields.

    The first tensor is [phi, phi](X, Y) + c * deta(X, Y) xi where
    deta(X, Y) = X eta(Y) - Y eta(X) - eta([X, Y]) and c = ``deta_factor``.
    """
    _require_classical(a)
    chart = a.chart
    n = chart.dim
    basis = [VectorField.basis(chart, c) for c in chart.coords]
    deta = d_oneform(a.eta)
    c = Scalar.coerce(deta_factor)
    out = {"N1": [], "N2": [], "N3": [], "N4": []}
    lie_phi = {}
    for i in range(n):
        lie_phi[i] = lie_derivative_oneform(_phi_vec(a, basis[i]), a.eta)
    for i in range(n):
        for j in range(i + 1, n):
            X, Y = basis[i], basis[j]
            v = _torsion(a, X, Y) + a.xi * (c * deta(X, Y))
            if not v.is_zero():
                out["N1"].append((f"N1(D{chart.coords[i]}, D{chart.coords[j]})", v))
            s = pair(lie_phi[i], Y) - pair(lie_phi[j], X)
            if s:
                out["N2"].append((f"N2(D{chart.coords[i]}, D{chart.coords[j]})", s))
    lxi_eta = lie_derivative_oneform(a.xi, a.eta)
    for i in range(n):
        X = basis[i]
        v = lie_bracket(a.xi, _phi_vec(a, X)) - _phi_vec(a, lie_bracket(a.xi, X))
        if not v.is_zero():
            out["N3"].append((f"(L_xi phi)(D{chart.coords[i]})", v))
        s = pair(lxi_eta, X)
        if s:
            out["N4"].append((f"(L_xi eta)(D{chart.coords[i]})", s))
    desc = {
        "N1": "[phi, phi](X, Y) + 2 deta(X, Y) xi = 0 with deta(X, Y) = (X eta(Y) - Y eta(X) - eta([X, Y]))/2",
        "N2": "(L_{phi X} eta)(Y) - (L_{phi Y} eta)(X) = 0",
        "N3": "(L_xi phi)(X) = 0",
        "N4": "(L_xi eta)(X) = 0",
    }
    return NormalityResult(out, desc)


def normality_correspondence(a: ClassicalACS, coord: str = "t", seed: int | None = None) -> Report:
    report = Report("normality", "classical")
    norm = normality_tensors(a)
    for name, comps in norm.tensors.items():
        report.add(name, norm.descriptions[name], not comps, norm.first(name), soft=True)

    s = from_almost_contact(a)
    r = standard_real_gacs(coord)
    prod = product_gcs(s, r)
    integ = is_integrable_gcs(prod.result, seed=seed)
    integrable = integ.data["integrable"]
    nz = integ.data["nonzero"]
    n_witness = f"N({nz[0][0]}, {nz[0][1]}) = {nz[0][2]}" if nz else ""
    report.add("product_integrable", "M x R product structure is integrable", integrable, n_witness, soft=True)
    report.add("normal_iff_integrable", "normal iff the M x R product is integrable",
               integrable == norm.is_normal,
               f"normal: {norm.is_normal}; product integrable: {integrable}", violation=True, always=True)

    br = courant_bracket(s.e_plus, s.e_minus)
    lxi = GVector.of(lie_derivative_oneform(a.xi, a.eta))
    report.add("bracket_is_lie", "[[E+, E-]] = L_xi eta", (br - lxi).is_zero(),
               f"[[E+, E-]] = {br}; L_xi eta = {lxi.form}", violation=True)
    report.add("bracket_iff_lie", "[[E+, E-]] = 0 iff L_xi eta = 0",
               br.is_zero() == lxi.is_zero(), "", violation=True)

    chart, jm = classical_cone_j(a, coord)
    cone = from_complex(jm, chart).j
    j = prod.result.j
    diff = j - cone
    hit = diff.first_nonzero()
    literal = hit is None
    report.add("cone_blockwise", "product structure = from_complex(J) of the classical M x R structure",
               literal, "" if literal else f"entry {diff.describe_entry(hit[0], hit[1])}: "
               f"product {j.m[hit[0]][hit[1]]}, from_complex {cone.m[hit[0]][hit[1]]}", soft=True)
    conj = from_complex(linalg.mat_neg(jm), chart).j
    report.add("cone_conjugate", "product structure = from_complex(-J) of the classical M x R structure",
               j == conj, "", soft=True)
    report.data.update(normality=norm, integrable=integrable, product=prod, cone=cone,
                       cone_literal=literal, bracket=br, nijenhuis=nz)
    return report
