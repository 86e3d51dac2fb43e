"""Eigenbundle frames, involutivity, and the Courant-Nijenhuis tensor.

Subbundles of the complexified generalized tangent bundle are represented
by spanning sets (:class:`SubbundleFrame`).  Membership is decided over the
rational-function field, so every verdict holds on the generic locus of
the chart.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from enum import Enum

from . import linalg
from .calculus import Chart, ChartMismatch
from .ggcore import (
    GACS,
    GCS,
    GGError,
    GVector,
    PreconditionError,
    check_gacs_axioms,
    check_gcs_axioms,
    courant_bracket,
    endo_apply,
    frame,
    frame_labels,
    neutral_pairing,
)
from .report import Report
from .symbolic import I, Scalar

__all__ = [
    "NonIsotropicFrame",
    "SubbundleFrame",
    "Membership",
    "Involutivity",
    "Classification",
    "ClassifyResult",
    "default_seed",
    "orthogonal_complement_frame",
    "eigenframe_E10",
    "frame_Lpm",
    "eigenframe_L",
    "reduce_frame",
    "span_membership",
    "same_span",
    "is_isotropic",
    "is_involutive",
    "nijenhuis",
    "is_integrable_gcs",
    "classify_gacs",
    "kernel_pairing_report",
    "e10_containments",
]


class NonIsotropicFrame(GGError):
    pass


def default_seed() -> int:
    return int(os.environ.get("GG_SEED", "0"))


@dataclass
class SubbundleFrame:
    chart: Chart
    generators: list
    label: str = "custom"
    rank: int = field(init=False)
    _span: linalg.ReducedSpan | None = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        self.generators = [GVector.of(g) for g in self.generators]
        for g in self.generators:
            if g.chart != self.chart:
                raise ChartMismatch(f"generator on {g.chart}, frame on {self.chart}")
        self.rank = self.generic_rank()

    def matrix(self) -> list:
        """2n x k matrix whose columns are the generators."""
        if not self.generators:
            return []
        return linalg.transpose([g.comps() for g in self.generators])

    def generic_rank(self, seed: int = 0) -> int:
        if not self.generators:
            return 0
        return linalg.generic_rank(self.matrix(), self.chart.coords, seed=seed)

    @property
    def span(self) -> linalg.ReducedSpan:
        if self._span is None:
            self._span = linalg.ReducedSpan.build([g.comps() for g in self.generators])
        return self._span

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __str__(self):
        body = ", ".join(str(g) for g in self.generators)
        return f"{self.label}{{{body}}}"


@dataclass
class Membership:
    member: bool
    coefficients: list | None
    residual: GVector

    def __bool__(self):
        return self.member


@dataclass
class Involutivity:
    involutive: bool
    pair: tuple | None = None
    bracket: GVector | None = None
    residual: GVector | None = None
    pairs_checked: int = 0

    def __bool__(self):
        return self.involutive

    def witness(self, frame: SubbundleFrame | None = None) -> str:
        if self.involutive:
            return ""
        i, j = self.pair
        if frame is not None:
            gi, gj = frame.generators[i], frame.generators[j]
            return f"[[{gi}, {gj}]] = {self.bracket}; residual {self.residual}"
        return f"generators {i}, {j}: residual {self.residual}"


def _pairing_row(e: GVector) -> list:
    # <E, a> = (E_form . a_vec + E_vec . a_form) / 2
    half = Scalar.const(1) / 2
    return [half * c for c in e.form.comps] + [half * c for c in e.vec.comps]


def orthogonal_complement_frame(e_plus, e_minus) -> SubbundleFrame:
    """Spanning set of {a : <E+, a> = <E-, a> = 0}."""
    e_plus, e_minus = GVector.of(e_plus), GVector.of(e_minus)
    if e_plus.chart != e_minus.chart:
        raise ChartMismatch("E+ and E- live on different charts")
    chart = e_plus.chart
    system = [_pairing_row(e_plus), _pairing_row(e_minus)]
    if linalg.rank(system) < 2:
        raise GGError("E+ and E- are dependent: pairing system has rank < 2")
    basis = linalg.nullspace(system)
    return SubbundleFrame(chart, [GVector.from_comps(chart, v) for v in basis], "complement")


def _require_gacs(s: GACS):
    report = check_gacs_axioms(s)
    if not report.passed:
        raise PreconditionError("generalized almost contact axioms fail", report)


def _require_gcs(j: GCS):
    report = check_gcs_axioms(j)
    if not report.passed:
        raise PreconditionError("generalized almost complex axioms fail", report)


def eigenframe_E10(s: GACS, check: bool = True) -> SubbundleFrame:
    """Generators a - i Phi(a) over the complement of span{E+, E-}."""
    if check:
        _require_gacs(s)
    comp = orthogonal_complement_frame(s.e_plus, s.e_minus)
    gens = [a - endo_apply(s.phi, a) * I for a in comp.generators]
    return SubbundleFrame(s.chart, gens, "E10")


def frame_Lpm(s: GACS, sign: str, check: bool = True, e10: SubbundleFrame | None = None) -> SubbundleFrame:
    if sign not in ("+", "-"):
        raise ValueError("sign must be '+' or '-'")
    e10 = e10 if e10 is not None else eigenframe_E10(s, check)
    extra = s.e_plus if sign == "+" else s.e_minus
    return SubbundleFrame(s.chart, [extra] + list(e10.generators), "Lplus" if sign == "+" else "Lminus")


def eigenframe_L(j: GCS, check: bool = True) -> SubbundleFrame:
    """Generators a - i J(a) over the full coordinate frame."""
    if check:
        _require_gcs(j)
    endo = j.j if isinstance(j, GCS) else j
    gens = [a - endo_apply(endo, a) * I for a in frame(endo.chart)]
    return SubbundleFrame(endo.chart, gens, "Lbundle")


def reduce_frame(f: SubbundleFrame) -> SubbundleFrame:
    """Keep only generators that raise the rank (same span, original entries)."""
    keep = [f.generators[k] for k in f.span.independent]
    return SubbundleFrame(f.chart, keep, f.label)


def span_membership(f: SubbundleFrame, v) -> Membership:
    v = GVector.of(v)
    if v.chart != f.chart:
        raise ChartMismatch(f"vector on {v.chart}, frame on {f.chart}")
    if not f.generators:
        return Membership(v.is_zero(), [] if v.is_zero() else None, v)
    res, coeffs = f.span.residual(v.comps())
    residual = GVector.from_comps(f.chart, res)
    if residual.is_zero():
        return Membership(True, coeffs, residual)
    return Membership(False, None, residual)


def same_span(a: SubbundleFrame, b: SubbundleFrame) -> tuple[bool, str]:
    """Mutual span membership; returns (equal, witness)."""
    for g in a.generators:
        m = span_membership(b, g)
        if not m:
            return False, f"{g} not in {b.label}: residual {m.residual}"
    for g in b.generators:
        m = span_membership(a, g)
        if not m:
            return False, f"{g} not in {a.label}: residual {m.residual}"
    return True, ""


def is_isotropic(f: SubbundleFrame) -> tuple[bool, str]:
    gens = f.generators
    for i in range(len(gens)):
        for j in range(i, len(gens)):
            p = neutral_pairing(gens[i], gens[j])
            if p:
                return False, f"<g{i}, g{j}> = {p}"
    return True, ""


def is_involutive(f: SubbundleFrame, reduce: bool = True) -> Involutivity:
    """Check Courant closure on generator pairs.

    A pair whose bracket leaves the span disproves involutivity for any
    frame.  Passing every pair only proves it for isotropic frames, so a
    non-isotropic frame with no failing pair raises :class:`NonIsotropicFrame`.
    """
    isotropic, witness = is_isotropic(f)
    idx = f.span.independent if reduce else list(range(len(f.generators)))
    gens = f.generators
    checked = 0
    for a in range(len(idx)):
        for b in range(a + 1, len(idx)):
            i, j = idx[a], idx[b]
            br = courant_bracket(gens[i], gens[j])
            checked += 1
            if br.is_zero():
                continue
            m = span_membership(f, br)
            if not m:
                return Involutivity(False, (i, j), br, m.residual, checked)
    if not isotropic:
        raise NonIsotropicFrame(f"frame {f.label} is not isotropic ({witness}); pair checks cannot prove closure")
    return Involutivity(True, pairs_checked=checked)


def nijenhuis(j, a, b) -> GVector:
    """N(a, b) = [[Ja, Jb]] - J[[a, Jb]] - J[[Ja, b]] + J^2[[a, b]]."""
    endo = j.j if isinstance(j, GCS) else j
    a, b = GVector.of(a), GVector.of(b)
    ja, jb = endo_apply(endo, a), endo_apply(endo, b)
    inner = courant_bracket(a, jb) + courant_bracket(ja, b)
    return (
        courant_bracket(ja, jb)
        - endo_apply(endo, inner)
        + endo_apply(endo, endo_apply(endo, courant_bracket(a, b)))
    )


def _random_poly(rng: random.Random, chart: Chart, degree: int = 2) -> Scalar:
    from .properties import random_scalar

    return random_scalar(rng, chart, degree)


def is_integrable_gcs(j: GCS, seed: int | None = None, tensoriality_trials: int = 2) -> Report:
    """Nijenhuis tensor on all frame pairs, cross-checked against involutivity of L."""
    _require_gcs(j)
    endo = j.j
    chart = endo.chart
    report = Report("nijenhuis", j.origin)
    basis = frame(chart)
    labels = frame_labels(chart)
    first = None
    nonzero = []
    for p in range(len(basis)):
        for q in range(p + 1, len(basis)):
            n_pq = nijenhuis(endo, basis[p], basis[q])
            if not n_pq.is_zero():
                nonzero.append((labels[p], labels[q], n_pq))
                if first is None:
                    first = (labels[p], labels[q], n_pq)
    n_zero = not nonzero
    witness = "" if n_zero else f"N({first[0]}, {first[1]}) = {first[2]}"
    report.add("nijenhuis", "N_J vanishes on every coordinate frame pair", n_zero, witness, soft=True)
    L = eigenframe_L(j, check=False)
    inv = is_involutive(L)
    report.add("eigenbundle", "sqrt(-1)-eigenbundle L is Courant involutive", inv.involutive,
               inv.witness(L), soft=True)
    report.add("dual_criterion", "N_J = 0 agrees with involutivity of L", n_zero == inv.involutive,
               f"N zero: {n_zero}, L involutive: {inv.involutive}", violation=True)
    rng = random.Random(default_seed() if seed is None else seed)
    tens_ok, tens_witness = True, ""
    for _ in range(tensoriality_trials):
        f = _random_poly(rng, chart)
        p, q = rng.randrange(len(basis)), rng.randrange(len(basis))
        lhs = nijenhuis(endo, basis[p] * f, basis[q])
        rhs = nijenhuis(endo, basis[p], basis[q]) * f
        diff = lhs - rhs
        if not diff.is_zero():
            tens_ok = False
            tens_witness = f"f = {f}, N(f*{labels[p]}, {labels[q]}) - f*N = {diff}"
            break
    report.add("tensoriality", "N(f a, b) = f N(a, b) on seeded random f", tens_ok, tens_witness, violation=True)
    report.data.update(integrable=n_zero and inv.involutive, nonzero=nonzero, involutivity=inv, frame=L)
    return report


class Classification(str, Enum):
    NOT_INTEGRABLE = "not integrable"
    PLUS_ONLY = "integrable via L+ only"
    MINUS_ONLY = "integrable via L- only"
    STRONG = "strong"

    @property
    def integrable(self) -> bool:
        return self is not Classification.NOT_INTEGRABLE

    @property
    def strong(self) -> bool:
        return self is Classification.STRONG


@dataclass
class ClassifyResult:
    verdict: Classification
    plus: Involutivity
    minus: Involutivity
    e10: SubbundleFrame
    l_plus: SubbundleFrame
    l_minus: SubbundleFrame

    def report(self, subject: str = "gacs") -> Report:
        r = Report("classify", subject)
        r.add("L+", "L+ = L_{E+} + E^(1,0) is Courant involutive", self.plus.involutive,
              self.plus.witness(self.l_plus), soft=True)
        r.add("L-", "L- = L_{E-} + E^(1,0) is Courant involutive", self.minus.involutive,
              self.minus.witness(self.l_minus), soft=True)
        label = {
            Classification.STRONG: "strong",
            Classification.PLUS_ONLY: "integrable, not strong (L+ involutive)",
            Classification.MINUS_ONLY: "integrable, not strong (L- involutive)",
            Classification.NOT_INTEGRABLE: "not integrable",
        }[self.verdict]
        r.add("classification", "integrability class", self.verdict.strong, label, soft=True, always=True)
        return r


def classify_gacs(s: GACS) -> ClassifyResult:
    _require_gacs(s)
    e10 = eigenframe_E10(s, check=False)
    lp = frame_Lpm(s, "+", e10=e10)
    lm = frame_Lpm(s, "-", e10=e10)
    plus = is_involutive(lp)
    minus = is_involutive(lm)
    if plus.involutive and minus.involutive:
        verdict = Classification.STRONG
    elif plus.involutive:
        verdict = Classification.PLUS_ONLY
    elif minus.involutive:
        verdict = Classification.MINUS_ONLY
    else:
        verdict = Classification.NOT_INTEGRABLE
    return ClassifyResult(verdict, plus, minus, e10, lp, lm)


def kernel_pairing_report(s: GACS) -> Report:
    """<E+-, Phi(a)> = 0 on the full frame, plus the E10 generator identities."""
    report = Report("kernel_pairing", s.origin)
    labels = frame_labels(s.chart)
    bad = ""
    for label, a in zip(labels, frame(s.chart)):
        pa = endo_apply(s.phi, a)
        for name, e in (("E+", s.e_plus), ("E-", s.e_minus)):
            v = neutral_pairing(e, pa)
            if v and not bad:
                bad = f"<{name}, Phi({label})> = {v}"
    report.add("kernel_pairing", "<E+-, Phi(a)> = 0 for every frame element a", not bad, bad)
    e10 = eigenframe_E10(s, check=False)
    bad = ""
    for g in e10.generators:
        r = endo_apply(s.phi, g) - g * I
        if not r.is_zero():
            bad = f"Phi(g) - i g = {r} for g = {g}"
            break
        for name, e in (("E+", s.e_plus), ("E-", s.e_minus)):
            v = neutral_pairing(e, g)
            if v:
                bad = f"<{name}, {g}> = {v}"
                break
        if bad:
            break
    report.add("e10_eigen", "E10 generators: Phi(g) = i g and <E+-, g> = 0", not bad, bad)
    ok, w = is_isotropic(e10)
    report.add("e10_isotropic", "E10 frame is isotropic", ok, w)
    return report


def e10_containments(s: GACS) -> tuple[bool, bool, str]:
    """[[L+, E10]] in E10 and [[L-, E10]] in E10, checked on generators."""
    e10 = eigenframe_E10(s, check=False)
    small = reduce_frame(e10)
    results = []
    witness = ""
    for sign in ("+", "-"):
        lf = reduce_frame(frame_Lpm(s, sign, check=False, e10=e10))
        ok = True
        for g in lf.generators:
            for h in small.generators:
                br = courant_bracket(g, h)
                if br.is_zero():
                    continue
                m = span_membership(e10, br)
                if not m:
                    ok = False
                    if not witness:
                        witness = f"[[{g}, {h}]] = {br} leaves E10 (residual {m.residual})"
                    break
            if not ok:
                break
        results.append(ok)
    return results[0], results[1], witness
