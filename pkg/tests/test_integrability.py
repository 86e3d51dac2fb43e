import pytest

from ggeom.calculus import Chart, OneForm, TwoForm, VectorField
from ggeom.catalog import (
    cosymplectic,
    darboux_contact,
    darboux_sasakian,
    standard_complex,
    symplectic_plane,
    twisted,
)
from ggeom.ggcore import (
    GGError,
    GVector,
    PreconditionError,
    courant_bracket,
    endo_apply,
    from_almost_contact,
    from_symplectic,
    neutral_pairing,
)
from ggeom.integrability import (
    Classification,
    NonIsotropicFrame,
    SubbundleFrame,
    classify_gacs,
    eigenframe_E10,
    eigenframe_L,
    frame_Lpm,
    is_integrable_gcs,
    is_involutive,
    is_isotropic,
    kernel_pairing_report,
    e10_containments,
    nijenhuis,
    orthogonal_complement_frame,
    reduce_frame,
    same_span,
    span_membership,
)
from ggeom.products import standard_real_gacs
from ggeom.symbolic import I, ONE, Scalar

R3 = Chart(("x", "y", "z"))
R2 = Chart(("x", "y"))
X, Y = Scalar.coord("x"), Scalar.coord("y")
HALF = ONE / 2


def D(c, chart=R3):
    return GVector.of(VectorField.basis(chart, c))


def d(c, chart=R3):
    return GVector.of(OneForm.basis(chart, c))


COSYM = from_almost_contact(cosymplectic())
SASAKI = from_almost_contact(darboux_sasakian())
CONTACT = darboux_contact()
LINE = standard_real_gacs()
ALL_GACS = [COSYM, SASAKI, CONTACT, LINE, from_almost_contact(twisted())]


class TestComplement:
    def test_line_is_empty(self):
        f = orthogonal_complement_frame(LINE.e_plus, LINE.e_minus)
        assert f.rank == 0 and len(f) == 0

    def test_cosymplectic(self):
        f = orthogonal_complement_frame(COSYM.e_plus, COSYM.e_minus)
        expected = SubbundleFrame(R3, [D("x"), D("y"), d("x"), d("y")])
        assert f.rank == 4
        assert same_span(f, expected)[0]

    def test_contact_pairings_vanish(self):
        f = orthogonal_complement_frame(CONTACT.e_plus, CONTACT.e_minus)
        assert f.rank == 4
        for g in f:
            assert neutral_pairing(CONTACT.e_plus, g).is_zero()
            assert neutral_pairing(CONTACT.e_minus, g).is_zero()

    def test_dependent_sections(self):
        with pytest.raises(GGError):
            orthogonal_complement_frame(D("z"), D("z") * X)


class TestEigenframes:
    def test_cosymplectic_e10(self):
        f = eigenframe_E10(COSYM)
        small = reduce_frame(f)
        assert len(small) == 2
        assert same_span(small, SubbundleFrame(R3, [D("x") - D("y") * I, d("x") - d("y") * I]))[0]

    def test_line(self):
        assert len(eigenframe_E10(LINE)) == 0
        lp = frame_Lpm(LINE, "+")
        assert lp.generators == [d("t", LINE.chart)]

    @pytest.mark.parametrize("s", ALL_GACS, ids=lambda s: s.origin)
    def test_e10_generators_are_eigenvectors(self, s):
        for g in eigenframe_E10(s):
            assert (endo_apply(s.phi, g) - g * I).is_zero()
            assert neutral_pairing(s.e_plus, g).is_zero()
            assert neutral_pairing(s.e_minus, g).is_zero()

    @pytest.mark.parametrize("s", ALL_GACS, ids=lambda s: s.origin)
    def test_frames_isotropic(self, s):
        for f in (eigenframe_E10(s), frame_Lpm(s, "+"), frame_Lpm(s, "-")):
            assert is_isotropic(f)[0]

    @pytest.mark.parametrize("j", [standard_complex(), symplectic_plane()], ids=lambda j: j.origin)
    def test_L_eigenvectors_and_rank(self, j):
        f = eigenframe_L(j)
        assert f.rank == j.chart.dim
        assert is_isotropic(f)[0]
        for g in f:
            assert (endo_apply(j.j, g) - g * I).is_zero()

    def test_complex_L(self):
        f = eigenframe_L(standard_complex())
        expected = SubbundleFrame(R2, [D("x", R2) + D("y", R2) * I, d("x", R2) + d("y", R2) * I])
        assert same_span(f, expected)[0]

    def test_axiom_failure(self):
        from ggeom.ggcore import GACS, GEndo

        with pytest.raises(PreconditionError):
            eigenframe_E10(GACS(GEndo.zero(R3), D("z"), d("z")))

    def test_bad_sign(self):
        with pytest.raises(ValueError):
            frame_Lpm(COSYM, "0")


class TestMembership:
    def test_examples(self):
        f = SubbundleFrame(R3, [d("x"), d("y")])
        m = span_membership(f, d("y"))
        assert m.member and m.coefficients == [0, 1]
        m = span_membership(SubbundleFrame(R3, [d("x")]), d("x") * Y)
        assert m.member and m.coefficients == [Y]
        m = span_membership(SubbundleFrame(R3, [D("x"), d("z") - d("x") * Y]), d("y") * HALF)
        assert not m.member
        assert m.residual == d("y") * HALF

    def test_redundant_generators(self):
        f = SubbundleFrame(R3, [D("x"), D("x") * Y, D("y")])
        m = span_membership(f, D("x") * 3 + D("y") * X)
        assert m.member
        total = sum((g * c for g, c in zip(f.generators, m.coefficients)), GVector.zero(R3))
        assert total == D("x") * 3 + D("y") * X


class TestInvolutive:
    def test_coordinate_fields(self):
        assert is_involutive(SubbundleFrame(R3, [D("x"), D("y")])).involutive

    def test_counterexample_reported_even_if_not_isotropic(self):
        f = SubbundleFrame(R3, [D("x"), d("z") - d("x") * Y])
        r = is_involutive(f)
        assert not r.involutive
        assert r.pair == (0, 1)
        assert r.residual == d("y") * HALF

    def test_refuses_unprovable_non_isotropic(self):
        with pytest.raises(NonIsotropicFrame):
            is_involutive(SubbundleFrame(R3, [D("x"), d("x")]))

    def test_cosymplectic_Lplus(self):
        assert is_involutive(frame_Lpm(COSYM, "+")).involutive


class TestNijenhuis:
    def test_self_pair(self):
        j = symplectic_plane(coefficient=1 + X * X)
        a = D("x", R2) * Y + d("y", R2)
        assert nijenhuis(j, a, a).is_zero()

    def test_symplectic_coordinate_pair(self):
        assert nijenhuis(symplectic_plane(), D("x", R2), D("y", R2)).is_zero()

    @pytest.mark.parametrize("j", [standard_complex(), symplectic_plane()], ids=lambda j: j.origin)
    def test_examples_integrable(self, j):
        r = is_integrable_gcs(j)
        assert r.data["integrable"] and r.passed
        assert r.data["nonzero"] == []
        assert r.get("dual_criterion").verdict == "pass"

    def test_nonconstant_symplectic_plane_is_integrable(self):
        # every two-form on a plane is closed
        r = is_integrable_gcs(symplectic_plane(coefficient=1 + X * X))
        assert r.data["integrable"]

    def test_nonclosed_form_is_not_integrable(self):
        R4 = Chart(("x", "y", "z", "w"))
        w = TwoForm.from_upper(R4, {(0, 1): 1, (2, 3): 1, (1, 2): Scalar.coord("x")})
        r = is_integrable_gcs(from_symplectic(w))
        assert not r.data["integrable"]
        assert r.get("nijenhuis").verdict == "warning" and "N(" in r.get("nijenhuis").witness
        assert r.get("dual_criterion").verdict == "pass"
        assert r.exit_code == 0

    def test_seed_changes_nothing_in_verdicts(self):
        a = is_integrable_gcs(standard_complex(), seed=0)
        b = is_integrable_gcs(standard_complex(), seed=12345)
        assert [c.verdict for c in a.checks] == [c.verdict for c in b.checks]


class TestClassify:
    def test_line_strong(self):
        assert classify_gacs(LINE).verdict is Classification.STRONG

    def test_cosymplectic_strong(self):
        assert classify_gacs(COSYM).verdict is Classification.STRONG

    def test_sasakian_strong(self):
        assert classify_gacs(SASAKI).verdict is Classification.STRONG

    def test_contact_not_strong(self):
        r = classify_gacs(CONTACT)
        assert not r.verdict.strong
        # derived: L- = xi + E10 closes, L+ = eta + E10 does not
        assert r.verdict is Classification.MINUS_ONLY
        assert not r.plus.involutive and r.plus.residual == d("y") * -1
        text = r.report("T").to_text()
        assert "integrable, not strong (L- involutive)" in text

    def test_twisted(self):
        r = classify_gacs(from_almost_contact(twisted()))
        assert r.verdict.strong


@pytest.mark.parametrize("s", ALL_GACS, ids=lambda s: s.origin)
def test_kernel_pairing(s):
    assert kernel_pairing_report(s).passed


@pytest.mark.parametrize("s", ALL_GACS[:4], ids=lambda s: s.origin)
def test_containment_criterion_both_directions(s):
    plus, minus, _ = e10_containments(s)
    strong = classify_gacs(s).verdict.strong
    if strong:
        assert plus and minus
    if plus and minus:
        assert strong


def test_strong_without_containment():
    # strong, yet the Reeb field moves E10 along E+; the containment
    # criterion is sufficient but not necessary
    s = from_almost_contact(twisted())
    assert classify_gacs(s).verdict.strong
    plus, minus, witness = e10_containments(s)
    assert not plus and not minus
    x_10 = D("x") - D("y") * I - D("z") * Scalar.coord("z")
    assert courant_bracket(s.e_plus, x_10) == D("z") * -1
    assert "leaves E10" in witness
