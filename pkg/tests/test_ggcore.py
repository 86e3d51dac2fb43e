import pytest
from hypothesis import given

from ggeom.calculus import Chart, OneForm, TwoForm, VectorField, d_function
from ggeom.catalog import cosymplectic, darboux_contact, darboux_sasakian, standard_complex, symplectic_plane
from ggeom.ggcore import (
    GEndo,
    GVector,
    PreconditionError,
    check_gacs_axioms,
    check_gcs_axioms,
    contact_rho,
    courant_bracket,
    endo_adjoint,
    endo_apply,
    endo_compose,
    frame,
    from_almost_contact,
    from_complex,
    from_contact,
    from_symplectic,
    neutral_pairing,
    reeb_field,
    tensor_term,
)
from ggeom.products import standard_real_acs, standard_real_gacs
from ggeom.symbolic import ONE, Scalar

from strategies import R3, sections

HALF = Scalar.const(1) / 2
X, Y = Scalar.coord("x"), Scalar.coord("y")
R2 = Chart(("x", "y"))
R1 = Chart(("t",))


def D(c, chart=R3):
    return GVector.of(VectorField.basis(chart, c))


def d(c, chart=R3):
    return GVector.of(OneForm.basis(chart, c))


def all_gacs():
    return [
        from_almost_contact(cosymplectic()),
        from_almost_contact(darboux_sasakian()),
        darboux_contact(),
        from_almost_contact(standard_real_acs()),
        standard_real_gacs(),
    ]


def all_gcs():
    return [standard_complex(), symplectic_plane(), symplectic_plane(coefficient=1 + X * X)]


class TestPairing:
    def test_examples(self):
        assert neutral_pairing(D("x"), d("x")) == HALF
        assert neutral_pairing(D("x") + d("x"), D("x") + d("x")) == ONE
        assert neutral_pairing(d("t", R1), D("t", R1)) == HALF


class TestCourant:
    def test_coordinate_fields(self):
        assert courant_bracket(D("x"), D("y")).is_zero()

    def test_half_dy(self):
        b = courant_bracket(D("x", R2), d("x", R2) * Y)
        assert b == d("y", R2) * -HALF
        assert str(b) == "-1/2*dy"

    def test_darboux_kernel_pair(self):
        eta = d("z") - d("x") * Y
        assert courant_bracket(eta, D("z")).is_zero()


class TestEndomorphisms:
    def test_adjoint_of_tangent_block(self):
        A = [[X, ONE], [0, Y]]
        e = GEndo.from_blocks(R2, A=A)
        adj = endo_adjoint(e)
        assert adj.block("B") == [[X, 0], [ONE, Y]]
        for name in ("A", "pi", "sigma"):
            assert all(not v for row in adj.block(name) for v in row)

    def test_adjoint_defining_identity(self):
        e = from_contact(OneForm(R3, [-Y, 0, 1])).phi + GEndo.from_blocks(R3, A=[[X, 1, 0], [0, 0, Y], [1, 0, 0]])
        adj = endo_adjoint(e)
        for a in frame(R3):
            for b in frame(R3):
                assert neutral_pairing(endo_apply(e, a), b) == neutral_pairing(a, endo_apply(adj, b))

    def test_symplectic_square(self):
        j = symplectic_plane().j
        assert endo_compose(j, j) == -GEndo.identity(R2)

    def test_compose_associative(self):
        a = standard_complex().j
        b = symplectic_plane(coefficient=1 + X * X).j
        c = GEndo.from_blocks(R2, A=[[X, 0], [1, Y]])
        assert endo_compose(endo_compose(a, b), c) == endo_compose(a, endo_compose(b, c))

    def test_tensor_term(self):
        S = from_almost_contact(cosymplectic())
        sym = tensor_term(S.e_plus, S.e_minus) + tensor_term(S.e_minus, S.e_plus)
        assert endo_apply(sym, S.e_plus) == S.e_plus
        # (xi (x) eta)(X + alpha) = eta(X) xi
        v = D("x") + D("z") * Y + d("y")
        assert endo_apply(tensor_term(S.e_plus, S.e_minus), v) == D("z") * Y
        assert endo_apply(tensor_term(S.e_plus, S.e_minus), d("x")).is_zero()


class TestAxioms:
    @pytest.mark.parametrize("s", all_gacs(), ids=lambda s: s.origin)
    def test_gacs_pass(self, s):
        assert check_gacs_axioms(s).passed

    @pytest.mark.parametrize("j", all_gcs(), ids=lambda j: j.origin)
    def test_gcs_pass(self, j):
        assert check_gcs_axioms(j).passed

    def test_equal_sections_fail_pairing(self):
        S = from_almost_contact(cosymplectic())
        r = check_gacs_axioms(S.phi, D("z"), D("z"))
        assert not r.passed
        assert r.get("eq3_pair").verdict == "fail"
        assert "0" in r.get("eq3_pair").witness

    def test_odd_chart_not_gcs(self):
        r = check_gcs_axioms(GEndo.zero(R3))
        assert r.get("even").verdict == "fail"


class TestConstructors:
    def test_complex_blocks(self):
        j = standard_complex().j
        assert all(not v for name in ("pi", "sigma") for row in j.block(name) for v in row)
        assert endo_apply(j, D("x", R2)) == D("y", R2) * -1

    def test_complex_rejects_identity(self):
        with pytest.raises(PreconditionError):
            from_complex([[1, 0], [0, 1]], R2)

    def test_symplectic_image(self):
        j = symplectic_plane().j
        assert endo_apply(j, D("x", R2)) == d("y", R2)

    def test_symplectic_r4(self):
        R4 = Chart(("x", "y", "z", "w"))
        w = TwoForm.from_upper(R4, {(0, 1): 1, (2, 3): 1})
        assert check_gcs_axioms(from_symplectic(w)).passed

    def test_symplectic_generic_locus(self):
        j = from_symplectic(TwoForm.from_upper(R2, {(0, 1): X}))
        assert check_gcs_axioms(j).passed
        # J(dy) = -omega^-1(dy) = -Dx / x
        assert endo_apply(j.j, d("y", R2)) == D("x", R2) * (-ONE / X)

    def test_symplectic_degenerate(self):
        with pytest.raises(PreconditionError):
            from_symplectic(TwoForm.zero(R2))

    def test_almost_contact_failure_has_witness(self):
        from ggeom.catalog import classical_from_columns

        bad = classical_from_columns(R3, [[0, 1, 0], [-1, 0, 0], [0, 0, 0]], [0, 0, 1], [-Y, 0, 1])
        with pytest.raises(PreconditionError) as exc:
            from_almost_contact(bad)
        assert exc.value.report.get("eta_phi").witness

    def test_contact_darboux(self):
        S = darboux_contact()
        assert S.e_minus == D("z")
        assert S.e_plus == d("z") - d("x") * Y
        assert S.phi.twoform() == TwoForm.from_upper(R3, {(0, 1): 1})

    def test_reeb(self):
        assert reeb_field(OneForm(R3, [-Y, 0, 1])) == VectorField.basis(R3, "z")

    def test_contact_rejects_closed_form(self):
        with pytest.raises(PreconditionError):
            from_contact(OneForm.basis(R3, "z"))

    def test_contact_rejects_even_chart(self):
        with pytest.raises(PreconditionError):
            from_contact(OneForm.basis(R2, "x"))

    def test_rho_dy(self):
        rho = contact_rho(OneForm(R3, [-Y, 0, 1]))
        assert [row[1] for row in rho] == [-ONE, 0, 0]


# properties ----------------------------------------------------------------


@given(sections(), sections())
def test_courant_antisymmetric(a, b):
    assert (courant_bracket(a, b) + courant_bracket(b, a)).is_zero()


@given(sections(), sections())
def test_anomaly_identity(a, b):
    f = X * X + Y - 3
    lhs = courant_bracket(a, b * f)
    rhs = courant_bracket(a, b) * f + b * a.vec.apply(f) - GVector.of(d_function(f, R3)) * neutral_pairing(a, b)
    assert (lhs - rhs).is_zero()


@pytest.mark.parametrize("s", all_gacs(), ids=lambda s: s.origin)
def test_gacs_frame_identities(s):
    fr = frame(s.chart)
    for a in fr:
        pa = endo_apply(s.phi, a)
        assert neutral_pairing(s.e_plus, pa).is_zero()
        assert neutral_pairing(s.e_minus, pa).is_zero()
        for b in fr:
            assert (neutral_pairing(pa, b) + neutral_pairing(a, endo_apply(s.phi, b))).is_zero()
    assert endo_apply(s.phi, s.e_plus).is_zero()
    assert endo_apply(s.phi, s.e_minus).is_zero()
    eq2 = endo_compose(s.phi, s.phi) - (
        -GEndo.identity(s.chart) + tensor_term(s.e_plus, s.e_minus) + tensor_term(s.e_minus, s.e_plus)
    )
    assert eq2.is_zero()


@pytest.mark.parametrize("j", all_gcs(), ids=lambda j: j.origin)
def test_gcs_preserves_pairing(j):
    fr = frame(j.chart)
    for a in fr:
        for b in fr:
            assert neutral_pairing(endo_apply(j.j, a), endo_apply(j.j, b)) == neutral_pairing(a, b)
