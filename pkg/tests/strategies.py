"""Hypothesis strategies for scalars, fields and sections."""

from fractions import Fraction

from hypothesis import strategies as st

from ggeom.calculus import Chart, OneForm, VectorField
from ggeom.ggcore import GVector
from ggeom.symbolic import GaussRat, Poly, Scalar

R3 = Chart(("x", "y", "z"))

coefficients = st.builds(
    GaussRat,
    st.fractions(min_value=-5, max_value=5, max_denominator=4),
    st.sampled_from([Fraction(0), Fraction(0), Fraction(1), Fraction(-2)]),
)


@st.composite
def polys(draw, coords=("x", "y", "z"), max_terms=3, max_exp=2):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        mono = tuple(
            (c, e) for c, e in ((c, draw(st.integers(0, max_exp))) for c in coords) if e
        )
        c = draw(coefficients)
        if c:
            terms[mono] = terms.get(mono, GaussRat(0)) + c
    return Poly({m: c for m, c in terms.items() if c})


@st.composite
def scalars(draw, coords=("x", "y", "z"), rational=True):
    num = Scalar.coerce(draw(polys(coords)))
    if rational and draw(st.booleans()):
        den = Scalar.coerce(draw(polys(coords, 2, 1))) + Scalar.const(draw(st.integers(3, 6)))
        if not den.is_zero():
            return num / den
    return num


def vector_fields(chart=R3, rational=False):
    return st.lists(scalars(chart.coords, rational), min_size=chart.dim, max_size=chart.dim).map(
        lambda cs: VectorField(chart, cs)
    )


def one_forms(chart=R3, rational=False):
    return st.lists(scalars(chart.coords, rational), min_size=chart.dim, max_size=chart.dim).map(
        lambda cs: OneForm(chart, cs)
    )


def sections(chart=R3):
    return st.builds(GVector, vector_fields(chart), one_forms(chart))
