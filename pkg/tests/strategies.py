from fractions import Fraction

from hypothesis import strategies as st

from marginal_resolvent.exactalg import MultiPoly, TruncatedSeries

small_fractions = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
positive_fractions = st.builds(Fraction, st.integers(1, 9), st.integers(1, 4))


@st.composite
def polys(draw, names=("x", "y", "c"), max_terms=4, max_exp=3):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        e = tuple(draw(st.integers(0, max_exp)) for _ in names)
        terms[e] = draw(small_fractions)
    return MultiPoly(names, terms)


@st.composite
def univariate_in(draw, var="S01", params=("x",), max_deg=3):
    """Polynomial in ``var`` of positive degree with small coefficients in ``params``."""
    deg = draw(st.integers(1, max_deg))
    coeffs = [draw(polys(names=params, max_terms=2, max_exp=2)) for _ in range(deg)]
    lead = draw(polys(names=params, max_terms=2, max_exp=2).filter(lambda p: not p.is_zero()))
    return MultiPoly.from_coefficients(coeffs + [lead], var)


@st.composite
def series(draw, order=5, unit=False):
    coeffs = [draw(polys(max_terms=2, max_exp=2)) for _ in range(order + 1)]
    if unit:
        coeffs[0] = MultiPoly.const(1)
    return TruncatedSeries(order, tuple(coeffs))


@st.composite
def permutations_of(draw, n):
    return tuple(draw(st.permutations(list(range(1, n + 1)))))
