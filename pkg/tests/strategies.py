"""Hypothesis strategies shared across test modules."""
from fractions import Fraction

from hypothesis import strategies as st

from fictio.infinitesimal import LCNumber

small_ints = st.integers(-12, 12)
rationals = st.builds(Fraction, st.integers(-50, 50), st.integers(1, 12))
nonzero_rationals = rationals.filter(lambda r: r != 0)


@st.composite
def lc_numbers(draw, min_valuation=-2, max_valuation=3, nonzero=False, order=8):
    """Exact truncated series; the leading coefficient is never zero."""
    if not nonzero and draw(st.integers(0, 19)) == 0:
        return LCNumber.zero(order=order)
    v = draw(st.integers(min_valuation, max_valuation))
    lead = draw(nonzero_rationals)
    tail = draw(st.lists(rationals, min_size=order - 1, max_size=order - 1))
    return LCNumber.from_terms([lead, *tail], start=v, order=order)


def finite_lc(**kw):
    return lc_numbers(min_valuation=0, **kw)
