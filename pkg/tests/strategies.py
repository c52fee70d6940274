"""Shared hypothesis strategies."""
from fractions import Fraction

from hypothesis import strategies as st

from combinach.norms import FinVec
from combinach.ordinal import ZERO, Ordinal

rationals = st.builds(Fraction, st.integers(-12, 12), st.integers(1, 6))
nonneg_rationals = st.builds(Fraction, st.integers(0, 12), st.integers(1, 6))


def finvecs(lo=1, hi=16, max_size=10):
    return st.dictionaries(st.integers(lo, hi - 1), rationals, max_size=max_size).map(FinVec)


def finite_sets(lo=1, hi=16, max_size=8):
    return st.frozensets(st.integers(lo, hi - 1), max_size=max_size).map(lambda s: tuple(sorted(s)))


@st.composite
def ordinals(draw, depth=2, max_terms=3, max_coef=3):
    """Ordinals of nesting depth <= depth with small coefficients."""
    if depth <= 1:
        n = draw(st.integers(0, max_coef))
        return Ordinal.of(n)
    exps = draw(st.lists(ordinals(depth - 1, max_terms, max_coef), max_size=max_terms, unique=True))
    exps = sorted(exps, reverse=True)
    terms = tuple((e, draw(st.integers(1, max_coef))) for e in exps)
    return Ordinal(terms) if terms else ZERO
