"""Hypothesis strategies for polynomials and small forms."""

from hypothesis import strategies as st

from wittlink import poly as P


def gf2(max_deg=8):
    return st.integers(min_value=0, max_value=(1 << (max_deg + 1)) - 1)


def gf2_nonzero(max_deg=8):
    return st.integers(min_value=1, max_value=(1 << (max_deg + 1)) - 1)


def gf2_even(max_deg=8):
    """Bit masks in F_2[t^2]."""
    return gf2(max_deg // 2).map(lambda m: P.gf2_subst(m, 2))


def int_poly(max_deg=6, lo=-20, hi=20):
    return st.lists(st.integers(lo, hi), max_size=max_deg + 1).map(P.trim)


def z4_poly(max_deg=6):
    return st.lists(st.integers(0, 3), max_size=max_deg + 1).map(P.trim)


def seeds():
    return st.integers(min_value=0, max_value=2**32 - 1)
