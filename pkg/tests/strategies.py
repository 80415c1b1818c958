"""Shared hypothesis strategies."""
from hypothesis import strategies as st

from tancone.polyalg import Polynomial, Ring
from tancone.semigroup import NumericalSemigroup

RING3 = Ring(("x", "y", "z"))


def monomials(n=3, maxexp=3):
    return st.tuples(*[st.integers(0, maxexp)] * n)


@st.composite
def polynomials(draw, ring=RING3, max_terms=4, maxexp=3):
    terms = draw(st.dictionaries(monomials(ring.nvars, maxexp), st.integers(-5, 5).filter(bool),
                                 max_size=max_terms))
    return Polynomial(ring, terms)


@st.composite
def binomials(draw, ring=RING3, maxexp=3):
    a = draw(monomials(ring.nvars, maxexp))
    b = draw(monomials(ring.nvars, maxexp))
    c = draw(st.sampled_from([1, -1, 2]))
    return Polynomial(ring, {a: 1}) - Polynomial(ring, {b: c})


@st.composite
def semigroups(draw, min_r=2, max_r=4, max_gen=30):
    r = draw(st.integers(min_r, max_r))
    gens = draw(st.lists(st.integers(2, max_gen), min_size=r, max_size=r, unique=True))
    return NumericalSemigroup.from_generators(gens)


def gcd_one_semigroups(**kw):
    return semigroups(**kw).filter(lambda H: H.gcd == 1)
