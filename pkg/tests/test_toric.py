from itertools import product

import pytest
from hypothesis import given

from strategies import gcd_one_semigroups, semigroups
from tancone.groebner import groebner, ideal_equal
from tancone.polyalg import MonomialOrder, mono_divides
from tancone.semigroup import NumericalSemigroup
from tancone.toric import herzog_data, herzog_generators, ring_for, toric_ideal, vanishes_on_curve


def weighted_standard_monomial_count(I, a, top):
    """Number of standard monomials in each H-degree up to top; K[H] needs 1 on H, 0 off H."""
    order = MonomialOrder.weighted(a, MonomialOrder.degrevlex(len(a)))
    lts = groebner(I, order).leading_monomials() if I else []
    counts = [0] * (top + 1)
    bounds = [range(top // ai + 1) for ai in a]
    for m in product(*bounds):
        h = sum(e * ai for e, ai in zip(m, a))
        if h <= top and not any(mono_divides(lt, m) for lt in lts):
            counts[h] += 1
    return counts


def test_known_ideals():
    x, y, z = ring_for(3).gens()
    I = toric_ideal(NumericalSemigroup.from_generators([4, 5, 11]))
    assert ideal_equal(I, [y ** 3 - x * z, x ** 4 - y * z, x ** 3 * y ** 2 - z ** 2])
    I = toric_ideal(NumericalSemigroup.from_generators([3, 5, 7]))
    assert len(I) == 3
    # complete intersection
    I = toric_ideal(NumericalSemigroup.from_generators([4, 6, 9]))
    assert len(I) == 2
    assert toric_ideal(NumericalSemigroup.from_generators([7])) == []
    assert len(toric_ideal(NumericalSemigroup.from_generators([3, 5]))) == 1


def test_variable_names():
    assert ring_for(4).names == ("x", "y", "z", "t")
    assert ring_for(5).names == ("x1", "x2", "x3", "x4", "x5")


def test_gcd_is_divided_out():
    assert toric_ideal(NumericalSemigroup.from_generators([6, 10, 14])) == \
        toric_ideal(NumericalSemigroup.from_generators([3, 5, 7]))


@given(gcd_one_semigroups(max_r=4, max_gen=14))
def test_toric_ideal_presents_semigroup_ring(H):
    I = toric_ideal(H)
    assert all(vanishes_on_curve(f, H) for f in I)
    a = H.generators
    top = 2 * a[-1] + a[0]
    counts = weighted_standard_monomial_count(I, a, top)
    assert counts == [1 if H.contains(h) else 0 for h in range(top + 1)]


@given(semigroups(min_r=3, max_r=3, max_gen=40))
def test_three_generated_have_at_most_three_relations(H):
    if H.mu != 3:
        return
    I = toric_ideal(H)
    assert 2 <= len(I) <= 3
    d = herzog_data(H)
    assert ideal_equal(herzog_generators(d), I)


def test_herzog_witness():
    d = herzog_data(NumericalSemigroup.from_generators([3, 5, 7]))
    assert d.c == (4, 2, 2)
    assert d.r[0] == (0, 1, 1)
    with pytest.raises(ValueError):
        herzog_data(NumericalSemigroup.from_generators([3, 5]))
