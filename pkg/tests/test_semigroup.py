import pickle

import pytest
from hypothesis import given, strategies as st

from strategies import gcd_one_semigroups, semigroups
from tancone.semigroup import NumericalSemigroup, parse_semigroup


def brute_members(gens, top):
    ok = [False] * (top + 1)
    ok[0] = True
    for n in range(1, top + 1):
        ok[n] = any(a <= n and ok[n - a] for a in gens)
    return ok


def brute_tangent_hilbert(gens, dmax):
    """HF(n) = #{h : max number of generators summing to h is n}, by explicit sumsets."""
    levels = [{0}]
    for _ in range(dmax + gens[-1] // gens[0] * dmax + 1):
        levels.append({s + a for s in levels[-1] for a in gens})
    out = []
    for n in range(dmax + 1):
        later = set().union(*levels[n + 1:])
        out.append(len(levels[n] - later))
    return out


def test_minimalization_and_gcd():
    H = NumericalSemigroup.from_generators([4, 6, 8])
    assert H.generators == (4, 6) and H.gcd == 2
    assert H.normalized().generators == (2, 3)
    assert NumericalSemigroup.from_generators([5, 10, 6, 9, 5]).generators == (5, 6, 9)
    with pytest.raises(ValueError):
        NumericalSemigroup((3, 6))
    with pytest.raises(ValueError):
        NumericalSemigroup.from_generators([0, -2])


def test_apery_frobenius_symmetric():
    H = NumericalSemigroup.from_generators([5, 6, 9])
    assert H.apery_set(5) == [0, 6, 12, 18, 9]
    assert H.frobenius_number() == 13
    assert H.is_symmetric()
    T = NumericalSemigroup.from_generators([3, 4, 5])
    assert T.frobenius_number() == 2 and not T.is_symmetric()
    assert NumericalSemigroup.from_generators([1]).frobenius_number() == -1
    with pytest.raises(ValueError):
        NumericalSemigroup.from_generators([4, 6]).frobenius_number()


def test_invariants_and_shift():
    H = NumericalSemigroup.from_generators([3, 5, 7])
    assert (H.mu, H.width, H.multiplicity) == (3, 4, 3)
    assert H.shift(2).generators == (5, 7, 9)
    assert H.shift(0) == H
    assert NumericalSemigroup.from_generators([3, 7]).interval_completion().generators == (3, 4, 5)
    assert NumericalSemigroup.from_generators([4, 5, 6, 7]).is_interval()


def test_parse_forms():
    for text in ["3,5,7", "<3, 5, 7>", "[3 5 7]", '{"generators": [3, 5, 7]}']:
        assert parse_semigroup(text).generators == (3, 5, 7)
    H = NumericalSemigroup.from_generators([3, 5, 7])
    assert str(H) == "<3,5,7>"
    assert NumericalSemigroup.from_json(H.to_json()) == H
    assert pickle.loads(pickle.dumps(H)) == H
    with pytest.raises(ValueError):
        parse_semigroup("3,a")


def test_tangent_hilbert_examples():
    assert NumericalSemigroup.from_generators([4, 5, 11]).tangent_hilbert_oracle(6) == [1, 3, 3, 4, 4, 4, 4]
    assert NumericalSemigroup.from_generators([2, 3]).tangent_hilbert_oracle(4) == [1, 2, 2, 2, 2]


@given(gcd_one_semigroups(max_gen=20))
def test_membership_frobenius_against_brute_force(H):
    F = H.frobenius_number()
    ok = brute_members(H.generators, F + H.multiplicity + 5)
    assert all(H.contains(n) == ok[n] for n in range(len(ok)))
    assert F == -1 or not ok[F]
    assert all(ok[F + 1:])
    ap = H.apery_set(H.multiplicity)
    for r, w in enumerate(ap):
        assert w % H.multiplicity == r and ok[w]
        assert not any(ok[v] for v in range(r, w, H.multiplicity))
    sym = all(ok[s] != ok[F - s] for s in range(F + 1))
    assert H.is_symmetric() == sym
    assert len(H.gaps()) == sum(1 for n in range(F + 1) if not ok[n])


@given(gcd_one_semigroups(max_r=3, max_gen=12), st.integers(0, 4))
def test_tangent_hilbert_against_sumsets(H, dmax):
    assert H.tangent_hilbert_oracle(dmax) == brute_tangent_hilbert(H.generators, dmax)


@given(semigroups(), st.integers(0, 20))
def test_shift_and_completion_properties(H, k):
    Hk = H.shift(k)
    assert Hk.mu <= H.mu
    assert all(Hk.contains(a + k) for a in H.generators)
    Ht = H.interval_completion()
    assert Ht.multiplicity == H.multiplicity
    assert Ht.mu >= H.mu
    assert all(Ht.contains(a) for a in H.generators)


@given(gcd_one_semigroups())
def test_multiplicity_is_stable_hilbert_value(H):
    # HF(n) = e for n >= e - 1, since the reduction number is at most e - 1
    hf = H.tangent_hilbert_oracle(H.multiplicity)
    assert hf[-1] == H.multiplicity
