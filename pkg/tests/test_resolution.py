from collections import Counter
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from strategies import RING3, monomials
from tancone.groebner import ideal_equal
from tancone.polyalg import Grading, Polynomial, Ring, mono_divides, mono_lcm
from tancone.resolution import (
    FreeModuleMap,
    gss_betti,
    gss_table,
    minimal_free_resolution,
    syzygies,
)
from tancone.semigroup import NumericalSemigroup
from tancone.tangentcone import tangent_cone
from tancone.toric import toric_ideal

x, y, z = RING3.gens()


def _rank(rows):
    rows = [[Fraction(v) for v in r] for r in rows]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                c = rows[i][col] / rows[rank][col]
                rows[i] = [a - c * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def reduced_homology(faces):
    """Ranks of reduced homology of a simplicial complex given by all its faces (incl. the empty one)."""
    by_dim = {}
    for f in faces:
        by_dim.setdefault(len(f) - 1, []).append(f)
    top = max(by_dim) if by_dim else -2
    index = {d: {f: i for i, f in enumerate(sorted(fs))} for d, fs in by_dim.items()}

    def boundary_rank(d):
        if d not in index or d - 1 not in index:
            return 0
        rows = []
        for f in index[d]:
            row = [0] * len(index[d - 1])
            for k in range(len(f)):
                row[index[d - 1][f[:k] + f[k + 1:]]] = (-1) ** k
            rows.append(row)
        return _rank(rows)
    return {d: len(index[d]) - boundary_rank(d) - boundary_rank(d + 1) for d in range(-1, top + 1)}


def betti_by_koszul_complexes(monos, n):
    """Graded Betti numbers of S/I for a monomial ideal, one simplicial complex per lcm."""
    lcms = set()
    for k in range(1, len(monos) + 1):
        for sub in combinations(monos, k):
            m = sub[0]
            for s in sub[1:]:
                m = mono_lcm(m, s)
            lcms.add(m)
    graded = Counter({(0, 0): 1})
    for b in lcms:
        supp = [i for i in range(n) if b[i]]
        faces = []
        for k in range(len(supp) + 1):
            for F in combinations(supp, k):
                c = tuple(b[i] - (1 if i in F else 0) for i in range(n))
                if any(mono_divides(g, c) for g in monos):
                    faces.append(F)
        for d, h in reduced_homology(faces).items():
            if h:
                graded[(d + 2, sum(b))] += h
    total = Counter()
    for (i, _), v in graded.items():
        total[i] += v
    return [total[i] for i in range(max(total) + 1)], graded


def test_koszul_and_twisted_cubic():
    assert minimal_free_resolution([x, y, z]).total == [1, 3, 3, 1]
    R = Ring(("a", "b", "c", "d"))
    a, b, c, d = R.gens()
    cubic = [b * b - a * c, b * c - a * d, c * c - b * d]
    t = minimal_free_resolution(cubic)
    assert t.total == [1, 3, 2]
    assert t.graded[2] == {3: 2}
    assert t.composition_zero and t.minimal


@settings(max_examples=30)
@given(st.lists(monomials(3, 3).filter(any), min_size=1, max_size=5))
def test_monomial_betti_against_koszul_complexes(monos):
    gens = [Polynomial(RING3, {m: 1}) for m in monos]
    table = minimal_free_resolution(gens, keep_maps=True)
    mins = [m for m in set(monos) if not any(o != m and mono_divides(o, m) for o in monos)]
    total, graded = betti_by_koszul_complexes(sorted(mins), 3)
    assert table.total == total
    for i, row in table.graded.items():
        for deg, v in row.items():
            assert graded[(i, deg)] == v
    for f, g in zip(table.maps, table.maps[1:]):
        assert f.compose(g).is_zero()
        assert not f.has_unit_entry()


def test_weighted_resolution_of_semigroup_ring():
    H = NumericalSemigroup.from_generators([3, 5, 7])
    t = minimal_free_resolution(toric_ideal(H), Grading(H.generators))
    assert t.total == [1, 3, 2]
    star = tangent_cone(H).star_gens
    assert minimal_free_resolution(star).total == [1, 3, 2]


def test_gss_formula_values():
    # rational normal curve case (a1 = r): Eagon-Northcott numbers i*C(r-1, i+1)
    assert gss_table(4, 4) == [1, 6, 8, 3]
    for r, a1, d in [(3, 4, 1), (4, 5, 1), (4, 7, 3), (5, 6, 1), (5, 8, 3)]:
        H = NumericalSemigroup.from_generators([a1 + k * d for k in range(r)])
        if H.mu != r:
            continue
        t = minimal_free_resolution(toric_ideal(H), Grading(H.generators))
        assert t.total == gss_table(r, a1, d)
        assert [gss_betti(r, a1, i, d) for i in range(1, r)] == t.total[1:]


def test_syzygies_of_a_row():
    M = FreeModuleMap.from_ideal([x, y, z])
    K = syzygies(M)
    assert K.ncols == 3
    assert M.compose(K).is_zero()


def test_input_validation():
    with pytest.raises(ValueError):
        minimal_free_resolution([x + y ** 2])
    with pytest.raises(ValueError):
        minimal_free_resolution([Ring.standard(9).gen(0)])
    with pytest.raises(ValueError):
        minimal_free_resolution([])
