"""Defining ideals of semigroup rings K[H] = K[x_1..x_r]/I_H."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .groebner import Budget, buchberger, minimal_generators
from .polyalg import Grading, MonomialOrder, Polynomial, Ring
from .semigroup import NumericalSemigroup

_LETTERS = ("x", "y", "z", "t")


def ring_for(r: int) -> Ring:
    """x, y, z, t for up to four generators, x1..xr beyond that."""
    if r <= len(_LETTERS):
        return Ring(_LETTERS[:r])
    return Ring.standard(r)


def elimination_order(weights) -> MonomialOrder:
    """Order on (t, x_1..x_r) eliminating t, valid for ideals homogeneous in ``weights``.

    Terms are compared by weighted degree first and then by t-degree, so in a
    homogeneous element a t-free leading term forces the whole element to be
    t-free.  Far cheaper than a pure block order on these binomial ideals.
    """
    n = len(weights)
    tie = MonomialOrder.block(1, n, front=MonomialOrder.lex(1), back=MonomialOrder.degrevlex(n - 1))
    return MonomialOrder.weighted(weights, tie)


def _canonical_binomial(f: Polynomial) -> Polynomial:
    return f.monic(MonomialOrder.degrevlex(f.ring.nvars))


def toric_ideal(H: NumericalSemigroup, ring: Optional[Ring] = None, minimal: bool = True,
                budget: Optional[Budget] = None) -> list:
    """Binomial generators of I_H = ker(x_i -> t^{a_i}).

    With ``minimal`` the list is a minimal generating set (H-graded Nakayama),
    otherwise the reduced Groebner basis of the elimination is returned.
    """
    Hn = H.normalized()
    a = Hn.generators
    r = len(a)
    ring = ring or ring_for(r)
    if ring.nvars != r:
        raise ValueError(f"ring has {ring.nvars} variables, semigroup has {r} generators")
    if r == 1:
        return []
    big = ring.with_front("_t")
    weights = (1,) + a
    gens = []
    for i, ai in enumerate(a):
        e = [0] * (r + 1)
        e[i + 1] = 1
        tt = [0] * (r + 1)
        tt[0] = ai
        gens.append(Polynomial(big, {tuple(e): 1, tuple(tt): -1}))
    G = buchberger(gens, elimination_order(weights), budget, Grading(weights))
    out = []
    for g in G.elements:
        if any(m[0] for m in g.raw):
            continue
        out.append(Polynomial._wrap(ring, {m[1:]: c for m, c in g.raw.items()}))
    if minimal:
        out = minimal_generators(out, Grading(a), budget)
    out = [_canonical_binomial(f) for f in out]
    grading = Grading(a)
    out.sort(key=lambda f: (f.weighted_degree(grading), str(f)))
    for f in out:
        if f.specialize(a):
            raise AssertionError(f"{f} does not vanish on t^{a}")
    return out


def vanishes_on_curve(f: Polynomial, H: NumericalSemigroup) -> bool:
    return not f.specialize(H.generators)


@dataclass(frozen=True)
class HerzogData:
    """Least multiples c_i n_i in the semigroup of the other two generators,
    with witness exponents c_i n_i = sum_j r_ij n_j."""

    n: tuple
    c: tuple
    r: tuple  # 3x3, diagonal zero

    def check(self) -> None:
        for i in range(3):
            if self.c[i] * self.n[i] != sum(self.r[i][j] * self.n[j] for j in range(3)):
                raise AssertionError(f"row {i} of {self} does not balance")
        if all(self.r[i][j] > 0 for i in range(3) for j in range(3) if i != j):
            for i in range(3):
                if self.c[i] != sum(self.r[j][i] for j in range(3) if j != i):
                    raise AssertionError(f"column sum identity fails in {self}")


def herzog_data(H: NumericalSemigroup) -> HerzogData:
    if H.mu != 3:
        raise ValueError(f"herzog_data needs three generators, {H} has {H.mu}")
    n = H.normalized().generators
    cs, rows = [], []
    for i in range(3):
        j, k = [x for x in range(3) if x != i]
        c = 1
        while True:
            target = c * n[i]
            # lexicographically smallest (r_ij, r_ik)
            wit = next(((p, (target - p * n[j]) // n[k]) for p in range(target // n[j] + 1)
                        if (target - p * n[j]) % n[k] == 0), None)
            if wit is not None:
                break
            c += 1
        row = [0, 0, 0]
        row[j], row[k] = wit
        cs.append(c)
        rows.append(tuple(row))
    d = HerzogData(n, tuple(cs), tuple(rows))
    d.check()
    return d


def herzog_generators(d: HerzogData, ring: Optional[Ring] = None) -> list:
    """f_i = x_i^{c_i} - x_j^{r_ij} x_k^{r_ik}; duplicates up to sign are dropped."""
    ring = ring or ring_for(3)
    out = []
    for i in range(3):
        lead = [0, 0, 0]
        lead[i] = d.c[i]
        f = Polynomial(ring, {tuple(lead): 1, tuple(d.r[i]): -1})
        if not any(f == g or f == -g for g in out):
            out.append(f)
    return out
