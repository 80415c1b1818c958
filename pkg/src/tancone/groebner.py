"""Buchberger engine and the ideal-theoretic services built on it."""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from math import comb
from operator import add, le, mul, sub
from typing import Iterable, Optional, Sequence

from .polyalg import (
    Grading,
    MonomialOrder,
    Polynomial,
    Ring,
    inverse,
    mono_coprime,
    mono_divides,
    mono_lcm,
)


class BudgetExceeded(RuntimeError):
    """A Groebner computation hit its configured degree or pair limit."""


@dataclass(frozen=True)
class Budget:
    max_degree: Optional[int] = None
    max_pairs: Optional[int] = 500_000


DEFAULT_BUDGET = Budget()


def set_default_budget(budget: Budget) -> None:
    global DEFAULT_BUDGET
    DEFAULT_BUDGET = budget


class _Engine:
    """Incremental Buchberger with Gebauer-Moeller pair pruning and sugar selection.

    Polynomials are dicts; basis elements are stored monic as lists of
    (monomial, coeff) sorted descending.  ``weights`` drive the sugar degree; if
    the input is homogeneous for them and the order refines them, ``run(limit)``
    yields a Groebner basis truncated at degree ``limit``.
    """

    def __init__(self, order: MonomialOrder, weights=None, budget: Optional[Budget] = None):
        self.order = order
        self.rank = order.rank
        self.w = tuple(weights) if weights is not None else (1,) * order.nvars
        self.budget = budget or DEFAULT_BUDGET
        self.polys: list = []
        self.lms: list = []
        self.sugars: list = []
        self.alive: list = []
        self.pairs: list = []  # heap of (sugar, rank(lcm), i, j, lcm)
        self.npairs = 0

    def wdeg(self, m):
        return sum(map(mul, self.w, m))

    # --- reduction
    def _divisor(self, m):
        for k in self.alive:
            if all(map(le, self.lms[k], m)):
                return k
        return None

    def reduce(self, f: dict, full: bool = True) -> dict:
        """Normal form of f (a dict, consumed) w.r.t. the alive basis."""
        rank = self.rank
        heap = [(rank(m), m) for m in f]
        heapq.heapify(heap)
        out = {}
        polys, lms = self.polys, self.lms
        while heap:
            _, m = heapq.heappop(heap)
            c = f.pop(m, None)
            if c is None:
                continue
            k = self._divisor(m)
            if k is None:
                out[m] = c
                if not full:
                    out.update(f)
                    return {mm: cc for mm, cc in out.items() if cc}
                continue
            q = tuple(map(sub, m, lms[k]))
            for gm, gc in polys[k][1:]:
                nm = tuple(map(add, gm, q))
                old = f.get(nm)
                if old is None:
                    f[nm] = -c * gc
                    heapq.heappush(heap, (rank(nm), nm))
                else:
                    v = old - c * gc
                    if v:
                        f[nm] = v
                    else:
                        del f[nm]
        return out

    # --- basis maintenance
    def _insert(self, f: dict, sugar: int) -> int:
        items = sorted(f.items(), key=lambda t: self.rank(t[0]))
        lc = items[0][1]
        if lc != 1:
            inv = inverse(lc)
            items = [(m, c * inv) for m, c in items]
        self.polys.append(items)
        self.lms.append(items[0][0])
        self.sugars.append(sugar)
        return len(self.polys) - 1

    def _pair_entry(self, i, j):
        lmi, lmj = self.lms[i], self.lms[j]
        L = mono_lcm(lmi, lmj)
        s = max(self.sugars[i] - self.wdeg(lmi), self.sugars[j] - self.wdeg(lmj)) + self.wdeg(L)
        return (s, self.rank(L), min(i, j), max(i, j), L)

    def add(self, f: dict, sugar: Optional[int] = None) -> Optional[int]:
        """Reduce f against the basis and insert the remainder (if nonzero)."""
        f = self.reduce(dict(f))
        if not f:
            return None
        if sugar is None:
            sugar = max(self.wdeg(m) for m in f)
        h = self._insert(f, sugar)
        self._update(h)
        return h

    def _update(self, h):
        lms = self.lms
        lm_h = lms[h]
        cands = [(g, mono_lcm(lm_h, lms[g])) for g in self.alive]
        kept = []
        while cands:
            g1, l1 = cands.pop()
            if mono_coprime(lm_h, lms[g1]):
                kept.append((g1, l1))
                continue
            if any(mono_divides(l2, l1) for _, l2 in cands) or any(mono_divides(l2, l1) for _, l2 in kept):
                continue
            kept.append((g1, l1))
        new_pairs = [(g, l) for g, l in kept if not mono_coprime(lm_h, lms[g])]
        # Gebauer-Moeller filter on old pairs
        old = []
        for entry in self.pairs:
            _, _, i, j, L = entry
            if mono_divides(lm_h, L):
                lih = mono_lcm(lms[i], lm_h)
                ljh = mono_lcm(lms[j], lm_h)
                if lih != L and ljh != L:
                    continue
            old.append(entry)
        for g, _ in new_pairs:
            old.append(self._pair_entry(g, h))
        heapq.heapify(old)
        self.pairs = old
        self.alive = [g for g in self.alive if not mono_divides(lm_h, lms[g])] + [h]

    def spoly(self, i, j) -> dict:
        L = mono_lcm(self.lms[i], self.lms[j])
        qi = tuple(map(sub, L, self.lms[i]))
        qj = tuple(map(sub, L, self.lms[j]))
        d: dict = {}
        for m, c in self.polys[i][1:]:
            nm = tuple(map(add, m, qi))
            d[nm] = d.get(nm, 0) + c
        for m, c in self.polys[j][1:]:
            nm = tuple(map(add, m, qj))
            v = d.get(nm, 0) - c
            if v:
                d[nm] = v
            else:
                d.pop(nm, None)
        return d

    def run(self, limit: Optional[int] = None) -> None:
        b = self.budget
        while self.pairs:
            if limit is not None and self.pairs[0][0] > limit:
                return
            s, _, i, j, L = heapq.heappop(self.pairs)
            self.npairs += 1
            if b.max_pairs is not None and self.npairs > b.max_pairs:
                raise BudgetExceeded(f"more than {b.max_pairs} S-pairs")
            if b.max_degree is not None and sum(L) > b.max_degree:
                raise BudgetExceeded(f"S-pair of degree {sum(L)} exceeds budget {b.max_degree}")
            f = self.reduce(self.spoly(i, j))
            if f:
                h = self._insert(f, s)
                self._update(h)

    def reduced_basis(self) -> list:
        """Interreduced monic basis (as dicts), sorted by leading monomial ascending."""
        idx = sorted(self.alive, key=lambda k: self.rank(self.lms[k]), reverse=True)
        out = []
        for k in idx:
            items = self.polys[k]
            lead_m, lead_c = items[0]
            tail = self.reduce(dict(items[1:]))
            tail[lead_m] = lead_c
            out.append(tail)
        return out


def _raw_gens(gens: Iterable[Polynomial]):
    gens = list(gens)
    if not gens:
        return None, []
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise ValueError("generators live in different rings")
    return ring, [dict(g.raw) for g in gens if not g.is_zero()]


def _homogeneous_for(gens_raw, weights) -> bool:
    for f in gens_raw:
        degs = {sum(map(mul, weights, m)) for m in f}
        if len(degs) > 1:
            return False
    return True


@dataclass(frozen=True)
class GroebnerBasis:
    order: MonomialOrder
    elements: tuple
    reduced: bool = True

    @property
    def ring(self) -> Ring:
        return self.elements[0].ring

    def leading_monomials(self) -> list:
        return [g.leading_monomial(self.order) for g in self.elements]

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self.elements, self.order)

    def contains(self, f: Polynomial) -> bool:
        return self.reduce(f).is_zero()

    def is_unit(self) -> bool:
        return any(g.is_constant() and not g.is_zero() for g in self.elements)

    def describe(self) -> dict:
        return {"order": self.order.describe(), "elements": [str(g) for g in self.elements]}


def _engine_with(basis: Sequence[Polynomial], order: MonomialOrder) -> _Engine:
    eng = _Engine(order)
    for g in basis:
        if g.is_zero():
            continue
        k = eng._insert(dict(g.raw), 0)
        eng.alive.append(k)
    return eng


def normal_form(f: Polynomial, G: Sequence[Polynomial], order: MonomialOrder) -> Polynomial:
    """Full remainder of f on division by G (G need not be a Groebner basis)."""
    eng = _engine_with(G, order)
    return Polynomial._wrap(f.ring, eng.reduce(dict(f.raw)))


def buchberger(
    gens: Iterable[Polynomial],
    order: MonomialOrder,
    budget: Optional[Budget] = None,
    grading: Optional[Grading] = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    ring, raw = _raw_gens(gens)
    if ring is None or not raw:
        raise ValueError("need at least one nonzero generator")
    weights = grading.weights if grading is not None else None
    eng = _Engine(order, weights, budget)
    for f in raw:
        eng.add(f)
    eng.run()
    els = tuple(Polynomial._wrap(ring, d) for d in eng.reduced_basis())
    return GroebnerBasis(order, els, True)


def is_groebner_basis(G: Sequence[Polynomial], order: MonomialOrder) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero modulo G."""
    G = [g for g in G if not g.is_zero()]
    eng = _engine_with(G, order)
    n = len(eng.polys)
    for i in range(n):
        for j in range(i + 1, n):
            if mono_coprime(eng.lms[i], eng.lms[j]):
                continue
            if eng.reduce(eng.spoly(i, j)):
                return False
    return True


def _default_order(ring: Ring) -> MonomialOrder:
    return MonomialOrder.degrevlex(ring.nvars)


def groebner(gens: Sequence[Polynomial], order: Optional[MonomialOrder] = None,
             budget: Optional[Budget] = None) -> GroebnerBasis:
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("zero ideal has no Groebner basis elements")
    order = order or _default_order(gens[0].ring)
    return buchberger(gens, order, budget)


def membership(f: Polynomial, gens: Sequence[Polynomial], order: Optional[MonomialOrder] = None,
               budget: Optional[Budget] = None) -> bool:
    if f.is_zero():
        return True
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return False
    return groebner(gens, order, budget).contains(f)


def ideal_equal(A: Sequence[Polynomial], B: Sequence[Polynomial], order: Optional[MonomialOrder] = None,
                budget: Optional[Budget] = None) -> bool:
    """Equality of ideals by mutual membership of generators."""
    A = [g for g in A if not g.is_zero()]
    B = [g for g in B if not g.is_zero()]
    if not A or not B:
        return not A and not B
    ga = groebner(A, order, budget)
    if not all(ga.contains(b) for b in B):
        return False
    gb = groebner(B, order, budget)
    return all(gb.contains(a) for a in A)


def eliminate(gens: Sequence[Polynomial], front_vars: Sequence[int], order: Optional[MonomialOrder] = None,
              budget: Optional[Budget] = None, grading: Optional[Grading] = None) -> list:
    """Generators of I intersected with the subring without ``front_vars``.

    Results live in the smaller ring (eliminated variables dropped).  The
    default order is a block order with the eliminated block in front.
    """
    gens = [g for g in gens if not g.is_zero()]
    ring = gens[0].ring
    front = list(front_vars)
    rest = [i for i in range(ring.nvars) if i not in front]
    if order is None:
        order = MonomialOrder.block(len(front), ring.nvars, priority=tuple(front + rest))
    G = buchberger(gens, order, budget, grading)
    sub_ring = ring.without(front)
    out = []
    for g in G.elements:
        if any(m[i] for m in g.raw for i in front):
            continue
        out.append(Polynomial._wrap(sub_ring, {tuple(m[i] for i in rest): c for m, c in g.raw.items()}))
    return out


def _strip_power(f: dict, v: int) -> tuple:
    k = min(m[v] for m in f)
    if not k:
        return f, False
    return {m[:v] + (m[v] - k,) + m[v + 1:]: c for m, c in f.items()}, True


def saturate_by_variable(gens: Sequence[Polynomial], v: int,
                         budget: Optional[Budget] = None, report: Optional[dict] = None) -> list:
    """Generators of (I : v^inf).

    Standard-homogeneous input uses the revlex trick: a degrevlex Groebner
    basis with v last, each element divided by its largest v-power, repeated
    to a fixpoint.  Otherwise the Rabinowitsch elimination
    (I + (1 - w v)) cap K[x] is used.
    ``report['changed']`` records whether any division happened.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    ring = gens[0].ring
    n = ring.nvars
    raw = [dict(g.raw) for g in gens]
    changed = False
    if _homogeneous_for(raw, (1,) * n):
        order = _revlex_last(n, v)
        current = gens
        while True:
            G = buchberger(current, order, budget)
            nxt, hit = [], False
            for g in G.elements:
                d, did = _strip_power(g.raw, v)
                hit |= did
                nxt.append(Polynomial._wrap(ring, d))
            if not hit:
                if report is not None:
                    report["changed"] = changed
                return list(G.elements)
            changed = True
            current = nxt
    # non-homogeneous: tag variable
    big = ring.with_front("_w")
    lift = [g.map_ring(big, range(1, n + 1)) for g in gens]
    w = big.gen(0)
    vv = big.gen(v + 1)
    out = eliminate(lift + [big.one() - w * vv], [0], budget=budget)
    if report is not None:
        report["changed"] = not ideal_equal(out, gens, budget=budget)
    return out


def _revlex_last(n: int, v: int) -> MonomialOrder:
    return MonomialOrder.degrevlex(n, priority=tuple(i for i in range(n) if i != v) + (v,))


def quotient_by_variable(gens: Sequence[Polynomial], v: int, budget: Optional[Budget] = None) -> list:
    """Generators of (I : x_v) for a standard-homogeneous ideal.

    With degrevlex and x_v last, x_v divides LT(g) iff it divides g, so
    dividing those basis elements by x_v gives a Groebner basis of the quotient.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    if not all(g.is_homogeneous() for g in gens):
        return ideal_quotient(gens, gens[0].ring.gen(v), budget)
    n = gens[0].ring.nvars
    G = buchberger(gens, _revlex_last(n, v), budget)
    out = []
    for g in G.elements:
        if all(m[v] for m in g.raw):
            g = Polynomial._wrap(g.ring, {m[:v] + (m[v] - 1,) + m[v + 1:]: c for m, c in g.raw.items()})
        out.append(g)
    return out


def variable_is_regular(gens: Sequence[Polynomial], v: int, budget: Optional[Budget] = None) -> bool:
    """True iff x_v is a nonzerodivisor on S/I (I standard-homogeneous, proper)."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return True
    n = gens[0].ring.nvars
    G = buchberger(gens, _revlex_last(n, v), budget)
    return not any(lm[v] for lm in G.leading_monomials())


def exact_divide(g: Polynomial, f: Polynomial) -> Polynomial:
    """g / f, raising if f does not divide g."""
    order = MonomialOrder.degrevlex(g.ring.nvars)
    lt = f.leading_term(order)
    inv = inverse(lt.coefficient)
    rem = dict(g.raw)
    q: dict = {}
    rank = order.rank
    frest = [(m, c) for m, c in f.raw.items() if m != lt.monomial]
    while rem:
        m = min(rem, key=rank)
        if not mono_divides(lt.monomial, m):
            raise ValueError(f"{f} does not divide {g}")
        c = rem.pop(m) * inv
        mq = tuple(map(sub, m, lt.monomial))
        q[mq] = q.get(mq, 0) + c
        for fm, fc in frest:
            nm = tuple(map(add, fm, mq))
            v = rem.get(nm, 0) - c * fc
            if v:
                rem[nm] = v
            else:
                rem.pop(nm, None)
    return Polynomial._wrap(g.ring, q)


def ideal_quotient(gens: Sequence[Polynomial], f: Polynomial, budget: Optional[Budget] = None) -> list:
    """Generators of (I : f) via I cap (f) computed with a tag variable."""
    if f.is_zero():
        raise ValueError("quotient by the zero polynomial")
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    ring = f.ring
    n = ring.nvars
    big = ring.with_front("_w")
    w = big.gen(0)
    fb = f.map_ring(big, range(1, n + 1))
    J = [w * g.map_ring(big, range(1, n + 1)) for g in gens] + [(big.one() - w) * fb]
    inter = eliminate(J, [0], budget=budget)
    return [exact_divide(h, f) for h in inter]


# --- Hilbert functions via monomial ideals -----------------------------------------

def _minimalize_monomials(monos) -> list:
    monos = sorted(set(monos), key=sum)
    out = []
    for m in monos:
        if not any(mono_divides(k, m) for k in out):
            out.append(m)
    return out


def hilbert_numerator(monos: Iterable, nvars: int, weights=None) -> dict:
    """Numerator N(t) with HS(S/M) = N(t) / prod(1 - t^{w_i}); as {degree: coeff}."""
    w = tuple(weights) if weights is not None else (1,) * nvars
    memo: dict = {}

    def deg(m):
        return sum(map(mul, w, m))

    def polymul(a, b):
        out: dict = {}
        for i, x in a.items():
            for j, y in b.items():
                out[i + j] = out.get(i + j, 0) + x * y
        return {k: v for k, v in out.items() if v}

    def rec(gens: tuple) -> dict:
        key = frozenset(gens)
        if key in memo:
            return memo[key]
        counts = [0] * nvars
        for m in gens:
            for i, e in enumerate(m):
                if e:
                    counts[i] += 1
        if all(c <= 1 for c in counts):
            res = {0: 1}
            for m in gens:
                res = polymul(res, {0: 1, deg(m): -1})
        else:
            i = max(range(nvars), key=lambda k: counts[k])
            exps = sorted(m[i] for m in gens if m[i] and any(m[j] for j in range(nvars) if j != i))
            if not exps:
                exps = sorted(m[i] for m in gens if m[i])
            e = exps[len(exps) // 2]
            p = tuple(e if k == i else 0 for k in range(nvars))
            plus = tuple(_minimalize_monomials(list(gens) + [p]))
            colon = tuple(_minimalize_monomials(tuple(max(a - b, 0) for a, b in zip(m, p)) for m in gens))
            a = rec(plus)
            b = rec(colon)
            res = dict(a)
            for k, v in b.items():
                res[k + deg(p)] = res.get(k + deg(p), 0) + v
            res = {k: v for k, v in res.items() if v}
        memo[key] = res
        return res

    return rec(tuple(_minimalize_monomials(monos)))


def hilbert_from_monomials(monos: Iterable, nvars: int, dmax: int) -> list:
    """dim_K (S/M)_n for n = 0..dmax, standard grading."""
    monos = list(monos)
    if any(not any(m) for m in monos):
        return [0] * (dmax + 1)
    num = hilbert_numerator(monos, nvars)
    out = []
    for d in range(dmax + 1):
        out.append(sum(c * comb(d - k + nvars - 1, nvars - 1) for k, c in num.items() if k <= d))
    return out


def hilbert_function(gens: Sequence[Polynomial], dmax: int, ring: Optional[Ring] = None,
                     budget: Optional[Budget] = None) -> list:
    """Hilbert function of S/I for a standard-homogeneous ideal, degrees 0..dmax."""
    gens = [g for g in gens if not g.is_zero()]
    if ring is None:
        if not gens:
            raise ValueError("need a ring for the zero ideal")
        ring = gens[0].ring
    n = ring.nvars
    if not gens:
        return [comb(d + n - 1, n - 1) for d in range(dmax + 1)]
    for g in gens:
        if not g.is_homogeneous():
            raise ValueError(f"hilbert_function needs homogeneous generators; {g} is not")
    order = MonomialOrder.degrevlex(n)
    eng = _Engine(order, None, budget)
    for g in gens:
        eng.add(dict(g.raw))
    eng.run(limit=dmax)
    lts = [eng.lms[k] for k in eng.alive]
    return hilbert_from_monomials(lts, n, dmax)


def leading_monomial_ideal(gens: Sequence[Polynomial], order: MonomialOrder, budget=None) -> list:
    G = groebner(gens, order, budget)
    return G.leading_monomials()


# --- minimal generators under a positive grading --------------------------------

def minimal_generators(gens: Sequence[Polynomial], grading: Optional[Grading] = None,
                       budget: Optional[Budget] = None) -> list:
    """Sublist of ``gens`` minimally generating the ideal (graded Nakayama).

    Generators are visited by ascending degree and kept iff they are not in the
    ideal of those already kept; the membership tests use a degree-truncated
    Groebner basis, so nothing above the current degree is ever computed.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    ring = gens[0].ring
    grading = grading or Grading.standard(ring.nvars)
    degs = []
    for g in gens:
        d = g.weighted_degree(grading)
        if d is None:
            raise ValueError(f"{g} is not homogeneous for weights {grading.weights}")
        degs.append(d)
    order = MonomialOrder.weighted(grading.weights, MonomialOrder.degrevlex(ring.nvars))
    eng = _Engine(order, grading.weights, budget)
    canon = MonomialOrder.degrevlex(ring.nvars).rank
    idx = sorted(range(len(gens)), key=lambda i: (degs[i], len(gens[i].raw),
                                                  sorted(canon(m) for m in gens[i].raw)))
    kept = []
    for i in idx:
        eng.run(limit=degs[i])
        r = eng.reduce(dict(gens[i].raw))
        if r:
            kept.append(gens[i])
            h = eng._insert(r, degs[i])
            eng._update(h)
    return kept


def reduced_groebner_strings(gens: Sequence[Polynomial], order: Optional[MonomialOrder] = None) -> list:
    """Canonical, diff-stable serialization of an ideal."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    return [str(g) for g in groebner(gens, order).elements]
