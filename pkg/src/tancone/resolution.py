"""Graded minimal free resolutions and Betti numbers.

The resolution is built level by level with Schreyer's algorithm: the
syzygies of a Groebner basis come from the division records of its
S-pairs and are again a Groebner basis for the induced order, so no Buchberger
run is needed past level one.  The (usually non-minimal) result is then
minimalized by cancelling scalar entries.
"""
from __future__ import annotations

import heapq
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from math import comb
from operator import add, le, mul, sub
from typing import Optional, Sequence

from .groebner import Budget, BudgetExceeded, DEFAULT_BUDGET, groebner, membership
from .polyalg import Grading, MonomialOrder, Polynomial, Ring, inverse

MAX_RESOLUTION_VARS = 8


class ResolutionError(RuntimeError):
    """A resolution failed one of its internal consistency checks."""


# --- sparse polynomial helpers on raw dicts ---------------------------------------

def _padd(a: dict, b: dict, scale=1) -> dict:
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, 0) + scale * c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _pmul(a: dict, b: dict) -> dict:
    out: dict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(map(add, m1, m2))
            v = out.get(m, 0) + c1 * c2
            if v:
                out[m] = v
            else:
                del out[m]
    return out


# --- free module maps -------------------------------------------------------------

@dataclass
class FreeModuleMap:
    """Matrix of polynomials between graded free modules.

    ``matrix[i][j]`` is the coefficient of target generator i in the image of
    source generator j.
    """

    ring: Ring
    matrix: list
    source_degrees: list
    target_degrees: list
    grading: Optional[Grading] = None

    def __post_init__(self):
        self.grading = self.grading or Grading.standard(self.ring.nvars)
        if len(self.matrix) != len(self.target_degrees):
            raise ValueError("row count does not match target degrees")
        for row in self.matrix:
            if len(row) != len(self.source_degrees):
                raise ValueError("column count does not match source degrees")

    @property
    def nrows(self) -> int:
        return len(self.target_degrees)

    @property
    def ncols(self) -> int:
        return len(self.source_degrees)

    def column(self, j: int) -> list:
        return [row[j] for row in self.matrix]

    @classmethod
    def from_columns(cls, ring, columns, source_degrees, target_degrees, grading=None):
        rows = [[col[i] for col in columns] for i in range(len(target_degrees))]
        return cls(ring, rows, list(source_degrees), list(target_degrees), grading)

    @classmethod
    def from_ideal(cls, gens: Sequence[Polynomial], grading: Optional[Grading] = None) -> "FreeModuleMap":
        gens = [g for g in gens if not g.is_zero()]
        ring = gens[0].ring
        grading = grading or Grading.standard(ring.nvars)
        degs = []
        for g in gens:
            d = g.weighted_degree(grading)
            if d is None:
                raise ValueError(f"{g} is not homogeneous for {grading.weights}")
            degs.append(d)
        return cls(ring, [list(gens)], degs, [0], grading)

    def is_homogeneous(self) -> bool:
        for i, row in enumerate(self.matrix):
            for j, f in enumerate(row):
                if f.is_zero():
                    continue
                if f.weighted_degree(self.grading) != self.source_degrees[j] - self.target_degrees[i]:
                    return False
        return True

    def compose(self, other: "FreeModuleMap") -> "FreeModuleMap":
        """self o other."""
        if other.nrows != self.ncols:
            raise ValueError("maps are not composable")
        zero = self.ring.zero()
        rows = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = zero
                for k in range(self.ncols):
                    a, b = self.matrix[i][k], other.matrix[k][j]
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            rows.append(row)
        return FreeModuleMap(self.ring, rows, other.source_degrees, self.target_degrees, self.grading)

    def is_zero(self) -> bool:
        return all(f.is_zero() for row in self.matrix for f in row)

    def has_unit_entry(self) -> bool:
        return any(f.is_constant() and not f.is_zero() for row in self.matrix for f in row)


# --- Betti tables ----------------------------------------------------------------

@dataclass
class BettiTable:
    """Betti numbers of S/I: ``total[i]`` = beta_i, ``graded[i]`` = {degree: count}."""

    total: list
    graded: dict
    composition_zero: bool = True
    minimal: bool = True
    maps: list = field(default_factory=list, repr=False, compare=False)

    @property
    def projdim(self) -> int:
        return len(self.total) - 1

    def __getitem__(self, i):
        return self.total[i] if i < len(self.total) else 0

    def to_json(self) -> dict:
        return {
            "total": list(self.total),
            "graded": {str(i): {str(d): c for d, c in sorted(g.items())} for i, g in sorted(self.graded.items())},
        }

    @classmethod
    def from_json(cls, data: dict) -> "BettiTable":
        graded = {int(i): {int(d): c for d, c in g.items()} for i, g in data["graded"].items()}
        return cls(list(data["total"]), graded)

    def __eq__(self, other):
        if not isinstance(other, BettiTable):
            return NotImplemented
        return self.total == other.total and self.graded == other.graded


# --- Schreyer frames ---------------------------------------------------------------

class _Frame:
    """Non-minimal free resolution from Schreyer's algorithm.

    Level k elements are vectors in F_{k-1}, stored as dicts
    ``{(component, monomial): coeff}``.  Basis element p of F_k carries the
    base-ring monomial M_p of its induced leading term and a tie-break chain;
    the induced order compares (rank(m * M_p), chain_p).
    """

    def __init__(self, basis: Sequence[Polynomial], order: MonomialOrder, weights, budget: Budget):
        self.n = basis[0].ring.nvars
        self.rank = order.rank
        self.lexrank = MonomialOrder.lex(self.n).rank
        self.w = weights
        self.budget = budget
        self.pairs = 0
        zero = (0,) * self.n
        # level 0: F_0 = S
        self.M = [[zero]]
        self.chain = [[()]]
        self.degrees = [[0]]
        self.levels = []  # levels[k-1] = columns of d_k
        gens = sorted(basis, key=lambda g: self.lexrank(g.leading_monomial(order)))
        self.elems = [{(0, m): c for m, c in g.monic(order).raw.items()} for g in gens]

    def _key(self, k):
        M, chain, rank = self.M[k], self.chain[k], self.rank

        def key(t):
            comp, mono = t
            return (rank(tuple(map(add, mono, M[comp]))), chain[comp])
        return key

    def build(self, max_length: int) -> None:
        k = 0
        while self.elems:
            if k >= max_length:
                raise ResolutionError(f"resolution longer than {max_length}")
            key = self._key(k)
            elems = self.elems
            leads = [min(v, key=key) for v in elems]
            Mk = self.M[k]
            self.M.append([tuple(map(add, m, Mk[c])) for c, m in leads])
            self.chain.append([self.chain[k][c] + (p,) for p, (c, _) in enumerate(leads)])
            self.degrees.append([self.degrees[k][c] + sum(map(mul, self.w, m)) for c, m in leads])
            self.levels.append(elems)
            self.elems = self._syzygies(elems, leads, key)
            k += 1

    def _reduce_record(self, f: dict, elems, leads, by_comp, key) -> dict:
        """Divide f by the level elements; returns quotients {(p, mono): coeff}; remainder must vanish."""
        heap = [(key(t), t) for t in f]
        heapq.heapify(heap)
        quot: dict = {}
        while heap:
            _, t = heapq.heappop(heap)
            c = f.pop(t, None)
            if c is None:
                continue
            comp, mono = t
            for p in by_comp.get(comp, ()):
                lm = leads[p][1]
                if all(map(le, lm, mono)):
                    break
            else:
                raise ResolutionError("S-pair did not reduce to zero; input is not a Groebner basis")
            q = tuple(map(sub, mono, lm))
            quot[(p, q)] = quot.get((p, q), 0) + c
            for (gc, gm), gcoef in elems[p].items():
                if (gc, gm) == leads[p]:
                    continue
                nt = (gc, tuple(map(add, gm, q)))
                old = f.get(nt)
                if old is None:
                    f[nt] = -c * gcoef
                    heapq.heappush(heap, (key(nt), nt))
                else:
                    v = old - c * gcoef
                    if v:
                        f[nt] = v
                    else:
                        del f[nt]
        return quot

    def _syzygies(self, elems, leads, key) -> list:
        by_comp = defaultdict(list)
        for p, (c, _) in enumerate(leads):
            by_comp[c].append(p)
        out = []
        maxp = self.budget.max_pairs
        for comp, ps in by_comp.items():
            for idx, p in enumerate(ps):
                mp = leads[p][1]
                cands = []
                for q in ps[idx + 1:]:
                    nq = tuple(max(b - a, 0) for a, b in zip(mp, leads[q][1]))
                    cands.append((nq, q))
                kept = []
                for i, (nq, q) in enumerate(cands):
                    dominated = False
                    for j, (nr, _) in enumerate(cands):
                        if j != i and all(map(le, nr, nq)) and (nr != nq or j < i):
                            dominated = True
                            break
                    if not dominated:
                        kept.append((nq, q))
                for nq, q in kept:
                    self.pairs += 1
                    if maxp is not None and self.pairs > maxp:
                        raise BudgetExceeded(f"more than {maxp} syzygy pairs")
                    mq = leads[q][1]
                    L = tuple(map(max, mp, mq))
                    uq = tuple(map(sub, L, mq))
                    s: dict = {}
                    for (c, m), v in elems[p].items():
                        t = (c, tuple(map(add, m, nq)))
                        s[t] = s.get(t, 0) + v
                    for (c, m), v in elems[q].items():
                        t = (c, tuple(map(add, m, uq)))
                        nv = s.get(t, 0) - v
                        if nv:
                            s[t] = nv
                        else:
                            s.pop(t, None)
                    tau = {(p, nq): 1, (q, uq): -1}
                    for t, v in self._reduce_record(s, elems, leads, by_comp, key).items():
                        nv = tau.get(t, 0) - v
                        if nv:
                            tau[t] = nv
                        else:
                            tau.pop(t, None)
                    out.append(((p, self.lexrank(nq)), tau))
        out.sort(key=lambda t: t[0])
        return [tau for _, tau in out]

    def matrices(self) -> list:
        """d_k as {col: {row: poly-dict}}, with degree lists per level."""
        mats = []
        for elems in self.levels:
            cols = {}
            for j, v in enumerate(elems):
                col: dict = defaultdict(dict)
                for (c, m), coef in v.items():
                    col[c][m] = coef
                cols[j] = dict(col)
            mats.append(cols)
        return mats


# --- minimalization -----------------------------------------------------------------

def _unit(entry: dict, zero):
    if len(entry) == 1:
        c = entry.get(zero)
        if c:
            return c
    return None


def _minimalize(mats: list, degrees: list, zero) -> tuple:
    """Cancel scalar entries; mats[k-1] is d_k as {col: {row: poly}}."""
    L = len(mats)
    changed = True
    while changed:
        changed = False
        for k in range(L):
            cols = mats[k]
            found = None
            for j in sorted(cols):
                for i, ent in cols[j].items():
                    u = _unit(ent, zero)
                    if u is not None:
                        found = (i, j, u)
                        break
                if found:
                    break
            if not found:
                continue
            i, j, u = found
            pivot = cols.pop(j)
            inv = inverse(u)
            for jj, col in cols.items():
                a = col.get(i)
                if not a:
                    continue
                f = {m: c * inv for m, c in a.items()}
                for r, ent in pivot.items():
                    nv = _padd(col.get(r, {}), _pmul(f, ent), -1)
                    if nv:
                        col[r] = nv
                    else:
                        col.pop(r, None)
            # rows of d_{k+1} indexed by F_k basis; drop row j
            if k + 1 < L:
                for col in mats[k + 1].values():
                    col.pop(j, None)
            # columns of d_{k-1} indexed by F_{k-1} basis; drop column i
            if k >= 1:
                mats[k - 1].pop(i, None)
            degrees[k + 1].pop(j, None)
            degrees[k].pop(i, None)
            changed = True
    return mats, degrees


def _composition_zero(mats: list) -> bool:
    for k in range(len(mats) - 1):
        upper, lower = mats[k + 1], mats[k]
        for col in upper.values():
            acc: dict = {}
            for j, ent in col.items():
                for r, e2 in lower[j].items():
                    acc[r] = _padd(acc.get(r, {}), _pmul(ent, e2))
            if any(acc.values()):
                return False
    return True


def _has_units(mats: list, zero) -> bool:
    return any(_unit(ent, zero) is not None for cols in mats for col in cols.values() for ent in col.values())


def _to_free_maps(ring, mats, degrees, grading) -> list:
    out = []
    for k, cols in enumerate(mats):
        rows_ids = sorted(degrees[k])
        col_ids = sorted(cols)
        rindex = {r: i for i, r in enumerate(rows_ids)}
        matrix = [[ring.zero() for _ in col_ids] for _ in rows_ids]
        for jpos, j in enumerate(col_ids):
            for r, ent in cols[j].items():
                matrix[rindex[r]][jpos] = Polynomial._wrap(ring, ent)
        out.append(FreeModuleMap(ring, matrix, [degrees[k + 1][j] for j in col_ids],
                                 [degrees[k][r] for r in rows_ids], grading))
    return out


def minimal_free_resolution(gens: Sequence[Polynomial], grading: Optional[Grading] = None,
                            budget: Optional[Budget] = None, keep_maps: bool = False,
                            order: Optional[MonomialOrder] = None) -> BettiTable:
    """Betti table of S/I for I generated by ``grading``-homogeneous ``gens``."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("the zero ideal has the trivial resolution; nothing to compute")
    ring = gens[0].ring
    n = ring.nvars
    if n > MAX_RESOLUTION_VARS:
        raise ValueError(f"resolutions are capped at {MAX_RESOLUTION_VARS} variables, got {n}")
    grading = grading or Grading.standard(n)
    for g in gens:
        if g.weighted_degree(grading) is None:
            raise ValueError(f"{g} is not homogeneous for weights {grading.weights}")
    budget = budget or DEFAULT_BUDGET
    order = order or MonomialOrder.degrevlex(n)
    G = groebner(gens, order, budget).elements
    if any(g.is_constant() for g in G):
        raise ValueError("the unit ideal has no graded resolution")
    frame = _Frame(G, order, grading.weights, budget)
    frame.build(max_length=n + 1)
    mats = frame.matrices()
    degrees = [dict(enumerate(d)) for d in frame.degrees]
    zero = (0,) * n
    mats, degrees = _minimalize(mats, degrees, zero)
    comp_ok = _composition_zero(mats)
    minimal = not _has_units(mats, zero)
    if not comp_ok:
        raise ResolutionError("consecutive maps do not compose to zero")
    if not minimal:
        raise ResolutionError("a scalar entry survived minimalization")
    total = [len(d) for d in degrees]
    while len(total) > 1 and total[-1] == 0:
        total.pop()
    graded = {i: dict(sorted(Counter(degrees[i].values()).items())) for i in range(len(total))}
    maps = _to_free_maps(ring, mats[:len(total) - 1], degrees, grading) if keep_maps else []
    table = BettiTable(total, graded, comp_ok, minimal, maps)
    if sum((-1) ** i * b for i, b in enumerate(total)) != 0:
        raise ResolutionError(f"alternating sum of {total} is not zero")
    if len(total) - 1 > n:
        raise ResolutionError(f"projective dimension {len(total) - 1} exceeds {n}")
    return table


def betti_numbers(gens: Sequence[Polynomial], grading: Optional[Grading] = None,
                  budget: Optional[Budget] = None) -> list:
    return minimal_free_resolution(gens, grading, budget).total


# --- kernels of arbitrary maps --------------------------------------------------------

def _encode_ring(ring: Ring, m: int, n: int) -> Ring:
    return Ring(tuple(f"_e{i}" for i in range(m)) + tuple(f"_E{j}" for j in range(n)) + ring.names)


def syzygies(M: FreeModuleMap, budget: Optional[Budget] = None) -> FreeModuleMap:
    """Minimal generators of ker(M) as the columns of a map into M's source.

    Module elements are encoded as linear forms in new variables e (target)
    and E (source); all quadrics in e, E are added so only the linear part
    carries information.  Eliminating e leaves the E-linear syzygies, which
    are then pruned to a minimal set by graded Nakayama.
    """
    ring, grading = M.ring, M.grading
    m, n, nv = M.nrows, M.ncols, ring.nvars
    big = _encode_ring(ring, m, n)
    pos = list(range(m + n, m + n + nv))
    extra = m + n
    gens = []
    for j in range(n):
        f = big.gen(m + j)
        for i in range(m):
            if M.matrix[i][j]:
                f = f + big.gen(i) * M.matrix[i][j].map_ring(big, pos)
        gens.append(f)
    quad = []
    for a in range(extra):
        for b in range(a, extra):
            e = [0] * big.nvars
            e[a] += 1
            e[b] += 1
            quad.append(big.monomial(e))
    order = MonomialOrder.block(m, big.nvars) if m else MonomialOrder.degrevlex(big.nvars)
    G = groebner(gens + quad, order, budget).elements
    syz = []
    for g in G:
        if any(any(mm[:m]) for mm in g.raw):
            continue
        if not all(sum(mm[m:m + n]) == 1 for mm in g.raw):
            continue
        syz.append(g)

    def vec(g):
        col = [ring.zero() for _ in range(n)]
        for mm, c in g.raw.items():
            j = next(idx for idx in range(n) if mm[m + idx])
            col[j] = col[j] + Polynomial._wrap(ring, {mm[extra:]: c})
        return col

    def deg(col):
        for j, f in enumerate(col):
            if f:
                return M.source_degrees[j] + f.weighted_degree(grading)
        raise ValueError("zero syzygy")

    cols = [vec(g) for g in syz]
    cols = [c for c in cols if any(c)]
    order_idx = sorted(range(len(cols)), key=lambda i: deg(cols[i]))
    Equad = [q for q in quad if all(not any(mm[:m]) for mm in q.raw)]
    kept_enc, kept = [], []
    for i in order_idx:
        enc = _encode_col(cols[i], big, m, pos)
        if kept_enc and membership(enc, kept_enc + Equad, budget=budget):
            continue
        kept_enc.append(enc)
        kept.append(cols[i])
    degs = [deg(c) for c in kept]
    return FreeModuleMap.from_columns(ring, kept, degs, list(M.source_degrees), grading)


def _encode_col(col, big, m, pos):
    f = big.zero()
    for j, p in enumerate(col):
        if p:
            f = f + big.gen(m + j) * p.map_ring(big, pos)
    return f


# --- closed forms -----------------------------------------------------------------------

def gss_betti(r: int, a1: int, i: int, d: int = 1) -> int:
    """beta_i(K[H]) for H generated by the arithmetic sequence a1, a1+d, ..., a1+(r-1)d."""
    if r < 2:
        raise ValueError("need r >= 2")
    if not 1 <= i <= r - 1:
        raise ValueError(f"index {i} outside 1..{r - 1}")
    from math import gcd
    g = gcd(a1, d)
    a = a1 // g
    b = (a - 1) % (r - 1) + 1
    if i <= r - b:
        return i * comb(r - 1, i + 1) + (r - b - i + 1) * comb(r - 1, i - 1)
    return i * comb(r - 1, i + 1) + (i - r + b) * comb(r - 1, i)


def gss_table(r: int, a1: int, d: int = 1) -> list:
    return [1] + [gss_betti(r, a1, i, d) for i in range(1, r)]
