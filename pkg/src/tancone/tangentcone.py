"""Initial ideals I*, standard bases and the Cohen-Macaulay test for tangent cones.

Standard bases are obtained by homogenizing with a fresh variable s, saturating
by s, and taking a Groebner basis under an order in which, within a fixed
degree, higher powers of s win.  Dehomogenizing gives a standard basis whose
initial forms generate I*.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .groebner import (
    Budget,
    buchberger,
    hilbert_function,
    ideal_equal,
    ideal_quotient,
    membership,
    minimal_generators,
    saturate_by_variable,
    variable_is_regular,
)
from .polyalg import Grading, MonomialOrder, Polynomial, Ring
from .semigroup import NumericalSemigroup
from .toric import ring_for, toric_ideal


class ConsistencyError(RuntimeError):
    """Two independent computations of the same quantity disagree."""


def tangent_order(nvars: int, strict_lex: bool = False) -> MonomialOrder:
    """Order on (s, x_1..x_n): degree, then s-degree, then degrevlex (or pure lex)."""
    if strict_lex:
        return MonomialOrder.lex(nvars + 1)
    tie = MonomialOrder.block(1, nvars + 1, front=MonomialOrder.lex(1),
                              back=MonomialOrder.degrevlex(nvars))
    return MonomialOrder.weighted((1,) * (nvars + 1), tie)


def _canon(f: Polynomial) -> Polynomial:
    return f.monic(MonomialOrder.degrevlex(f.ring.nvars))


def _sort_key(f: Polynomial):
    return (f.total_degree(), str(f))


@dataclass(frozen=True)
class StandardBasisResult:
    standard_basis: tuple
    initial_ideal_gens: tuple
    mu_star: int
    minimal_star_gens: tuple
    saturation_changed: bool = False

    def to_json(self) -> dict:
        return {
            "standard_basis": [str(f) for f in self.standard_basis],
            "I_star_gens": [str(f) for f in self.minimal_star_gens],
            "mu_I_star": self.mu_star,
            "saturation_changed": self.saturation_changed,
        }


def homogenize_ideal(gens: Sequence[Polynomial]) -> tuple:
    """Homogenize into the ring with s prepended; returns (ring, generators)."""
    ring = gens[0].ring
    big = ring.with_front("s")
    pos = range(1, ring.nvars + 1)
    return big, [f.map_ring(big, pos).homogenize(0) for f in gens]


def standard_basis(gens: Sequence[Polynomial], strict_lex: bool = False,
                   budget: Optional[Budget] = None) -> StandardBasisResult:
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return StandardBasisResult((), (), 0, ())
    ring = gens[0].ring
    n = ring.nvars
    if any(not any(m) for g in gens for m in g.raw):
        raise ValueError("standard_basis expects generators without constant terms")

    big, hom = homogenize_ideal(gens)
    report: dict = {}
    sat = saturate_by_variable(hom, 0, budget=budget, report=report)
    G = buchberger(sat, tangent_order(n, strict_lex), budget)
    sb = []
    for F in G.elements:
        f = Polynomial._wrap(ring, {m[1:]: c for m, c in F.raw.items()})
        if not f.is_zero() and f not in sb:
            sb.append(f)
    stars = [f.initial_form()[0] for f in sb]
    minimal = [_canon(f) for f in minimal_generators(stars, Grading.standard(n), budget)]
    minimal.sort(key=_sort_key)
    return StandardBasisResult(tuple(sb), tuple(stars), len(minimal), tuple(minimal),
                               bool(report.get("changed")))


def initial_ideal(gens: Sequence[Polynomial], budget: Optional[Budget] = None) -> list:
    return list(standard_basis(gens, budget=budget).minimal_star_gens)


def is_standard_basis(candidate: Sequence[Polynomial], gens: Sequence[Polynomial],
                      budget: Optional[Budget] = None) -> bool:
    """True iff the initial forms of ``candidate`` (a subset of I) generate I*."""
    candidate = [f for f in candidate if not f.is_zero()]
    for f in candidate:
        if not membership(f, gens, budget=budget):
            raise ValueError(f"{f} is not in the ideal")
    if not candidate:
        return not [g for g in gens if not g.is_zero()]
    target = initial_ideal(gens, budget)
    stars = [f.initial_form()[0] for f in candidate]
    return ideal_equal(stars, target, budget=budget)


def cm_by_quotient(star_gens: Sequence[Polynomial], v: int = 0, budget: Optional[Budget] = None) -> bool:
    """(I* : x_v) == I*, computed with the tag-variable ideal quotient."""
    if not star_gens:
        return True
    x = star_gens[0].ring.gen(v)
    return ideal_equal(ideal_quotient(star_gens, x, budget), star_gens, budget=budget)


def artinian_reduction_hilbert(star_gens: Sequence[Polynomial], ring: Ring, v: int = 0,
                               dmax: int = 60) -> list:
    """Hilbert function of S/(I* + x_v) up to dmax."""
    return hilbert_function(list(star_gens) + [ring.gen(v)], dmax, ring=ring)


def default_dmax(H: NumericalSemigroup, star_gens: Sequence[Polynomial]) -> int:
    top = max((f.total_degree() for f in star_gens), default=1)
    return max(2 * top, H.width + 2, 4)


@dataclass
class TangentCone:
    """Everything computed for one semigroup; see ``tangent_cone``."""

    semigroup: NumericalSemigroup
    ring: Ring
    ideal: list
    sb: StandardBasisResult
    cm: bool
    hilbert: list = field(default_factory=list)
    hilbert_dmax: int = 0

    @property
    def mu_I(self) -> int:
        return len(self.ideal)

    @property
    def mu_I_star(self) -> int:
        return self.sb.mu_star

    @property
    def star_gens(self) -> list:
        return list(self.sb.minimal_star_gens)

    def to_json(self) -> dict:
        return {
            "semigroup": list(self.semigroup.generators),
            "mu_I": self.mu_I,
            "mu_I_star": self.mu_I_star,
            "cm": self.cm,
            "I_gens": [str(f) for f in self.ideal],
            "I_star_gens": [str(f) for f in self.sb.minimal_star_gens],
            "standard_basis": [str(f) for f in self.sb.standard_basis],
            "saturation_changed": self.sb.saturation_changed,
            "hilbert": self.hilbert,
        }


def tangent_cone(H: NumericalSemigroup, strict_lex: bool = False, check_hilbert: bool = True,
                 dmax: Optional[int] = None, budget: Optional[Budget] = None) -> TangentCone:
    """Toric ideal, standard basis, I*, CM flag and the Hilbert cross-check for H."""
    Hn = H.normalized()
    ring = ring_for(Hn.mu)
    I = toric_ideal(Hn, ring, budget=budget)
    sb = standard_basis(I, strict_lex, budget) if I else StandardBasisResult((), (), 0, ())
    star = list(sb.minimal_star_gens)
    cm = variable_is_regular(star, 0, budget) if star else True
    tc = TangentCone(H, ring, I, sb, cm)
    if check_hilbert:
        d = dmax if dmax is not None else default_dmax(Hn, star)
        hf = hilbert_function(star, d, ring=ring, budget=budget)
        oracle = Hn.tangent_hilbert_oracle(d)
        if hf != oracle:
            raise ConsistencyError(f"Hilbert function of S/I* for {H} is {hf}, semigroup count gives {oracle}")
        tc.hilbert, tc.hilbert_dmax = hf, d
    return tc


def tangent_cone_is_cm(H: NumericalSemigroup, budget: Optional[Budget] = None) -> bool:
    return tangent_cone(H, check_hilbert=False, budget=budget).cm


@dataclass(frozen=True)
class MuRecord:
    mu_I: int
    mu_I_star: int
    betti_available: bool = False


def mu_and_mu_star(H: NumericalSemigroup, budget: Optional[Budget] = None) -> MuRecord:
    tc = tangent_cone(H, check_hilbert=False, budget=budget)
    return MuRecord(tc.mu_I, tc.mu_I_star, False)
