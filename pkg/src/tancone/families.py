"""Explicit semigroup families with closed-form tangent cone data, and a validator
that runs the generic pipeline against them."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, gcd
from typing import Optional

from .groebner import Budget, ideal_equal
from .polyalg import Grading, Polynomial, Ring
from .resolution import gss_table, minimal_free_resolution
from .semigroup import NumericalSemigroup
from .tangentcone import is_standard_basis, tangent_cone
from .toric import ring_for


@dataclass
class FamilyExpectation:
    name: str
    params: dict
    semigroup: NumericalSemigroup
    expected_mu_star: int
    expected_mu_I: Optional[int] = None
    expected_star_gens: Optional[list] = None
    expected_star_degrees: Optional[list] = None
    expected_cm: Optional[bool] = None
    expected_betti: Optional[list] = None
    expected_frobenius: Optional[int] = None
    expected_symmetric: Optional[bool] = None
    ideal_gens: Optional[list] = None  # explicit generators of I_H, if known
    standard_basis: Optional[list] = None  # explicit standard basis, if known

    @property
    def ring(self) -> Ring:
        return ring_for(self.semigroup.mu)


def _mono(ring: Ring, **exps) -> Polynomial:
    e = [0] * ring.nvars
    for name, k in exps.items():
        e[ring.index(name)] = k
    return ring.monomial(e)


def sally(e: int) -> FamilyExpectation:
    """S_e = <e, ..., 2e-1> without e+2 and e+3."""
    if e < 5:
        raise ValueError("sally needs e >= 5")
    H = NumericalSemigroup.from_generators(i for i in range(e, 2 * e) if i not in (e + 2, e + 3))
    m = comb(e - 2, 2)
    return FamilyExpectation(
        "sally", {"e": e}, H,
        expected_mu_star=m,
        expected_star_degrees=[2] * (m - 1) + [4],
        expected_frobenius=2 * e + 3,
        expected_symmetric=True,
    )


def bresinsky_semigroup(h: int) -> NumericalSemigroup:
    return NumericalSemigroup.from_generators(
        [(2 * h - 1) * 2 * h, (2 * h - 1) * (2 * h + 1), 2 * h * (2 * h + 1), 2 * h * (2 * h + 1) + 2 * h - 1])


def bresinsky_basis(h: int) -> dict:
    """The sets f_i, g_1, g_2, u_j in K[x,y,z,t]."""
    R = ring_for(4)
    x, y, z, t = R.gens()
    f = [z ** (i - 1) * t ** (2 * h - i) - y ** (2 * h - i) * x ** (i + 1) for i in range(1, 2 * h + 1)]
    u = [x ** (2 * h + 1 - j) * z ** j - y ** (2 * h - j) * t ** j for j in range(0, 2 * h - 1)]
    return {"f": f, "g1": z ** (2 * h - 1) - y ** (2 * h), "g2": x * t - y * z, "u": u}


def bresinsky(h: int) -> FamilyExpectation:
    if h < 2:
        raise ValueError("bresinsky needs h >= 2")
    R = ring_for(4)
    x, y, z, t = R.gens()
    parts = bresinsky_basis(h)
    B = parts["f"] + [parts["g2"]] + parts["u"]
    star = [z ** i * t ** (2 * h - 1 - i) for i in range(2 * h)]
    star.append(x * t - y * z)
    star += [y ** (2 * h - j) * t ** j for j in range(2 * h - 1)]
    return FamilyExpectation(
        "bresinsky", {"h": h}, bresinsky_semigroup(h),
        expected_mu_star=4 * h, expected_mu_I=4 * h,
        expected_star_gens=star, expected_cm=True,
        ideal_gens=B, standard_basis=B,
    )


def shibuta_recursion(a: int) -> dict:
    """Generators f_0, g (and p) of I_{H_a} plus the recursive standard basis f_0..f_k.

    The recursion f_i = x f_{i-1} - y^e z^{k-i} g uses e = 3i-2, 3i-1, 3i-3 for
    a = 3k+1, 3k+2, 3k respectively; that is the exponent that cancels the
    x-term of f_{i-1}.
    """
    if a <= 3:
        raise ValueError("shibuta family needs a > 3")
    R = ring_for(3)
    x, y, z = R.gens()
    k, res = divmod(a, 3)
    g = x * z - y ** 3
    if res == 1:
        f0 = y * z ** k - x ** (2 * k + 2)
        p = z ** (k + 1) - x ** (2 * k + 1) * y ** 2
        shift, closed = -2, (lambda i: y ** (3 * i + 1) * z ** (k - i) - x ** (2 * k + i + 2))
    elif res == 2:
        f0 = y ** 2 * z ** k - x ** (2 * k + 3)
        p = z ** (k + 1) - x ** (2 * k + 2) * y
        shift, closed = -1, (lambda i: y ** (3 * i + 2) * z ** (k - i) - x ** (2 * k + i + 3))
    else:
        f0 = z ** k - x ** (2 * k + 1)
        p = None
        shift, closed = -3, (lambda i: y ** (3 * i) * z ** (k - i) - x ** (2 * k + i + 1))
    fs = [f0]
    for i in range(1, k + 1):
        fs.append(x * fs[-1] - y ** (3 * i + shift) * z ** (k - i) * g)
    return {"k": k, "residue": res, "g": g, "p": p, "f": fs, "closed": [closed(i) for i in range(k + 1)]}


def shibuta_variant(a: int) -> FamilyExpectation:
    """H_a = <a, a+1, 2a+3>."""
    data = shibuta_recursion(a)
    R = ring_for(3)
    x, y, z = R.gens()
    k, res = data["k"], data["residue"]
    if res == 1:
        star = [x * z, z ** (k + 1)] + [y ** (3 * i + 1) * z ** (k - i) for i in range(k + 1)]
    elif res == 2:
        star = [x * z, z ** (k + 1)] + [y ** (3 * i + 2) * z ** (k - i) for i in range(k + 1)]
    else:
        star = [x * z] + [y ** (3 * i) * z ** (k - i) for i in range(k + 1)]
    gens = [data["g"], data["f"][0]] + ([data["p"]] if data["p"] is not None else [])
    sb = [data["g"]] + ([data["p"]] if data["p"] is not None else []) + data["f"]
    return FamilyExpectation(
        "shibuta", {"a": a}, NumericalSemigroup.from_generators([a, a + 1, 2 * a + 3]),
        expected_mu_star=(a - 1) // 3 + 3,
        expected_mu_I=len(gens),
        expected_star_gens=star,
        # xz lies in I* while z does not, so x is a zero divisor
        expected_cm=False,
        ideal_gens=gens, standard_basis=sb,
    )


def frobenius_family(a: int, b: int) -> FamilyExpectation:
    """H_{a,b} = <a, b, ab - a - b>."""
    a, b = min(a, b), max(a, b)
    if a <= 3 or gcd(a, b) != 1 or a == b:
        raise ValueError("frobenius family needs coprime a, b > 3")
    R = ring_for(3)
    x, y, z = R.gens()
    return FamilyExpectation(
        "frobenius", {"a": a, "b": b}, NumericalSemigroup.from_generators([a, b, a * b - a - b]),
        expected_mu_star=4, expected_mu_I=3,
        expected_star_gens=[y * z, x * z, z ** 2, y ** a],
        expected_frobenius=None,
        ideal_gens=[x ** (b - 1) - y * z, y ** (a - 1) - x * z, z ** 2 - x ** (b - 2) * y ** (a - 2)],
    )


def patil_generators(a1: int, d: int, r: int, ring: Optional[Ring] = None) -> list:
    """Minimal generators of I_H for H = <a1, a1+d, ..., a1+(r-1)d>."""
    ring = ring or ring_for(r)
    X = ring.gens()
    a, b = divmod(a1 - 1, r - 1)
    b += 1
    out = []
    for i in range(1, r - 1):
        for j in range(i + 1, r):
            out.append(X[i - 1] * X[j] - X[i] * X[j - 1])
    for i in range(1, r - b + 1):
        out.append(X[r - 1] ** a * X[b + i - 1] - X[0] ** (a + d) * X[i - 1])
    return out


def arithmetic_family(a1: int, d: int, r: int) -> FamilyExpectation:
    if r < 3:
        raise ValueError("arithmetic family needs r >= 3")
    if gcd(a1, d) != 1:
        raise ValueError(f"gcd({a1},{d}) != 1")
    seq = [a1 + i * d for i in range(r)]
    H = NumericalSemigroup.from_generators(seq)
    if list(H.generators) != seq:
        raise ValueError(f"{seq} is not a minimal generating sequence")
    b = (a1 - 1) % (r - 1) + 1
    betti = gss_table(r, a1, d)
    return FamilyExpectation(
        "arithmetic", {"a1": a1, "d": d, "r": r}, H,
        expected_mu_star=betti[1],
        expected_mu_I=comb(r - 1, 2) + (r - b),
        expected_betti=betti,
        ideal_gens=patil_generators(a1, d, r),
    )


def interval_equality_family(w: int, k: int) -> NumericalSemigroup:
    """<kw+1, kw+2, ..., (k+1)w+1>."""
    if w < 1 or k < 1:
        raise ValueError("w and k must be positive")
    return NumericalSemigroup.from_generators(range(k * w + 1, (k + 1) * w + 2))


def recognize_interval_equality(H: NumericalSemigroup) -> Optional[tuple]:
    """(w, k) if H = <kw+1, ..., (k+1)w+1> with w, k >= 1, else None."""
    w = H.width
    if w < 1 or not H.is_interval():
        return None
    k, rem = divmod(H.multiplicity - 1, w)
    if rem or k < 1:
        return None
    return (w, k)


FAMILIES = {
    "sally": (sally, ("e",)),
    "bresinsky": (bresinsky, ("h",)),
    "shibuta": (shibuta_variant, ("a",)),
    "frobenius": (frobenius_family, ("a", "b")),
    "arithmetic": (arithmetic_family, ("a1", "d", "r")),
}


def make_family(name: str, **params) -> FamilyExpectation:
    try:
        ctor, keys = FAMILIES[name]
    except KeyError:
        raise ValueError(f"unknown family {name!r}; choose from {sorted(FAMILIES)}") from None
    missing = [k for k in keys if k not in params]
    if missing:
        raise ValueError(f"family {name} needs parameters {missing}")
    return ctor(*(int(params[k]) for k in keys))


# --- validation ----------------------------------------------------------------

@dataclass
class Check:
    name: str
    expected: object
    observed: object
    ok: bool


@dataclass
class FamilyReport:
    expectation: FamilyExpectation
    checks: list = field(default_factory=list)
    result: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name, expected, observed, ok=None):
        self.checks.append(Check(name, expected, observed, expected == observed if ok is None else ok))

    def to_json(self) -> dict:
        def show(v):
            if isinstance(v, list):
                return [show(x) for x in v]
            return str(v) if isinstance(v, Polynomial) else v
        return {
            "family": self.expectation.name,
            "params": self.expectation.params,
            "semigroup": list(self.expectation.semigroup.generators),
            "ok": self.ok,
            "checks": [{"name": c.name, "expected": show(c.expected), "observed": show(c.observed), "ok": c.ok}
                       for c in self.checks],
            **self.result,
        }


def validate(exp: FamilyExpectation, betti: bool = False, budget: Optional[Budget] = None) -> FamilyReport:
    """Run the generic pipeline on the family instance and compare every expected field."""
    H = exp.semigroup
    rep = FamilyReport(exp)
    tc = tangent_cone(H, budget=budget)
    rep.result = tc.to_json()
    star = tc.star_gens
    rep.add("mu_I_star", exp.expected_mu_star, tc.mu_I_star)
    if exp.expected_mu_I is not None:
        rep.add("mu_I", exp.expected_mu_I, tc.mu_I)
    if exp.expected_star_gens is not None:
        rep.add("I_star", exp.expected_star_gens, star, ideal_equal(exp.expected_star_gens, star, budget=budget))
    if exp.expected_star_degrees is not None:
        rep.add("I_star_degrees", sorted(exp.expected_star_degrees), sorted(f.total_degree() for f in star))
    if exp.expected_cm is not None:
        rep.add("cm", exp.expected_cm, tc.cm)
    if exp.expected_frobenius is not None:
        rep.add("frobenius", exp.expected_frobenius, H.frobenius_number())
    if exp.expected_symmetric is not None:
        rep.add("symmetric", exp.expected_symmetric, H.is_symmetric())
    if exp.ideal_gens is not None:
        rep.add("ideal", exp.ideal_gens, tc.ideal, ideal_equal(exp.ideal_gens, tc.ideal, budget=budget))
    if exp.standard_basis is not None:
        rep.add("standard_basis", True, is_standard_basis(exp.standard_basis, tc.ideal, budget))
    if exp.name == "shibuta":
        data = shibuta_recursion(exp.params["a"])
        rep.add("recursion_closed_form", data["closed"], data["f"])
    if exp.name == "bresinsky":
        parts = bresinsky_basis(exp.params["h"])
        rep.add("f_2h_plus_u_0", parts["g1"], parts["f"][-1] + parts["u"][0])
    if betti or exp.expected_betti is not None:
        b_I = minimal_free_resolution(tc.ideal, Grading(H.normalized().generators), budget).total
        b_star = minimal_free_resolution(star, None, budget).total
        rep.result["betti_I"] = b_I
        rep.result["betti_I_star"] = b_star
        if exp.expected_betti is not None:
            rep.add("betti_I", exp.expected_betti, b_I)
            rep.add("betti_I_star", exp.expected_betti, b_star)
    return rep
