"""Sparse multivariate polynomials over Q with pluggable monomial orders.

Monomials are plain tuples of nonnegative ints (one entry per ring variable).
Polynomials are immutable wrappers around ``{monomial: coefficient}`` dicts;
the Groebner and resolution kernels work on the raw dicts directly and only
wrap results at the API boundary.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from operator import add, le, mul, sub
from typing import Callable, Iterable, Mapping, NamedTuple, Optional, Sequence, Union

Coefficient = Union[int, Fraction]
ExponentVector = tuple  # tuple[int, ...]

MAX_EXPONENT = 2**31 - 1


# --- monomial helpers ---------------------------------------------------------

def mono_mul(a, b):
    return tuple(map(add, a, b))


def mono_div(a, b):
    """a / b, assuming b divides a."""
    return tuple(map(sub, a, b))


def mono_divides(a, b):
    """True iff a divides b."""
    return all(map(le, a, b))


def mono_lcm(a, b):
    return tuple(map(max, a, b))


def mono_coprime(a, b):
    return not any(x and y for x, y in zip(a, b))


def mono_degree(a, weights=None):
    if weights is None:
        return sum(a)
    return sum(map(mul, weights, a))


def normalize_coeff(c):
    """Collapse integral Fractions back to int so printing and hashing are canonical."""
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def inverse(c):
    if c == 1 or c == -1:
        return int(c)
    return Fraction(1) / c


class Term(NamedTuple):
    coefficient: Coefficient
    monomial: ExponentVector


# --- gradings and orders --------------------------------------------------------

@dataclass(frozen=True)
class Grading:
    """Positive integer weight per variable; all-ones is the standard grading."""

    weights: tuple

    def __post_init__(self):
        if not self.weights or any(int(w) != w or w < 1 for w in self.weights):
            raise ValueError(f"grading weights must be positive integers, got {self.weights}")
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))

    @classmethod
    def standard(cls, n: int) -> "Grading":
        return cls((1,) * n)

    @property
    def nvars(self) -> int:
        return len(self.weights)

    @property
    def is_standard(self) -> bool:
        return all(w == 1 for w in self.weights)

    def degree(self, mono) -> int:
        return sum(map(mul, self.weights, mono))


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order, possibly composed from smaller ones.

    kinds:
      lex, degrevlex   -- on ``nvars`` variables
      weighted         -- compare ``weights`` dot product first, then ``tie``
      block            -- compare the first ``split`` variables with ``front``,
                          then the rest with ``back``; eliminates the front block
    ``priority`` permutes variables before comparison (highest priority first).
    """

    kind: str
    nvars: int
    weights: tuple = ()
    tie: Optional["MonomialOrder"] = None
    split: int = 0
    front: Optional["MonomialOrder"] = None
    back: Optional["MonomialOrder"] = None
    priority: Optional[tuple] = field(default=None)

    def __post_init__(self):
        if self.kind not in ("lex", "degrevlex", "weighted", "block"):
            raise ValueError(f"unknown order kind {self.kind!r}")
        if self.kind == "weighted":
            if len(self.weights) != self.nvars or any(w < 1 for w in self.weights):
                raise ValueError("weighted order needs one positive weight per variable")
            if self.tie is None or self.tie.nvars != self.nvars:
                raise ValueError("weighted order needs a tie-break order on the same variables")
        if self.kind == "block":
            if not 0 < self.split < self.nvars:
                raise ValueError("block split must leave both blocks nonempty")
            if self.front is None or self.back is None:
                raise ValueError("block order needs front and back orders")
            if self.front.nvars != self.split or self.back.nvars != self.nvars - self.split:
                raise ValueError("block sizes do not match the sub-orders")
        if self.priority is not None:
            p = tuple(self.priority)
            if sorted(p) != list(range(self.nvars)):
                raise ValueError("priority must be a permutation of the variable indices")
            object.__setattr__(self, "priority", p)

    # constructors
    @classmethod
    def lex(cls, n, priority=None):
        return cls("lex", n, priority=priority)

    @classmethod
    def degrevlex(cls, n, priority=None):
        return cls("degrevlex", n, priority=priority)

    @classmethod
    def weighted(cls, weights, tie=None, priority=None):
        weights = tuple(weights)
        if tie is None:
            tie = cls.degrevlex(len(weights))
        elif isinstance(tie, str):
            tie = cls(tie, len(weights))
        return cls("weighted", len(weights), weights=weights, tie=tie, priority=priority)

    @classmethod
    def block(cls, split, n, front="degrevlex", back="degrevlex", priority=None):
        if isinstance(front, str):
            front = cls(front, split)
        if isinstance(back, str):
            back = cls(back, n - split)
        return cls("block", n, split=split, front=front, back=back, priority=priority)

    # ranking: m1 > m2  <=>  rank(m1) < rank(m2)
    def _raw_rank(self) -> Callable:
        n = self.nvars
        if self.kind == "lex":
            def r(m):
                return tuple(-e for e in m)
        elif self.kind == "degrevlex":
            def r(m):
                return (-sum(m),) + m[:0:-1]
        elif self.kind == "weighted":
            w = self.weights
            tie = self.tie.rank

            def r(m):
                return (-sum(map(mul, w, m)),) + tie(m)
        else:
            k = self.split
            fr, br = self.front.rank, self.back.rank

            def r(m):
                return fr(m[:k]) + br(m[k:])
        if self.priority is not None and self.priority != tuple(range(n)):
            p = self.priority
            inner = r

            def r(m):  # noqa: F811
                return inner(tuple(m[i] for i in p))
        return r

    @cached_property
    def rank(self) -> Callable:
        raw = self._raw_rank()
        cache: dict = {}

        def rank(m):
            v = cache.get(m)
            if v is None:
                v = cache[m] = raw(m)
            return v

        return rank

    def greater(self, a, b) -> bool:
        return self.rank(a) < self.rank(b)

    def max_monomial(self, monos: Iterable):
        return min(monos, key=self.rank)

    def describe(self) -> str:
        if self.kind in ("lex", "degrevlex"):
            s = f"{self.kind}({self.nvars})"
        elif self.kind == "weighted":
            s = f"weighted[{','.join(map(str, self.weights))}]({self.tie.describe()})"
        else:
            s = f"block[{self.split}]({self.front.describe()},{self.back.describe()})"
        if self.priority is not None and self.priority != tuple(range(self.nvars)):
            s += "@" + ",".join(map(str, self.priority))
        return s

    def __getstate__(self):
        # the rank cache holds a closure; drop it for pickling
        d = dict(self.__dict__)
        d.pop("rank", None)
        return d

    def __setstate__(self, d):
        self.__dict__.update(d)


# --- rings ----------------------------------------------------------------------

@dataclass(frozen=True)
class Ring:
    names: tuple

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")

    @classmethod
    def standard(cls, n: int, prefix: str = "x") -> "Ring":
        return cls(tuple(f"{prefix}{i}" for i in range(1, n + 1)))

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: c})

    def monomial(self, exps, coeff=1) -> "Polynomial":
        return Polynomial(self, {tuple(exps): coeff})

    def gen(self, i: int) -> "Polynomial":
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1}, _trusted=True)

    def gens(self) -> list:
        return [self.gen(i) for i in range(self.nvars)]

    def with_front(self, name: str) -> "Ring":
        return Ring((name,) + self.names)

    def without(self, indices: Iterable[int]) -> "Ring":
        drop = set(indices)
        return Ring(tuple(n for i, n in enumerate(self.names) if i not in drop))

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)


# --- polynomials -----------------------------------------------------------------

class Polynomial:
    """Immutable sparse polynomial; terms kept as a dict monomial -> coefficient."""

    __slots__ = ("ring", "_d", "_hash")

    def __init__(self, ring: Ring, terms: Optional[Mapping] = None, _trusted: bool = False):
        self.ring = ring
        self._hash = None
        if _trusted:
            self._d = terms
            return
        d = {}
        n = ring.nvars
        for m, c in (terms or {}).items():
            m = tuple(m)
            if len(m) != n:
                raise ValueError(f"exponent vector {m} does not match ring of {n} variables")
            if any(e < 0 or e > MAX_EXPONENT for e in m):
                raise ValueError(f"exponent out of range in {m}")
            if not isinstance(c, (int, Fraction)):
                c = Fraction(c)
            c = normalize_coeff(c)
            if c:
                d[m] = c
        self._d = d

    # raw access for kernels; callers must not mutate
    @property
    def raw(self) -> dict:
        return self._d

    @classmethod
    def _wrap(cls, ring, d):
        return cls(ring, {m: normalize_coeff(c) for m, c in d.items() if c}, _trusted=True)

    def _check(self, other):
        if not isinstance(other, Polynomial):
            return Polynomial(self.ring, {(0,) * self.ring.nvars: other})
        if other.ring != self.ring:
            raise ValueError(f"ring mismatch: {self.ring.names} vs {other.ring.names}")
        return other

    def is_zero(self) -> bool:
        return not self._d

    def __bool__(self):
        return bool(self._d)

    def __len__(self):
        return len(self._d)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._d == other._d
        if isinstance(other, (int, Fraction)):
            return self._d == ({(0,) * self.ring.nvars: other} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._d.items())))
        return self._hash

    def __add__(self, other):
        other = self._check(other)
        d = dict(self._d)
        for m, c in other._d.items():
            v = d.get(m, 0) + c
            if v:
                d[m] = v
            else:
                d.pop(m, None)
        return Polynomial._wrap(self.ring, d)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self._d.items()}, _trusted=True)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self.ring.zero()
            return Polynomial._wrap(self.ring, {m: c * other for m, c in self._d.items()})
        other = self._check(other)
        d: dict = {}
        for m1, c1 in self._d.items():
            for m2, c2 in other._d.items():
                m = tuple(map(add, m1, m2))
                d[m] = d.get(m, 0) + c1 * c2
        return Polynomial._wrap(self.ring, d)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_monomial(self, mono, coeff=1) -> "Polynomial":
        mono = tuple(mono)
        return Polynomial._wrap(self.ring, {tuple(map(add, m, mono)): c * coeff for m, c in self._d.items()})

    # --- inspection
    def terms(self, order: Optional[MonomialOrder] = None) -> list:
        """Terms sorted descending; canonical order is degrevlex."""
        order = order or MonomialOrder.degrevlex(self.ring.nvars)
        return [Term(self._d[m], m) for m in sorted(self._d, key=order.rank)]

    def monomials(self) -> list:
        return list(self._d)

    def coefficient(self, mono) -> Coefficient:
        return self._d.get(tuple(mono), 0)

    def support(self) -> set:
        return {i for m in self._d for i, e in enumerate(m) if e}

    def is_monomial(self) -> bool:
        return len(self._d) == 1

    def is_constant(self) -> bool:
        return not self._d or (len(self._d) == 1 and not any(next(iter(self._d))))

    def leading_term(self, order: MonomialOrder) -> Term:
        if not self._d:
            raise ValueError("zero polynomial has no leading term")
        m = min(self._d, key=order.rank)
        return Term(self._d[m], m)

    def leading_monomial(self, order: MonomialOrder):
        return self.leading_term(order).monomial

    def total_degree(self) -> int:
        if not self._d:
            raise ValueError("zero polynomial has no degree")
        return max(sum(m) for m in self._d)

    def weighted_degree(self, grading: Grading) -> Optional[int]:
        """Common weighted degree of all terms, or None if not homogeneous."""
        if not self._d:
            raise ValueError("zero polynomial has no degree")
        degs = {grading.degree(m) for m in self._d}
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self, grading: Optional[Grading] = None) -> bool:
        if not self._d:
            return True
        return self.weighted_degree(grading or Grading.standard(self.ring.nvars)) is not None

    def initial_form(self) -> tuple:
        """Lowest-degree homogeneous component and its degree."""
        if not self._d:
            raise ValueError("zero polynomial has no initial form")
        nu = min(sum(m) for m in self._d)
        return Polynomial(self.ring, {m: c for m, c in self._d.items() if sum(m) == nu}, _trusted=True), nu

    def homogenize(self, var: int) -> "Polynomial":
        if any(m[var] for m in self._d):
            raise ValueError(f"variable {self.ring.names[var]} already occurs in {self}")
        if not self._d:
            return self
        top = max(sum(m) for m in self._d)
        d = {}
        for m, c in self._d.items():
            e = list(m)
            e[var] = top - sum(m)
            d[tuple(e)] = c
        return Polynomial(self.ring, d, _trusted=True)

    def dehomogenize(self, var: int) -> "Polynomial":
        d: dict = {}
        for m, c in self._d.items():
            e = m[:var] + (0,) + m[var + 1:]
            d[e] = d.get(e, 0) + c
        return Polynomial._wrap(self.ring, d)

    def specialize(self, weights: Sequence[int]) -> dict:
        """Substitute x_i -> t^{w_i}; returns the univariate result as {power: coeff}."""
        out: dict = {}
        for m, c in self._d.items():
            p = sum(map(mul, weights, m))
            out[p] = out.get(p, 0) + c
        return {p: c for p, c in out.items() if c}

    def map_ring(self, ring: Ring, positions: Sequence[int]) -> "Polynomial":
        """Re-embed into ``ring``; variable i of self goes to ``positions[i]``."""
        n = ring.nvars
        d = {}
        for m, c in self._d.items():
            e = [0] * n
            for i, x in enumerate(m):
                if x:
                    e[positions[i]] = x
            d[tuple(e)] = c
        return Polynomial(ring, d, _trusted=True)

    def monic(self, order: MonomialOrder) -> "Polynomial":
        return self * inverse(self.leading_term(order).coefficient)

    # --- serialization
    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"

    def to_json(self) -> list:
        out = []
        for c, m in self.terms():
            c = Fraction(c)
            out.append({"coeff": [c.numerator, c.denominator], "exps": list(m)})
        return out

    @classmethod
    def from_json(cls, ring: Ring, data: list) -> "Polynomial":
        return cls(ring, {tuple(t["exps"]): Fraction(t["coeff"][0], t["coeff"][1]) for t in data})


def format_polynomial(f: Polynomial) -> str:
    if f.is_zero():
        return "0"
    names = f.ring.names
    parts = []
    for c, m in f.terms():
        factors = []
        for name, e in zip(names, m):
            if e == 1:
                factors.append(name)
            elif e:
                factors.append(f"{name}^{e}")
        mono = "*".join(factors)
        neg = c < 0
        a = -c if neg else c
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|\^|\*|\+|-|\(|\)))")


def _tokenize(text: str, ring: Ring) -> list:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text!r} at position {pos}")
        pos = m.end()
        num, ident, op = m.groups()
        if num is not None:
            tokens.append(("num", Fraction(num)))
        elif ident is not None:
            for name in _split_ident(ident, ring):
                tokens.append(("var", ring.index(name)))
        else:
            tokens.append(("op", "^" if op == "**" else op))
    return tokens


def _split_ident(ident: str, ring: Ring) -> list:
    """Split e.g. 'xyz' or 'x1x3' into ring variable names (greedy longest match)."""
    if ident in ring.names:
        return [ident]
    out = []
    i = 0
    names = sorted(ring.names, key=len, reverse=True)
    while i < len(ident):
        for name in names:
            if ident.startswith(name, i):
                # don't split a digit run: x1 followed by 0 must not read as x1
                nxt = i + len(name)
                if name[-1].isdigit() and nxt < len(ident) and ident[nxt].isdigit():
                    continue
                out.append(name)
                i = nxt
                break
        else:
            raise ValueError(f"unknown variable in {ident!r}; ring has {ring.names}")
    return out


def parse_polynomial(text: str, ring: Ring) -> Polynomial:
    """Parse sums of products, e.g. ``3*x1^2*x3 - x2^4`` or ``xz - y^3``."""
    tokens = _tokenize(text, ring)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None)

    def take():
        nonlocal pos
        t = tokens[pos]
        pos += 1
        return t

    def expr():
        sign = 1
        kind, val = peek()
        if kind == "op" and val in "+-":
            take()
            sign = -1 if val == "-" else 1
        acc = product() * sign
        while True:
            kind, val = peek()
            if kind == "op" and val in "+-":
                take()
                p = product()
                acc = acc + p if val == "+" else acc - p
            else:
                return acc

    def product():
        acc = power()
        while True:
            kind, val = peek()
            if kind == "op" and val == "*":
                take()
                acc = acc * power()
            elif kind in ("num", "var") or (kind == "op" and val == "("):
                acc = acc * power()  # implicit multiplication
            else:
                return acc

    def power():
        base = atom()
        kind, val = peek()
        if kind == "op" and val == "^":
            take()
            k, e = take()
            if k != "num" or e.denominator != 1:
                raise ValueError(f"bad exponent in {text!r}")
            return base ** int(e)
        return base

    def atom():
        if pos >= len(tokens):
            raise ValueError(f"unexpected end of {text!r}")
        kind, val = take()
        if kind == "num":
            return ring.const(val)
        if kind == "var":
            return ring.gen(val)
        if val == "(":
            inner = expr()
            k, v = take() if pos < len(tokens) else (None, None)
            if v != ")":
                raise ValueError(f"unbalanced parentheses in {text!r}")
            return inner
        if val == "-":
            return -atom()
        raise ValueError(f"unexpected {val!r} in {text!r}")

    if not tokens:
        return ring.zero()
    result = expr()
    if pos != len(tokens):
        raise ValueError(f"trailing input in {text!r}")
    return result


def ideal_to_strings(gens: Iterable[Polynomial]) -> list:
    return [str(g) for g in gens]
