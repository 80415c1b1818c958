"""Numerical semigroups: membership, Apery sets, invariants, shifting."""
from __future__ import annotations

import heapq
import re
from dataclasses import dataclass, field
from functools import reduce
from math import gcd
from typing import Iterable, NamedTuple


class Invariants(NamedTuple):
    mu: int
    width: int
    multiplicity: int


def _minimalize(values: list) -> tuple:
    """Minimal generating system of the semigroup spanned by ``values``."""
    vals = sorted(set(values))
    g = reduce(gcd, vals)
    scaled = [v // g for v in vals]
    top = scaled[-1]
    reach = bytearray(top + 1)
    reach[0] = 1
    kept = []
    for v in scaled:
        if reach[v]:
            continue
        kept.append(v)
        for n in range(v, top + 1):
            if reach[n - v]:
                reach[n] = 1
    return tuple(v * g for v in kept)


@dataclass(frozen=True)
class NumericalSemigroup:
    """A semigroup of nonnegative integers given by its minimal generators.

    The gcd of the generators need not be 1; arithmetic that only makes sense
    for gcd 1 (Frobenius number, Apery sets, symmetry) raises otherwise.
    """

    generators: tuple
    gcd: int = field(default=0, compare=False)
    _ord: list = field(default_factory=lambda: [0], init=False, repr=False, compare=False)

    def __post_init__(self):
        gens = tuple(int(a) for a in self.generators)
        if not gens:
            raise ValueError("a semigroup needs at least one generator")
        if any(a <= 0 for a in gens):
            raise ValueError(f"generators must be positive, got {gens}")
        if any(b <= a for a, b in zip(gens, gens[1:])):
            raise ValueError(f"generators must be strictly increasing, got {gens}")
        if _minimalize(list(gens)) != gens:
            raise ValueError(f"{gens} is not a minimal generating system")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "gcd", reduce(gcd, gens))

    # --- construction
    @classmethod
    def from_generators(cls, raw: Iterable[int]) -> "NumericalSemigroup":
        raw = [int(a) for a in raw]
        if not raw:
            raise ValueError("a semigroup needs at least one generator")
        if any(a <= 0 for a in raw):
            raise ValueError(f"generators must be positive, got {raw}")
        return cls(_minimalize(raw))

    @classmethod
    def parse(cls, text: str) -> "NumericalSemigroup":
        """Accepts '<3,5,7>', '3,5,7', '3 5 7' or the JSON object form."""
        text = text.strip()
        if text.startswith("{"):
            import json
            return cls.from_json(json.loads(text))
        nums = re.findall(r"-?\d+", text)
        if not nums or re.sub(r"[<>⟨⟩\[\]()\s,;\d-]", "", text):
            raise ValueError(f"cannot parse semigroup from {text!r}")
        return cls.from_generators(int(n) for n in nums)

    @classmethod
    def from_json(cls, data: dict) -> "NumericalSemigroup":
        return cls.from_generators(data["generators"])

    def to_json(self) -> dict:
        return {"generators": list(self.generators)}

    def __str__(self):
        return "<" + ",".join(map(str, self.generators)) + ">"

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __reduce__(self):
        return (NumericalSemigroup, (self.generators,))

    # --- invariants
    @property
    def mu(self) -> int:
        return len(self.generators)

    @property
    def multiplicity(self) -> int:
        return self.generators[0]

    @property
    def width(self) -> int:
        return self.generators[-1] - self.generators[0]

    def invariants(self) -> Invariants:
        return Invariants(self.mu, self.width, self.multiplicity)

    def normalized(self) -> "NumericalSemigroup":
        """The isomorphic semigroup with the gcd divided out."""
        if self.gcd == 1:
            return self
        return NumericalSemigroup(tuple(a // self.gcd for a in self.generators))

    def _need_gcd_one(self, what: str):
        if self.gcd != 1:
            raise ValueError(f"{what} needs gcd 1; {self} has gcd {self.gcd}")

    # --- membership
    def apery_set(self, m: int) -> list:
        """Least element of H in each residue class mod m (indexed by residue)."""
        self._need_gcd_one("apery_set")
        if m <= 0 or not self.contains(m):
            raise ValueError(f"{m} is not a positive element of {self}")
        return self._apery(m)

    def _apery(self, m: int) -> list:
        dist = [None] * m
        dist[0] = 0
        heap = [(0, 0)]
        while heap:
            d, r = heapq.heappop(heap)
            if d != dist[r]:
                continue
            for a in self.generators:
                nd, nr = d + a, (r + a) % m
                if dist[nr] is None or nd < dist[nr]:
                    dist[nr] = nd
                    heapq.heappush(heap, (nd, nr))
        return dist

    def _apery_min(self) -> list:
        ap = self.__dict__.get("_ap")
        if ap is None:
            ap = self.normalized()._apery(self.generators[0] // self.gcd)
            object.__setattr__(self, "_ap", ap)
        return ap

    def contains(self, n: int) -> bool:
        if n < 0:
            return False
        if n % self.gcd:
            return False
        n //= self.gcd
        ap = self._apery_min()
        return n >= ap[n % len(ap)]

    __contains__ = contains

    def frobenius_number(self) -> int:
        """Largest integer not in H; -1 for the semigroup of all naturals."""
        self._need_gcd_one("frobenius_number")
        ap = self._apery_min()
        return max(ap) - self.generators[0]

    def gaps(self) -> list:
        self._need_gcd_one("gaps")
        return [n for n in range(self.frobenius_number() + 1) if not self.contains(n)]

    def is_symmetric(self) -> bool:
        self._need_gcd_one("is_symmetric")
        F = self.frobenius_number()
        return all(self.contains(s) != self.contains(F - s) for s in range(F + 1))

    # --- shifting and completion
    def shift(self, k: int) -> "NumericalSemigroup":
        if k < 0:
            raise ValueError("shift must be nonnegative")
        return NumericalSemigroup.from_generators(a + k for a in self.generators)

    def interval_completion(self) -> "NumericalSemigroup":
        a1, ar = self.generators[0], self.generators[-1]
        Ht = NumericalSemigroup.from_generators(range(a1, ar + 1))
        if Ht.mu != min(a1 - 1, self.width) + 1 or self.mu > Ht.mu:
            raise AssertionError(f"interval completion of {self} gave {Ht}")
        return Ht

    def is_interval(self) -> bool:
        return self.width == self.mu - 1

    # --- order function and tangent cone Hilbert function
    def _extend_ord(self, top: int) -> list:
        """ord(h) = max factorization length, -1 for h not in H, up to ``top``."""
        ords = self._ord
        gens = self.generators
        for h in range(len(ords), top + 1):
            best = -1
            for a in gens:
                if a > h:
                    break
                o = ords[h - a]
                if o >= 0 and o + 1 > best:
                    best = o + 1
            ords.append(best)
        return ords

    def max_factorization_length(self, h: int) -> int:
        if h <= 0 or not self.contains(h):
            raise ValueError(f"{h} is not a positive element of {self}")
        return self._extend_ord(h)[h]

    def tangent_hilbert_oracle(self, dmax: int) -> list:
        """#{h in H : ord(h) = n} for n = 0..dmax."""
        self._need_gcd_one("tangent_hilbert_oracle")
        if dmax < 0:
            raise ValueError("dmax must be nonnegative")
        top = dmax * self.generators[-1]
        ords = self._extend_ord(top)
        out = [0] * (dmax + 1)
        for h in range(top + 1):
            o = ords[h]
            if 0 <= o <= dmax:
                out[o] += 1
        return out


def from_generators(raw: Iterable[int]) -> NumericalSemigroup:
    return NumericalSemigroup.from_generators(raw)


def parse_semigroup(text: str) -> NumericalSemigroup:
    return NumericalSemigroup.parse(text)
