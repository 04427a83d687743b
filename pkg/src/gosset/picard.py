"""Exact integer model of the Picard lattice Pic S_r = Zh + Ze_1 + ... + Ze_r.

Classes are stored as raw signed coefficient vectors in the basis
(h, e_1, ..., e_r); the pairing has signature (1, -r).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import DomainError, InvariantError

MIN_RANK = 3
MAX_RANK = 8


def check_rank(r: int) -> int:
    if not isinstance(r, int) or not MIN_RANK <= r <= MAX_RANK:
        raise DomainError(f"rank must be an integer in {MIN_RANK}..{MAX_RANK}, got {r!r}")
    return r


@dataclass(frozen=True, order=True)
class DivisorClass:
    """An integer divisor class on S_r.

    ``coeffs[0]`` is the coefficient of h and ``coeffs[i]`` that of e_i, so
    2h - e1 - e2 on S_4 is ``DivisorClass(4, (2, -1, -1, 0, 0))``.
    """

    r: int
    coeffs: tuple[int, ...] = field()

    def __post_init__(self) -> None:
        check_rank(self.r)
        coeffs = tuple(int(c) for c in self.coeffs)
        if len(coeffs) != self.r + 1:
            raise DomainError(f"expected {self.r + 1} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def trusted(cls, r: int, coeffs: tuple[int, ...]) -> DivisorClass:
        """Construct without validation, for hot loops over already-checked data."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "r", r)
        object.__setattr__(obj, "coeffs", coeffs)
        return obj

    # -- arithmetic ---------------------------------------------------------

    def _same_rank(self, other: DivisorClass) -> None:
        if not isinstance(other, DivisorClass):
            raise TypeError(f"expected DivisorClass, got {type(other).__name__}")
        if other.r != self.r:
            raise DomainError(f"rank mismatch: S_{self.r} vs S_{other.r}")

    def __add__(self, other: DivisorClass) -> DivisorClass:
        self._same_rank(other)
        return DivisorClass(self.r, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: DivisorClass) -> DivisorClass:
        self._same_rank(other)
        return DivisorClass(self.r, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> DivisorClass:
        return DivisorClass(self.r, tuple(-a for a in self.coeffs))

    def __mul__(self, k: int) -> DivisorClass:
        if not isinstance(k, int):
            return NotImplemented
        return DivisorClass(self.r, tuple(k * a for a in self.coeffs))

    __rmul__ = __mul__

    def divide(self, k: int) -> DivisorClass:
        """Exact division by ``k``; raises InvariantError when not divisible."""
        if any(a % k for a in self.coeffs):
            raise InvariantError(f"{self} is not divisible by {k} in Pic S_{self.r}")
        return DivisorClass(self.r, tuple(a // k for a in self.coeffs))

    def divisible_by(self, k: int) -> bool:
        return all(a % k == 0 for a in self.coeffs)

    def dot(self, other: DivisorClass) -> int:
        return pairing(self, other)

    @property
    def square(self) -> int:
        return pairing(self, self)

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {"r": self.r, "coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, obj: dict | str) -> DivisorClass:
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(int(obj["r"]), tuple(obj["coeffs"]))

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            name = "h" if i == 0 else f"e{i}"
            mag = "" if abs(c) == 1 else str(abs(c))
            sign = "-" if c < 0 else "+"
            terms.append(f"{sign}{mag}{name}")
        if not terms:
            return "0"
        s = "".join(terms)
        return s[1:] if s.startswith("+") else s


def pairing(d1: DivisorClass, d2: DivisorClass) -> int:
    """Intersection number: a0*b0 - sum_{i>=1} a_i*b_i."""
    if d1.r != d2.r:
        raise DomainError(f"rank mismatch: S_{d1.r} vs S_{d2.r}")
    a, b = d1.coeffs, d2.coeffs
    return a[0] * b[0] - sum(x * y for x, y in zip(a[1:], b[1:]))


def pairing_vec(a: Sequence[int], b: Sequence[int]) -> int:
    """Pairing on bare coefficient tuples (hot loops)."""
    return a[0] * b[0] - sum(x * y for x, y in zip(a[1:], b[1:]))


# -- named classes ----------------------------------------------------------

def zero(r: int) -> DivisorClass:
    return DivisorClass(r, (0,) * (r + 1))


def hyperplane(r: int) -> DivisorClass:
    return DivisorClass(r, (1,) + (0,) * r)


def exceptional(r: int, i: int) -> DivisorClass:
    if not 1 <= i <= r:
        raise DomainError(f"e_{i} does not exist on S_{r}")
    c = [0] * (r + 1)
    c[i] = 1
    return DivisorClass(r, tuple(c))


def canonical(r: int) -> DivisorClass:
    """K = -3h + e_1 + ... + e_r."""
    return DivisorClass(r, (-3,) + (1,) * r)


def make(r: int, h: int = 0, **es: int) -> DivisorClass:
    """Build a class from keyword coefficients, e.g. ``make(8, 2, e1=-1, e3=-1)``."""
    c = [h] + [0] * r
    for key, val in es.items():
        if not key.startswith("e"):
            raise DomainError(f"unknown basis element {key!r}")
        i = int(key[1:])
        if not 1 <= i <= r:
            raise DomainError(f"e_{i} does not exist on S_{r}")
        c[i] = val
    return DivisorClass(r, tuple(c))


def simple_roots(r: int) -> tuple[DivisorClass, ...]:
    """d_0 = h - e1 - e2 - e3 and d_i = e_i - e_{i+1} for 1 <= i < r."""
    check_rank(r)
    roots = [DivisorClass(r, (1, -1, -1, -1) + (0,) * (r - 3))]
    for i in range(1, r):
        c = [0] * (r + 1)
        c[i], c[i + 1] = 1, -1
        roots.append(DivisorClass(r, tuple(c)))
    return tuple(roots)


def is_root(d: DivisorClass) -> bool:
    return pairing(d, d) == -2 and pairing(d, canonical(d.r)) == 0


def reflect(d: DivisorClass, D: DivisorClass) -> DivisorClass:
    """sigma_d(D) = D + (D.d) d for a root d."""
    if not is_root(d):
        raise DomainError(f"{d} is not a root (need d^2=-2, d.K=0)")
    return D + pairing(D, d) * d


def reflect_vec(d: Sequence[int], D: Sequence[int]) -> tuple[int, ...]:
    c = pairing_vec(D, d)
    return tuple(x + c * y for x, y in zip(D, d))


def anticanonical_degree(D: DivisorClass) -> int:
    return -pairing(D, canonical(D.r))


@dataclass(frozen=True)
class SurfaceModel:
    r: int
    canonical: DivisorClass
    simple_roots: tuple[DivisorClass, ...]
    degree: int

    def __post_init__(self) -> None:
        K = self.canonical
        if pairing(K, K) != 9 - self.r or self.degree != 9 - self.r:
            raise InvariantError("K^2 must equal 9 - r")
        if len(self.simple_roots) != self.r or not all(is_root(d) for d in self.simple_roots):
            raise InvariantError("simple roots are malformed")


@lru_cache(maxsize=None)
def surface(r: int) -> SurfaceModel:
    check_rank(r)
    return SurfaceModel(r, canonical(r), simple_roots(r), 9 - r)


def sum_classes(classes: Iterable[DivisorClass], r: int) -> DivisorClass:
    total = zero(r)
    for c in classes:
        total = total + c
    return total
