"""Residues and 2x2 matrices over Z/nZ.

Matrices are immutable and always hold canonical entries in ``[0, n)``.
Group-level code works on bare ``(a, b, c, d)`` tuples through the ``t*``
kernels below; :class:`Mat2` is the checked public face of the same data.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

from .arith import gl2_order
from .config import MAX_MODULUS
from .errors import BadModulus, InternalInconsistency, NotInvertible

Entries = tuple[int, int, int, int]

__all__ = [
    "Mat2",
    "Residue",
    "S",
    "T",
    "check_modulus",
    "det",
    "element_order",
    "identity",
    "invert",
    "reduce_mat",
    "tdet",
    "tinv",
    "tmul",
    "torder",
    "tpow",
]


def check_modulus(n: int) -> int:
    if not isinstance(n, int) or isinstance(n, bool):
        raise BadModulus(f"modulus must be an integer, got {n!r}")
    if n < 2 or n > MAX_MODULUS:
        raise BadModulus(f"modulus {n} outside [2, 2^20]")
    return n


# -- tuple kernels ---------------------------------------------------------


def tmul(x: Entries, y: Entries, n: int) -> Entries:
    a, b, c, d = x
    e, f, g, h = y
    return ((a * e + b * g) % n, (a * f + b * h) % n, (c * e + d * g) % n, (c * f + d * h) % n)


def tdet(x: Entries, n: int) -> int:
    return (x[0] * x[3] - x[1] * x[2]) % n


def tinv(x: Entries, n: int) -> Entries:
    a, b, c, d = x
    dt = (a * d - b * c) % n
    if gcd(dt, n) != 1:
        raise NotInvertible(f"det {dt} is not a unit mod {n}")
    di = pow(dt, -1, n)
    return ((d * di) % n, (-b * di) % n, (-c * di) % n, (a * di) % n)


def tpow(x: Entries, e: int, n: int) -> Entries:
    if e < 0:
        x, e = tinv(x, n), -e
    result = (1, 0, 0, 1 % n)
    while e:
        if e & 1:
            result = tmul(result, x, n)
        x = tmul(x, x, n)
        e >>= 1
    return result


def torder(x: Entries, n: int, cap: int | None = None) -> int:
    """Multiplicative order by repeated multiplication, bounded by #GL2(n)."""
    one = (1, 0, 0, 1)
    if gcd(tdet(x, n), n) != 1:
        raise NotInvertible(f"{x} is not invertible mod {n}")
    cap = gl2_order(n) if cap is None else cap
    y = x
    for d in range(1, cap + 1):
        if y == one:
            return d
        y = tmul(y, x, n)
    raise InternalInconsistency(f"order of {x} mod {n} exceeds {cap}")


# -- public types ----------------------------------------------------------


@dataclass(frozen=True, order=True)
class Residue:
    modulus: int
    value: int

    def __post_init__(self):
        check_modulus(self.modulus)
        object.__setattr__(self, "value", self.value % self.modulus)

    def _other(self, other) -> int:
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise BadModulus(f"mixed moduli {self.modulus} and {other.modulus}")
            return other.value
        return int(other)

    def __add__(self, other):
        return Residue(self.modulus, self.value + self._other(other))

    def __sub__(self, other):
        return Residue(self.modulus, self.value - self._other(other))

    def __mul__(self, other):
        return Residue(self.modulus, self.value * self._other(other))

    __radd__ = __add__
    __rmul__ = __mul__

    def __neg__(self):
        return Residue(self.modulus, -self.value)

    def is_unit(self) -> bool:
        return gcd(self.value, self.modulus) == 1

    def inverse(self) -> "Residue":
        if not self.is_unit():
            raise NotInvertible(f"{self.value} is not a unit mod {self.modulus}")
        return Residue(self.modulus, pow(self.value, -1, self.modulus))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.modulus})"


@dataclass(frozen=True, order=True)
class Mat2:
    """A 2x2 matrix ``(a, b; c, d)`` over Z/nZ, entries reduced on construction."""

    modulus: int
    entries: Entries

    def __post_init__(self):
        n = check_modulus(self.modulus)
        if len(self.entries) != 4:
            raise ValueError(f"expected 4 entries, got {len(self.entries)}")
        object.__setattr__(self, "entries", tuple(int(v) % n for v in self.entries))

    @classmethod
    def of(cls, n: int, a: int, b: int, c: int, d: int) -> "Mat2":
        return cls(n, (a, b, c, d))

    @classmethod
    def from_literal(cls, n: int, literal: Sequence[int]) -> "Mat2":
        """Parse the ``[a, b, c, d]`` row-major literal used by every file format."""
        if len(literal) != 4 or not all(isinstance(v, int) and not isinstance(v, bool) for v in literal):
            raise ValueError(f"matrix literal must be 4 integers, got {literal!r}")
        return cls(n, tuple(literal))

    @property
    def residues(self) -> tuple[Residue, Residue, Residue, Residue]:
        return tuple(Residue(self.modulus, v) for v in self.entries)

    def to_literal(self) -> list[int]:
        return list(self.entries)

    def _check(self, other: "Mat2"):
        if other.modulus != self.modulus:
            raise BadModulus(f"mixed moduli {self.modulus} and {other.modulus}")

    def __matmul__(self, other: "Mat2") -> "Mat2":
        self._check(other)
        return Mat2(self.modulus, tmul(self.entries, other.entries, self.modulus))

    def __pow__(self, e: int) -> "Mat2":
        return Mat2(self.modulus, tpow(self.entries, e, self.modulus))

    def __neg__(self) -> "Mat2":
        return Mat2(self.modulus, tuple(-v for v in self.entries))

    def det(self) -> Residue:
        return det(self)

    def inverse(self) -> "Mat2":
        return invert(self)

    def is_invertible(self) -> bool:
        return gcd(tdet(self.entries, self.modulus), self.modulus) == 1

    def order(self) -> int:
        return element_order(self)

    def reduce(self, m: int) -> "Mat2":
        return reduce_mat(self, m)

    def __repr__(self):
        a, b, c, d = self.entries
        return f"Mat2[{a},{b};{c},{d} mod {self.modulus}]"


def identity(n: int) -> Mat2:
    return Mat2(n, (1, 0, 0, 1))


def S(n: int) -> Mat2:
    return Mat2(n, (0, -1, 1, 0))


def T(n: int) -> Mat2:
    return Mat2(n, (1, 1, 0, 1))


def det(M: Mat2) -> Residue:
    return Residue(M.modulus, tdet(M.entries, M.modulus))


def invert(M: Mat2) -> Mat2:
    return Mat2(M.modulus, tinv(M.entries, M.modulus))


def element_order(M: Mat2) -> int:
    return torder(M.entries, M.modulus)


def reduce_mat(M: Mat2, m: int) -> Mat2:
    if m < 2 or M.modulus % m:
        raise BadModulus(f"{m} does not divide the modulus {M.modulus}")
    return Mat2(m, M.entries)


def lexicographic(mats: Iterable[Mat2]) -> list[Mat2]:
    return sorted(mats, key=lambda M: M.entries)
