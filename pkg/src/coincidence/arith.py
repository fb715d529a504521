"""Integer helpers: valuations, totients and the orders of GL2 / SL2 over Z/nZ."""

from __future__ import annotations

from functools import lru_cache
from math import gcd, prod

from sympy import factorint, isprime

__all__ = [
    "factor",
    "gl2_order",
    "is_prime",
    "is_prime_power",
    "sl2_order",
    "totient",
    "unit_group",
    "vp",
]


@lru_cache(maxsize=4096)
def _factor(n: int) -> tuple[tuple[int, int], ...]:
    return tuple(sorted((int(p), int(e)) for p, e in factorint(n).items()))


def factor(n: int) -> dict[int, int]:
    """Prime factorisation of ``n >= 1`` as an ordered ``{p: e}`` dict."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    return dict(_factor(n))


def is_prime(n: int) -> bool:
    return bool(isprime(n))


def is_prime_power(n: int) -> bool:
    return n >= 2 and len(factor(n)) == 1


def vp(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def totient(n: int) -> int:
    return prod(p ** (e - 1) * (p - 1) for p, e in factor(n).items())


def gl2_order(n: int) -> int:
    """#GL2(Z/nZ) as the product of q^(4(j-1)+1) (q-1)^2 (q+1) over q^j || n."""
    if n < 2:
        raise ValueError("modulus must be >= 2")
    return prod(q ** (4 * (j - 1) + 1) * (q - 1) ** 2 * (q + 1) for q, j in factor(n).items())


def sl2_order(n: int) -> int:
    return gl2_order(n) // totient(n)


def unit_group(n: int) -> list[int]:
    return [u for u in range(1, n) if gcd(u, n) == 1]
