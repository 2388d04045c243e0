"""Exact arithmetic on positive integers kept in fully factored form.

Arithmetic conductors live here as :class:`FactoredInteger` values, a
prime -> exponent map with the primes strictly increasing.  All values are
immutable and safe to share between threads.  Factorization is trial
division with a deterministic Miller-Rabin shortcut for prime cofactors;
inputs are expected at desk scale (below 2**64).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

__all__ = [
    "FactoredInteger",
    "ONE",
    "factor",
    "is_prime",
    "lcm",
    "gcd",
    "divides_pow",
    "divisors",
]

# Deterministic Miller-Rabin witness set; correct for every n < 3.3 * 10**24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# Trial-division wheel mod 30, starting from 7.
_WHEEL = (4, 2, 4, 2, 4, 6, 2, 6)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test (exact below 2**64)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FactoredInteger:
    """A positive integer as an ordered tuple of (prime, exponent) pairs.

    The empty tuple represents 1.  Invariants (checked on construction):
    primes strictly increasing and actually prime, exponents >= 1.
    """

    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        prev = 1
        for p, e in self.factors:
            if p <= prev:
                raise ValueError(f"primes must be strictly increasing, got {self.factors}")
            if e < 1:
                raise ValueError(f"exponents must be >= 1, got {p}^{e}")
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            prev = p

    @classmethod
    def from_map(cls, factors: Mapping[int, int]) -> "FactoredInteger":
        return cls(tuple(sorted((p, e) for p, e in factors.items() if e)))

    @property
    def value(self) -> int:
        n = 1
        for p, e in self.factors:
            n *= p**e
        return n

    def __int__(self) -> int:
        return self.value

    @property
    def is_one(self) -> bool:
        return not self.factors

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    def __mul__(self, other: "FactoredInteger") -> "FactoredInteger":
        out = self.as_dict()
        for p, e in other.factors:
            out[p] = out.get(p, 0) + e
        return FactoredInteger.from_map(out)

    def __pow__(self, n: int) -> "FactoredInteger":
        if n < 0:
            raise ValueError("negative powers are not integers")
        if n == 0:
            return FactoredInteger()
        return FactoredInteger(tuple((p, e * n) for p, e in self.factors))

    def lcm(self, other: "FactoredInteger") -> "FactoredInteger":
        out = self.as_dict()
        for p, e in other.factors:
            out[p] = max(out.get(p, 0), e)
        return FactoredInteger.from_map(out)

    def gcd(self, other: "FactoredInteger") -> "FactoredInteger":
        theirs = other.as_dict()
        return FactoredInteger.from_map(
            {p: min(e, theirs[p]) for p, e in self.factors if p in theirs}
        )

    def divides(self, other: "FactoredInteger") -> bool:
        return all(e <= other.exponent(p) for p, e in self.factors)

    def pow_divides(self, n: int, other: "FactoredInteger") -> bool:
        """True iff self**n divides ``other`` (n >= 1)."""
        if n < 1:
            raise ValueError("power must be >= 1")
        return all(n * e <= other.exponent(p) for p, e in self.factors)

    def divisors(self) -> list["FactoredInteger"]:
        """All divisors, each in factored form, ascending by value."""
        divs: list[tuple[tuple[int, int], ...]] = [()]
        for p, e in self.factors:
            divs = [d + ((p, k),) if k else d for d in divs for k in range(e + 1)]
        out = [FactoredInteger(tuple(sorted(d))) for d in divs]
        out.sort(key=lambda f: f.value)
        return out

    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return "*".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)


ONE = FactoredInteger()


def factor(n: int) -> FactoredInteger:
    """Factor a positive integer by trial division.

    A deterministic Miller-Rabin test short-circuits prime cofactors, so the
    slow path is only reached for composites with two large prime factors.
    """
    if n <= 0:
        raise ValueError(f"expected a positive integer, got {n}")
    out: list[tuple[int, int]] = []
    for p in (2, 3, 5):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    if n > 1 and is_prime(n):
        out.append((n, 1))
        return FactoredInteger(tuple(out))
    d = 7
    idx = 0
    while n > 1 and d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
            if n > 1 and is_prime(n):
                out.append((n, 1))
                return FactoredInteger(tuple(out))
        d += _WHEEL[idx]
        idx = (idx + 1) % 8
    if n > 1:
        out.append((n, 1))
    return FactoredInteger(tuple(out))


def _coerce(x: "FactoredInteger | int") -> FactoredInteger:
    return x if isinstance(x, FactoredInteger) else factor(x)


def lcm(a: "FactoredInteger | int", b: "FactoredInteger | int") -> FactoredInteger:
    return _coerce(a).lcm(_coerce(b))


def gcd(a: "FactoredInteger | int", b: "FactoredInteger | int") -> FactoredInteger:
    return _coerce(a).gcd(_coerce(b))


def divides_pow(q: "FactoredInteger | int", n: int, m: "FactoredInteger | int") -> bool:
    """True iff q**n divides m, testing exponents prime by prime."""
    return _coerce(q).pow_divides(n, _coerce(m))


def divisors(m: "FactoredInteger | int") -> list[FactoredInteger]:
    return _coerce(m).divisors()
