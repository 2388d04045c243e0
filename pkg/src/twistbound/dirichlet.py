"""Exact Dirichlet characters over the rational integers.

The unit group (Z/QZ)^x is decomposed into cyclic blocks, one per odd
prime power and the usual one-or-two blocks at powers of two:

* odd p^e: a single block of order p^(e-1)(p-1), generated by the least
  primitive root mod p (replaced by g + p when g^(p-1) == 1 mod p^2, so
  the same g generates at every exponent);
* 2: no block; 4: the block (-1, order 2); 2^e with e >= 3: the pair
  (-1, order 2) and (5, order 2^(e-2)).

Generators are stored CRT-normalized (congruent to 1 modulo the other
prime powers), blocks ordered by prime with the (-1) block before the 5
block.  A character is an exponent vector against these generators; its
values are exact roots of unity (reduced rotation fractions), never
floats.  Character labels are "Q.i" with i the lexicographic index of the
exponent vector, the principal character being "Q.0".

Discrete logarithms are table-driven, so construction is O(phi(Q)) and
evaluation is O(number of blocks); this targets desk-scale moduli.
"""

from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd as int_gcd
from typing import Iterator

from .factored import ONE, FactoredInteger, factor, is_prime

__all__ = [
    "RootOfUnity",
    "CyclicBlock",
    "UnitGroupStructure",
    "DirichletChar",
    "unit_group",
    "enumerate_characters",
    "primitive_characters",
    "principal_character",
    "character_from_label",
    "evaluate",
    "conductor",
    "product",
    "inverse",
    "order",
    "parity",
    "induce",
]


@dataclass(frozen=True)
class RootOfUnity:
    """An exact root of unity e^(2*pi*i*num/den), or the distinguished zero.

    The fraction is kept reduced with 0 <= num < den; multiplication adds
    rotations mod 1 and zero absorbs.
    """

    num: int
    den: int
    is_zero: bool = False

    def __post_init__(self) -> None:
        if self.is_zero:
            if (self.num, self.den) != (0, 1):
                raise ValueError("the zero element carries rotation 0/1")
            return
        if self.den < 1 or not (0 <= self.num < self.den):
            raise ValueError(f"rotation {self.num}/{self.den} not normalized")
        if self.num and int_gcd(self.num, self.den) != 1:
            raise ValueError(f"rotation {self.num}/{self.den} not reduced")
        if self.num == 0 and self.den != 1:
            raise ValueError("zero rotation must be 0/1")

    @classmethod
    def zero(cls) -> "RootOfUnity":
        return cls(0, 1, True)

    @classmethod
    def one(cls) -> "RootOfUnity":
        return cls(0, 1)

    @classmethod
    def from_rotation(cls, rotation: Fraction) -> "RootOfUnity":
        r = rotation % 1
        return cls(r.numerator, r.denominator)

    @property
    def rotation(self) -> Fraction:
        return Fraction(self.num, self.den)

    @property
    def order(self) -> int:
        """Multiplicative order; undefined for zero."""
        if self.is_zero:
            raise ValueError("zero has no multiplicative order")
        return self.den

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        if self.is_zero or other.is_zero:
            return RootOfUnity.zero()
        return RootOfUnity.from_rotation(self.rotation + other.rotation)

    def __pow__(self, k: int) -> "RootOfUnity":
        if self.is_zero:
            if k <= 0:
                raise ValueError("zero cannot be raised to a nonpositive power")
            return self
        return RootOfUnity.from_rotation(self.rotation * k)

    def inverse(self) -> "RootOfUnity":
        if self.is_zero:
            raise ValueError("zero is not invertible")
        return RootOfUnity.from_rotation(-self.rotation)

    def conjugate(self) -> "RootOfUnity":
        if self.is_zero:
            return self
        return self.inverse()

    def to_complex(self) -> complex:
        if self.is_zero:
            return 0j
        if self.den == 1:
            return 1 + 0j
        if self.den == 2:
            return -1 + 0j
        if self.den == 4:
            return 1j if self.num == 1 else -1j
        return cmath.exp(2j * cmath.pi * self.num / self.den)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        if self.den == 1:
            return "1"
        if self.den == 2:
            return "-1"
        return f"e(2*pi*i*{self.num}/{self.den})"


@dataclass(frozen=True)
class CyclicBlock:
    """One cyclic factor of (Z/QZ)^x.

    ``generator`` is a residue mod Q, congruent to 1 modulo the other
    prime-power parts of Q.
    """

    prime: int
    prime_exp: int
    generator: int
    order: int


def _least_primitive_root(p: int) -> int:
    """Least primitive root mod an odd prime p."""
    order_primes = factor(p - 1).primes()
    g = 2
    while True:
        if all(pow(g, (p - 1) // q, p) != 1 for q in order_primes):
            return g
        g += 1


def _crt_lift(residue: int, q: int, modulus: int) -> int:
    """The residue mod ``modulus`` congruent to ``residue`` mod q and 1 mod modulus/q."""
    rest = modulus // q
    if rest == 1:
        return residue % q
    # x = residue + q*t with x == 1 mod rest
    t = ((1 - residue) * pow(q, -1, rest)) % rest
    return (residue + q * t) % modulus


class UnitGroupStructure:
    """Cyclic decomposition of (Z/QZ)^x with precomputed discrete logs.

    Immutable after construction; safe to share.  ``decompose(m)`` returns
    the exponent tuple of m against the block generators, or None when
    gcd(m, Q) > 1.
    """

    __slots__ = (
        "modulus",
        "modulus_value",
        "blocks",
        "exponent",
        "phi",
        "_tables",
        "_prime_powers",
        "_weights",
        "_block_slices",
    )

    def __init__(self, modulus: FactoredInteger):
        self.modulus = modulus
        q_value = modulus.value
        self.modulus_value = q_value
        blocks: list[CyclicBlock] = []
        tables: dict[int, dict[int, tuple[int, ...]]] = {}
        prime_powers: list[tuple[int, int]] = []  # (prime, p^e)
        block_slices: list[tuple[int, int]] = []  # per prime power: block index range

        for p, e in modulus.factors:
            q = p**e
            start = len(blocks)
            if p == 2:
                if e == 1:
                    tables[p] = {1: ()}
                elif e == 2:
                    gen = _crt_lift(3, 4, q_value)
                    blocks.append(CyclicBlock(2, e, gen, 2))
                    tables[p] = {1: (0,), 3: (1,)}
                else:
                    m = q // 4
                    blocks.append(CyclicBlock(2, e, _crt_lift(q - 1, q, q_value), 2))
                    blocks.append(CyclicBlock(2, e, _crt_lift(5, q, q_value), m))
                    table: dict[int, tuple[int, ...]] = {}
                    for a in range(2):
                        x = (q - 1) ** a % q
                        for b in range(m):
                            table[x] = (a, b)
                            x = x * 5 % q
                    tables[p] = table
            else:
                g = _least_primitive_root(p)
                if pow(g, p - 1, p * p) == 1:
                    g += p
                n = q // p * (p - 1)
                blocks.append(CyclicBlock(p, e, _crt_lift(g, q, q_value), n))
                table = {}
                x = 1
                for k in range(n):
                    table[x] = (k,)
                    x = x * g % q
                tables[p] = table
            prime_powers.append((p, q))
            block_slices.append((start, len(blocks)))

        self.blocks = tuple(blocks)
        self._tables = tables
        self._prime_powers = tuple(prime_powers)
        self._block_slices = tuple(block_slices)
        phi = 1
        exponent = 1
        for b in blocks:
            phi *= b.order
            exponent = exponent * b.order // int_gcd(exponent, b.order)
        self.phi = phi
        self.exponent = exponent
        self._weights = tuple(exponent // b.order for b in blocks)

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(b.order for b in self.blocks)

    def decompose(self, m: int) -> tuple[int, ...] | None:
        r = m % self.modulus_value
        if self.modulus_value == 1:
            return ()
        out: list[int] = []
        for p, q in self._prime_powers:
            entry = self._tables[p].get(r % q)
            if entry is None:
                return None
            out.extend(entry)
        return tuple(out)

    def units(self) -> Iterator[int]:
        """Residues coprime to Q, ascending."""
        q = self.modulus_value
        for m in range(1, q + 1):
            if int_gcd(m, q) == 1:
                yield m % q if q > 1 else 1

    def __repr__(self) -> str:
        blk = ", ".join(f"({b.generator}, {b.order})" for b in self.blocks)
        return f"UnitGroupStructure(Q={self.modulus_value}, blocks=[{blk}])"


@lru_cache(maxsize=512)
def _unit_group_cached(q_value: int) -> UnitGroupStructure:
    return UnitGroupStructure(factor(q_value))


def unit_group(modulus: FactoredInteger | int) -> UnitGroupStructure:
    if isinstance(modulus, FactoredInteger):
        q = modulus.value
    else:
        q = modulus
    if q < 1:
        raise ValueError(f"modulus must be >= 1, got {q}")
    return _unit_group_cached(q)


@dataclass(frozen=True, eq=False)
class DirichletChar:
    """A character of (Z/QZ)^x, extended to the integers by zero.

    ``exps`` holds one exponent per cyclic block, reduced modulo the block
    order; the all-zero vector is the principal character.
    """

    structure: UnitGroupStructure
    exps: tuple[int, ...]

    def __post_init__(self) -> None:
        orders = self.structure.orders
        if len(self.exps) != len(orders):
            raise ValueError(
                f"expected {len(orders)} exponents, got {len(self.exps)}"
            )
        for a, o in zip(self.exps, orders):
            if not (0 <= a < o):
                raise ValueError(f"exponent {a} not reduced mod block order {o}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DirichletChar):
            return NotImplemented
        return (
            self.structure.modulus_value == other.structure.modulus_value
            and self.exps == other.exps
        )

    def __hash__(self) -> int:
        return hash((self.structure.modulus_value, self.exps))

    @property
    def modulus(self) -> FactoredInteger:
        return self.structure.modulus

    @property
    def modulus_value(self) -> int:
        return self.structure.modulus_value

    @property
    def label(self) -> str:
        idx = 0
        for a, o in zip(self.exps, self.structure.orders):
            idx = idx * o + a
        return f"{self.modulus_value}.{idx}"

    @property
    def is_principal(self) -> bool:
        return all(a == 0 for a in self.exps)

    def rotation_units(self, m: int) -> int | None:
        """Rotation of chi(m) as an integer multiple of 1/exponent, or None
        when gcd(m, Q) > 1.  Integer-only fast path for sweeps."""
        dlog = self.structure.decompose(m)
        if dlog is None:
            return None
        e = self.structure.exponent
        total = 0
        for a, k, w in zip(self.exps, dlog, self.structure._weights):
            total += a * k * w
        return total % e

    def __call__(self, m: int) -> RootOfUnity:
        r = self.rotation_units(m)
        if r is None:
            return RootOfUnity.zero()
        return RootOfUnity.from_rotation(Fraction(r, self.structure.exponent))

    def __mul__(self, other: "DirichletChar") -> "DirichletChar":
        if self.structure.modulus_value != other.structure.modulus_value:
            raise ValueError(
                "modulus mismatch: induce both characters to a common modulus first"
            )
        exps = tuple(
            (a + b) % o
            for a, b, o in zip(self.exps, other.exps, self.structure.orders)
        )
        return DirichletChar(self.structure, exps)

    def inverse(self) -> "DirichletChar":
        exps = tuple((-a) % o for a, o in zip(self.exps, self.structure.orders))
        return DirichletChar(self.structure, exps)

    @property
    def order(self) -> int:
        out = 1
        for a, o in zip(self.exps, self.structure.orders):
            t = o // int_gcd(o, a)
            out = out * t // int_gcd(out, t)
        return out

    def parity(self) -> int:
        """chi(-1) as +1 or -1."""
        if self.modulus_value <= 2:
            return 1
        val = self(self.modulus_value - 1)
        if val.den == 1:
            return 1
        if val.den == 2:
            return -1
        raise AssertionError("chi(-1) must be a square root of unity")

    def conductor(self) -> FactoredInteger:
        """Least modulus through which the character factors, blockwise."""
        contrib: dict[int, int] = {}
        idx = 0
        for (p, e), (start, stop) in zip(
            self.modulus.factors, self.structure._block_slices
        ):
            exps_here = self.exps[start:stop]
            f = _prime_power_conductor_exp(p, e, exps_here, self.structure.blocks[start:stop])
            if f:
                contrib[p] = f
            idx = stop
        return FactoredInteger.from_map(contrib)

    def is_primitive(self) -> bool:
        return self.conductor().value == self.modulus_value

    def primitive_part(self) -> "DirichletChar":
        """The primitive character (at its conductor) inducing this one."""
        cond = self.conductor()
        d = cond.value
        if d == self.modulus_value:
            return self
        target = unit_group(cond)
        extra = [p for p in self.modulus.primes() if cond.exponent(p) == 0]
        exps: list[int] = []
        for block in target.blocks:
            x = block.generator % d if d > 1 else 1
            for p in extra:
                x = _crt_combine(x, d, 1, p)
            val = self(x)
            assert not val.is_zero
            if block.order % val.den != 0:
                raise AssertionError("generator value incompatible with block order")
            exps.append(val.num * (block.order // val.den) % block.order)
        return DirichletChar(target, tuple(exps))

    def induce(self, modulus: FactoredInteger | int) -> "DirichletChar":
        """Extend to a larger modulus; requires conductor | modulus."""
        target = unit_group(modulus)
        cond = self.conductor()
        if not cond.divides(target.modulus):
            raise ValueError(
                f"conductor {cond.value} does not divide target modulus "
                f"{target.modulus_value}"
            )
        prim = self.primitive_part()
        exps: list[int] = []
        for block in target.blocks:
            val = prim(block.generator)
            assert not val.is_zero
            if block.order % val.den != 0:
                raise AssertionError("generator value incompatible with block order")
            exps.append(val.num * (block.order // val.den) % block.order)
        return DirichletChar(target, tuple(exps))

    def __repr__(self) -> str:
        return f"DirichletChar({self.label})"


def _crt_combine(r1: int, m1: int, r2: int, m2: int) -> int:
    """x mod m1*m2 with x == r1 (m1), x == r2 (m2); moduli coprime."""
    if m1 == 1:
        return r2 % m2
    if m2 == 1:
        return r1 % m1
    t = ((r2 - r1) * pow(m1, -1, m2)) % m2
    return (r1 + m1 * t) % (m1 * m2)


def _v(p: int, n: int) -> int:
    """p-adic valuation of n >= 1."""
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def _prime_power_conductor_exp(
    p: int, e: int, exps: tuple[int, ...], blocks: tuple[CyclicBlock, ...]
) -> int:
    """Conductor exponent of the p-part of a character, from block data."""
    if p == 2:
        if e == 1:
            return 0
        if e == 2:
            return 0 if exps[0] == 0 else 2
        a, b = exps
        m = blocks[1].order
        t = m // int_gcd(m, b)
        if t == 1:
            return 0 if a == 0 else 2
        return _v(2, t) + 2
    (a,) = exps
    if a == 0:
        return 0
    n = blocks[0].order
    t = n // int_gcd(n, a)
    return _v(p, t) + 1


def enumerate_characters(modulus: FactoredInteger | int) -> list[DirichletChar]:
    """All phi(Q) characters mod Q, principal first, in label order."""
    structure = unit_group(modulus)
    return [
        DirichletChar(structure, exps)
        for exps in itertools.product(*(range(o) for o in structure.orders))
    ]


def primitive_characters(modulus: FactoredInteger | int) -> list[DirichletChar]:
    """Characters mod Q whose conductor is exactly Q, in label order."""
    q = modulus.value if isinstance(modulus, FactoredInteger) else modulus
    return [chi for chi in enumerate_characters(modulus) if chi.conductor().value == q]


def principal_character(modulus: FactoredInteger | int) -> DirichletChar:
    structure = unit_group(modulus)
    return DirichletChar(structure, tuple(0 for _ in structure.blocks))


def character_from_label(label: str) -> DirichletChar:
    """Rebuild a character from its "Q.i" label."""
    try:
        q_str, idx_str = label.split(".")
        q, idx = int(q_str), int(idx_str)
    except ValueError as exc:
        raise ValueError(f"malformed character label {label!r}") from exc
    structure = unit_group(q)
    if not (0 <= idx < structure.phi):
        raise ValueError(f"label index {idx} out of range for modulus {q}")
    exps = []
    for o in reversed(structure.orders):
        idx, a = divmod(idx, o)
        exps.append(a)
    return DirichletChar(structure, tuple(reversed(exps)))


# Functional aliases mirroring the operation names.

def evaluate(chi: DirichletChar, m: int) -> RootOfUnity:
    return chi(m)


def conductor(chi: DirichletChar) -> FactoredInteger:
    return chi.conductor()


def product(chi: DirichletChar, psi: DirichletChar) -> DirichletChar:
    return chi * psi


def inverse(chi: DirichletChar) -> DirichletChar:
    return chi.inverse()


def order(chi: DirichletChar) -> int:
    return chi.order


def parity(chi: DirichletChar) -> int:
    return chi.parity()


def induce(chi: DirichletChar, modulus: FactoredInteger | int) -> DirichletChar:
    return chi.induce(modulus)
