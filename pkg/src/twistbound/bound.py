"""Admissible twisting-character conductors from a pair of levels.

If two cusp forms of rank n and arithmetic conductors N1, N2 are twist
equivalent through a character of conductor Q, then Q^n | N1*N2
unconditionally, and Q^n | lcm(N1, N2) under the discrete-series (or
rank-2 trivial-central-character) hypothesis.  This module enumerates the
admissible Q for each mode and packages the two boundary constructions
showing the bounds are attained.

The lcm-mode hypotheses are caller attestations: the exponent data cannot
see whether a ramified local component is in the discrete series.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Mapping

from .factored import FactoredInteger, factor, is_prime
from .local import (
    ConductorRange,
    EsiComponent,
    GenericLocalRep,
    twist_conductor_char,
    twist_conductor_esi,
    twist_conductor_rep,
)

__all__ = [
    "BoundMode",
    "admissible_moduli",
    "max_admissible",
    "ProductExtremeWitness",
    "ProductExtremeCertificate",
    "extreme_case_product",
    "LcmExtremeWitness",
    "LcmExtremeCertificate",
    "extreme_case_lcm",
]


class BoundMode(Enum):
    """Divisibility target for the admissible-conductor enumeration."""

    PRODUCT = "product"
    LCM = "lcm"
    GL2_TRIVIAL_CENTRAL = "gl2-trivial-central"

    @property
    def hypothesis(self) -> str:
        if self is BoundMode.PRODUCT:
            return "none (unconditional)"
        if self is BoundMode.LCM:
            return (
                "every ramified local component is in the discrete series, "
                "or rank 2 with trivial central character (caller attested)"
            )
        return "rank 2 with trivial central character (caller attested)"


def _coerce(x: FactoredInteger | int) -> FactoredInteger:
    return x if isinstance(x, FactoredInteger) else factor(x)


def admissible_moduli(
    n1: FactoredInteger | int,
    n2: FactoredInteger | int,
    rank: int,
    mode: BoundMode,
) -> list[FactoredInteger]:
    """All Q >= 1 with Q^rank dividing the mode's target, ascending."""
    if rank < 1:
        raise ValueError(f"rank must be >= 1, got {rank}")
    if mode is BoundMode.GL2_TRIVIAL_CENTRAL and rank != 2:
        raise ValueError("gl2-trivial-central mode requires rank 2")
    n1f, n2f = _coerce(n1), _coerce(n2)
    if mode is BoundMode.PRODUCT:
        target = n1f * n2f
    else:
        target = n1f.lcm(n2f)
    caps = [(p, e // rank) for p, e in target.factors if e // rank >= 1]
    out = []
    for exps in itertools.product(*(range(c + 1) for _, c in caps)):
        out.append(
            FactoredInteger(tuple((p, k) for (p, _), k in zip(caps, exps) if k))
        )
    out.sort(key=lambda f: f.value)
    return out


def max_admissible(
    n1: FactoredInteger | int,
    n2: FactoredInteger | int,
    rank: int,
    mode: BoundMode,
) -> FactoredInteger:
    """The largest admissible modulus (per-prime exponent caps)."""
    if rank < 1:
        raise ValueError(f"rank must be >= 1, got {rank}")
    if mode is BoundMode.GL2_TRIVIAL_CENTRAL and rank != 2:
        raise ValueError("gl2-trivial-central mode requires rank 2")
    n1f, n2f = _coerce(n1), _coerce(n2)
    target = n1f * n2f if mode is BoundMode.PRODUCT else n1f.lcm(n2f)
    return FactoredInteger(
        tuple((p, e // rank) for p, e in target.factors if e // rank >= 1)
    )


@dataclass(frozen=True)
class ProductExtremeWitness:
    """Per-place record for the product-sharpness construction."""

    prime: int
    chi_exp: int
    rep1: GenericLocalRep
    twisted_range: ConductorRange
    twisted_exp: int  # exponent of pi_2 = pi_1 (x) chi, from the character identities


@dataclass(frozen=True)
class ProductExtremeCertificate:
    """Executable witness that Q^2 = N1*N2 can be attained.

    Take pi_1 induced from two characters ramified at distinct primes p1,
    p2 (exponent 1 each) and twist by the inverse of their product.  The
    twist swaps the ramification between the two characters, so the level
    does not move while the twisting conductor fills all of p1*p2.
    """

    p1: int
    p2: int
    n1: FactoredInteger
    n2: FactoredInteger
    q: FactoredInteger
    places: tuple[ProductExtremeWitness, ...]

    @property
    def attains_product(self) -> bool:
        return (self.q**2).value == (self.n1 * self.n2).value


def extreme_case_product(p1: int, p2: int) -> ProductExtremeCertificate:
    """Build and check the rank-2 construction attaining Q^2 = N1*N2."""
    if p1 == p2:
        raise ValueError("the two primes must be distinct")
    for p in (p1, p2):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
    places = []
    n1_exps: dict[int, int] = {}
    n2_exps: dict[int, int] = {}
    q_exps: dict[int, int] = {}
    for prime in sorted((p1, p2)):
        # chi_1 ramified exactly at p1, chi_2 exactly at p2, exponent 1.
        a1 = 1 if prime == p1 else 0
        a2 = 1 if prime == p2 else 0
        rep1 = GenericLocalRep(
            2, (EsiComponent(1, a1), EsiComponent(1, a2))
        )
        # chi = (chi_1 * chi_2)^(-1): unequal local exponents, so exact max.
        chi_range = twist_conductor_char(a1, a2)
        chi_exp = chi_range.value
        twisted_range = twist_conductor_rep(rep1, chi_exp)
        # chi_1 * chi = chi_2^(-1) and chi_2 * chi = chi_1^(-1): the twist
        # swaps the two ramification exponents.
        twisted_exp = a2 + a1
        if twisted_exp not in twisted_range:
            raise AssertionError(
                f"twisted exponent {twisted_exp} escapes range {twisted_range} at {prime}"
            )
        n1_exps[prime] = a1 + a2
        n2_exps[prime] = twisted_exp
        q_exps[prime] = chi_exp
        places.append(
            ProductExtremeWitness(prime, chi_exp, rep1, twisted_range, twisted_exp)
        )
    cert = ProductExtremeCertificate(
        p1,
        p2,
        FactoredInteger.from_map(n1_exps),
        FactoredInteger.from_map(n2_exps),
        FactoredInteger.from_map(q_exps),
        tuple(places),
    )
    if not cert.attains_product:
        raise AssertionError("product-sharpness certificate failed to validate")
    return cert


@dataclass(frozen=True)
class LcmExtremeWitness:
    prime: int
    pi1_exp: int
    chi_exp: int
    twisted_range: ConductorRange


@dataclass(frozen=True)
class LcmExtremeCertificate:
    """Executable witness that Q^rank = lcm(N1, N2) can be attained.

    Discrete series everywhere ramified, with the local conductor exponent
    divisible by the rank; twisting by a character of exponent A/rank per
    place hits the equality clause of the twist trichotomy at every place.
    """

    rank: int
    n1: FactoredInteger
    n2_upper: FactoredInteger
    q: FactoredInteger
    places: tuple[LcmExtremeWitness, ...]

    @property
    def attains_lcm(self) -> bool:
        return (self.q**self.rank).value == self.n1.lcm(self.n2_upper).value


def extreme_case_lcm(
    local_exps: Mapping[int, int], rank: int
) -> LcmExtremeCertificate:
    """Build and check the equality-clause construction per place.

    ``local_exps`` maps a prime (place of Q) to the conductor exponent of
    the discrete-series component there; every exponent must be divisible
    by ``rank``.
    """
    if rank < 1:
        raise ValueError(f"rank must be >= 1, got {rank}")
    places = []
    n1_exps: dict[int, int] = {}
    n2_exps: dict[int, int] = {}
    q_exps: dict[int, int] = {}
    for prime in sorted(local_exps):
        if not is_prime(prime):
            raise ValueError(f"place {prime} is not prime")
        a_pi = local_exps[prime]
        if a_pi % rank != 0:
            raise ValueError(
                f"exponent {a_pi} at {prime} is not divisible by rank {rank}"
            )
        a_chi = a_pi // rank
        if a_pi == 0:
            rng = ConductorRange.exact(0)
        else:
            rng = twist_conductor_esi(EsiComponent(rank, a_pi), a_chi)
        if rank * a_chi != max(a_pi, rng.hi):
            raise AssertionError(
                f"equality clause fails at {prime}: "
                f"{rank}*{a_chi} != max({a_pi}, {rng.hi})"
            )
        if a_pi:
            n1_exps[prime] = a_pi
            n2_exps[prime] = rng.hi
        if a_chi:
            q_exps[prime] = a_chi
        places.append(LcmExtremeWitness(prime, a_pi, a_chi, rng))
    cert = LcmExtremeCertificate(
        rank,
        FactoredInteger.from_map(n1_exps),
        FactoredInteger.from_map(n2_exps),
        FactoredInteger.from_map(q_exps),
        tuple(places),
    )
    if not cert.attains_lcm:
        raise AssertionError("lcm-sharpness certificate failed to validate")
    return cert
