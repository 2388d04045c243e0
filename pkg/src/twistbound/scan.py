"""Twist-equivalence scanner for Hecke-eigenvalue tables.

Given two eigenvalue tables, the admissible-conductor bound prunes the
character search down to primitive characters whose conductor Q satisfies
Q^n | N1*N2 (or the attested lcm variants), and each surviving candidate
chi is tested against lambda_p(f) * chi(p) = lambda_p(g) on every shared
prime away from the levels.

"All but finitely many primes" becomes: all shared primes coprime to
Q*N1*N2, with a configurable evidence floor below which the verdict is
INSUFFICIENT_DATA rather than a (meaningless) match.  The floor is an
engineering choice, not something the divisibility bound supplies.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from math import gcd as int_gcd
from typing import Mapping

from .bound import BoundMode, admissible_moduli
from .dirichlet import DirichletChar, primitive_characters
from .factored import FactoredInteger, factor, is_prime

__all__ = [
    "EigenvalueTable",
    "ScanConfig",
    "ScanMatch",
    "Verdict",
    "ScanResult",
    "shared_good_primes",
    "prefilter_abs",
    "candidate_characters",
    "scan",
    "plant_twist",
]


@dataclass(frozen=True, eq=False)
class EigenvalueTable:
    """Labelled eigenvalue data: level, rank, and a prime -> a_p map."""

    label: str
    level: FactoredInteger
    ap: Mapping[int, complex]
    rank: int = 2
    weight_parity: int | None = None

    def __post_init__(self) -> None:
        if self.rank < 1:
            raise ValueError(f"rank must be >= 1, got {self.rank}")
        if self.weight_parity not in (None, 1, -1):
            raise ValueError(f"weight parity must be +-1 or None, got {self.weight_parity}")
        ap = {}
        for p, v in self.ap.items():
            if not is_prime(p):
                raise ValueError(f"eigenvalue key {p} is not prime")
            z = complex(v)
            if not (abs(z.real) < float("inf") and abs(z.imag) < float("inf")):
                raise ValueError(f"eigenvalue at {p} is not finite: {v!r}")
            ap[p] = z
        object.__setattr__(self, "ap", ap)

    @property
    def level_value(self) -> int:
        return self.level.value


@dataclass(frozen=True)
class ScanConfig:
    tolerance: float = 1e-8
    min_good_primes: int = 20
    mode: BoundMode = BoundMode.PRODUCT
    parity_filter: bool = False

    def __post_init__(self) -> None:
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if self.min_good_primes < 1:
            raise ValueError("min_good_primes must be >= 1")


@dataclass(frozen=True)
class ScanMatch:
    label: str
    conductor: FactoredInteger
    max_deviation: float
    primes_tested: int


class Verdict(Enum):
    MATCH = "MATCH"
    NO_MATCH = "NO_MATCH"
    INSUFFICIENT_DATA = "INSUFFICIENT_DATA"


@dataclass(frozen=True)
class ScanResult:
    candidates_tested: int
    matches: tuple[ScanMatch, ...]
    verdict: Verdict


def shared_good_primes(f: EigenvalueTable, g: EigenvalueTable) -> list[int]:
    """Shared primes coprime to both levels, ascending."""
    nn = f.level_value * g.level_value
    return sorted(p for p in f.ap.keys() & g.ap.keys() if nn % p != 0)


def prefilter_abs(f: EigenvalueTable, g: EigenvalueTable, cfg: ScanConfig) -> bool:
    """Absolute-value screen: a unitary twist cannot change |a_p|.

    False is a certified NO_MATCH for unitary characters; True decides
    nothing on its own.
    """
    for p in shared_good_primes(f, g):
        zf, zg = f.ap[p], g.ap[p]
        if abs(abs(zf) - abs(zg)) > cfg.tolerance * max(1.0, abs(zf)):
            return False
    return True


def candidate_characters(
    n1: FactoredInteger | int,
    n2: FactoredInteger | int,
    rank: int,
    mode: BoundMode,
) -> list[DirichletChar]:
    """Primitive characters at every admissible conductor, canonical order.

    The trivial modulus contributes the principal character; within a
    modulus the label order is kept, so the overall order is deterministic.
    """
    out: list[DirichletChar] = []
    for q in admissible_moduli(n1, n2, rank, mode):
        out.extend(primitive_characters(q))
    return out


def scan(f: EigenvalueTable, g: EigenvalueTable, cfg: ScanConfig | None = None) -> ScanResult:
    """Find all pruned candidates chi with a_p(f) chi(p) = a_p(g) on the
    shared good primes.

    A candidate is only evaluable when its good-prime count reaches the
    configured floor; INSUFFICIENT_DATA means no candidate was evaluable.
    The absolute-value prefilter certifies NO_MATCH without per-candidate
    work when it fails.
    """
    if cfg is None:
        cfg = ScanConfig()
    if f.rank != g.rank:
        raise ValueError(f"rank mismatch: {f.rank} != {g.rank}")
    if not prefilter_abs(f, g, cfg):
        return ScanResult(0, (), Verdict.NO_MATCH)
    good = shared_good_primes(f, g)
    candidates = candidate_characters(f.level, g.level, f.rank, cfg.mode)
    want_parity: int | None = None
    if cfg.parity_filter and f.weight_parity is not None and g.weight_parity is not None:
        want_parity = f.weight_parity * g.weight_parity

    tested = 0
    any_evaluable = False
    matches: list[ScanMatch] = []
    for chi in candidates:
        if want_parity is not None and chi.parity() != want_parity:
            continue
        q = chi.modulus_value
        primes = [p for p in good if int_gcd(p, q) == 1]
        if len(primes) < cfg.min_good_primes:
            continue
        any_evaluable = True
        tested += 1
        max_dev = 0.0
        ok = True
        for p in primes:
            zf = f.ap[p]
            dev = abs(zf * chi(p).to_complex() - g.ap[p])
            if dev > cfg.tolerance * max(1.0, abs(zf)):
                ok = False
                break
            if dev > max_dev:
                max_dev = dev
        if ok:
            matches.append(ScanMatch(chi.label, chi.conductor(), max_dev, len(primes)))
    if matches:
        verdict = Verdict.MATCH
    elif any_evaluable:
        verdict = Verdict.NO_MATCH
    else:
        verdict = Verdict.INSUFFICIENT_DATA
    return ScanResult(tested, tuple(matches), verdict)


def plant_twist(
    f: EigenvalueTable,
    chi: DirichletChar,
    level2: FactoredInteger | int,
) -> EigenvalueTable:
    """Synthesize g = f (x) chi: multiply by the primitive values away from
    the conductor, drop the primes at the conductor, set the given level.

    The usual container choice for tests is lcm(N1, Q^2); that is a
    convenient default for fixtures, not a theorem, so the level is the
    caller's to supply.
    """
    prim = chi.primitive_part()
    q = prim.modulus_value
    n2 = level2 if isinstance(level2, FactoredInteger) else factor(level2)
    ap: dict[int, complex] = {}
    for p, z in f.ap.items():
        if int_gcd(p, q) != 1:
            continue
        ap[p] = z * prim(p).to_complex()
    parity = None
    if f.weight_parity is not None:
        parity = f.weight_parity * prim.parity()
    return EigenvalueTable(
        label=f"{f.label}-x-{prim.label}",
        level=n2,
        ap=ap,
        rank=f.rank,
        weight_parity=parity,
    )
