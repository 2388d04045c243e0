"""Conductor calculus at a finite place.

Local representations are abstracted down to the two integers the twist
arguments actually consume: a dimension and a conductor exponent.
Characters of the local field enter only through their conductor exponent
``a`` (``a = 0`` means unramified).  The central objects are:

* the level/conductor dictionary on the division-algebra side,
  ``conductor = level + degree - 1``;
* the twist-conductor trichotomy for an essentially square-integrable
  component of dimension ``n`` and conductor ``A`` twisted by a character
  of exponent ``a``:

      n*a > A   ->  exactly n*a      (norm-pullback level dominates)
      n*a < A   ->  exactly A        (the representation's level dominates)
      n*a = A   ->  somewhere in [n-1, A]   (genuinely indeterminate)

  The equality case only admits the upper bound A; the lower bound n-1 is
  forced by level >= 0.  Cancellation (twisting a norm-pullback by the
  inverse character) can land anywhere in between, so the result type is
  an interval.
"""

from __future__ import annotations

from dataclasses import dataclass, field

__all__ = [
    "ConductorRange",
    "EsiComponent",
    "GenericLocalRep",
    "DivisionAlgebraRep",
    "conductor_of_level",
    "level_of_conductor",
    "norm_level",
    "twist_conductor_char",
    "twist_conductor_esi",
    "twist_conductor_rep",
    "prop3_holds",
    "claim32_bound",
]


@dataclass(frozen=True)
class ConductorRange:
    """An exact conductor exponent or a closed integer interval [lo, hi]."""

    lo: int
    hi: int

    def __post_init__(self) -> None:
        if self.lo < 0 or self.hi < self.lo:
            raise ValueError(f"invalid range [{self.lo}, {self.hi}]")

    @classmethod
    def exact(cls, v: int) -> "ConductorRange":
        return cls(v, v)

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> int:
        if not self.is_exact:
            raise ValueError(f"range [{self.lo}, {self.hi}] is not exact")
        return self.lo

    def __contains__(self, v: int) -> bool:
        return self.lo <= v <= self.hi

    def __add__(self, other: "ConductorRange") -> "ConductorRange":
        return ConductorRange(self.lo + other.lo, self.hi + other.hi)

    def values(self) -> range:
        return range(self.lo, self.hi + 1)

    def __str__(self) -> str:
        return str(self.lo) if self.is_exact else f"[{self.lo}, {self.hi}]"


@dataclass(frozen=True)
class EsiComponent:
    """An essentially square-integrable atom: (dimension, conductor exponent).

    The conductor exponent of such a component is at least dim - 1 (its
    level on the division-algebra side is >= 0).
    """

    dim: int
    cond: int

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError(f"dimension must be >= 1, got {self.dim}")
        if self.cond < self.dim - 1:
            raise ValueError(
                f"conductor exponent {self.cond} below dim-1 = {self.dim - 1}"
            )

    @property
    def level(self) -> int:
        return self.cond - self.dim + 1


@dataclass(frozen=True)
class GenericLocalRep:
    """A smooth irreducible local representation as a multiset of esi atoms.

    Component order is irrelevant; the tuple is normalized on construction.
    ``central_char_trivial`` is a caller attestation used by the rank-2
    refinement, not something the exponent data can verify.
    """

    rank: int
    components: tuple[EsiComponent, ...]
    central_char_trivial: bool = False

    def __post_init__(self) -> None:
        comps = tuple(sorted(self.components, key=lambda c: (c.dim, c.cond)))
        object.__setattr__(self, "components", comps)
        total = sum(c.dim for c in comps)
        if total != self.rank:
            raise ValueError(f"component dimensions sum to {total}, expected rank {self.rank}")

    @property
    def cond(self) -> int:
        """Conductor exponent, additive over components."""
        return sum(c.cond for c in self.components)


@dataclass(frozen=True)
class DivisionAlgebraRep:
    """An irreducible representation of a degree-d division algebra, by level."""

    degree: int
    level: int

    def __post_init__(self) -> None:
        if self.degree < 1:
            raise ValueError(f"degree must be >= 1, got {self.degree}")
        if self.level < 0:
            raise ValueError(f"level must be >= 0, got {self.level}")

    @property
    def cond(self) -> int:
        return conductor_of_level(self.level, self.degree)


def conductor_of_level(level: int, degree: int) -> int:
    """Conductor exponent from the level: ``level + degree - 1``."""
    if level < 0:
        raise ValueError(f"level must be >= 0, got {level}")
    if degree < 1:
        raise ValueError(f"degree must be >= 1, got {degree}")
    return level + degree - 1


def level_of_conductor(cond: int, degree: int) -> int:
    """Level from the conductor exponent; requires ``cond >= degree - 1``."""
    if degree < 1:
        raise ValueError(f"degree must be >= 1, got {degree}")
    if cond < degree - 1:
        raise ValueError(
            f"no representation of degree {degree} has conductor exponent {cond}"
        )
    return cond - degree + 1


def norm_level(a: int, degree: int) -> int:
    """Level of a character pulled back through the reduced norm.

    For a ramified character of exponent a >= 1 this is d*(a-1) + 1.  An
    unramified pullback is trivial on the whole unit filtration, level 0
    (the reduced norm maps units onto units).
    """
    if a < 0:
        raise ValueError(f"conductor exponent must be >= 0, got {a}")
    if degree < 1:
        raise ValueError(f"degree must be >= 1, got {degree}")
    if a == 0:
        return 0
    return degree * (a - 1) + 1


def twist_conductor_char(a1: int, a2: int) -> ConductorRange:
    """Conductor exponent of a product of two local characters.

    Unequal exponents force the max; two unramified characters multiply to
    an unramified one; equal ramified exponents only admit the upper bound
    (the product can drop all the way to 0 when the factors are inverse).
    """
    if a1 < 0 or a2 < 0:
        raise ValueError("conductor exponents must be >= 0")
    if a1 != a2:
        return ConductorRange.exact(max(a1, a2))
    if a1 == 0:
        return ConductorRange.exact(0)
    return ConductorRange(0, a1)


def twist_conductor_esi(pi: EsiComponent, a: int) -> ConductorRange:
    """Twist-conductor trichotomy for an esi component (see module docs)."""
    if a < 0:
        raise ValueError(f"conductor exponent must be >= 0, got {a}")
    na = pi.dim * a
    if na > pi.cond:
        return ConductorRange.exact(na)
    if na < pi.cond:
        return ConductorRange.exact(pi.cond)
    return ConductorRange(pi.dim - 1, pi.cond)


def twist_conductor_rep(pi: GenericLocalRep, a: int) -> ConductorRange:
    """Twist-conductor interval for a generic representation.

    Twisting acts componentwise on the classification data and the
    conductor is additive over components, so the result is the interval
    sum of the per-component ranges.
    """
    total = ConductorRange.exact(0)
    for comp in pi.components:
        total = total + twist_conductor_esi(comp, a)
    return total


def prop3_holds(pi: EsiComponent, a: int, twisted_cond: int) -> bool:
    """Check a claimed twisted conductor against the inequality and its
    two equality clauses.

    ``twisted_cond`` must lie in ``twist_conductor_esi(pi, a)``; values
    outside the computed range are rejected outright.
    """
    rng = twist_conductor_esi(pi, a)
    if twisted_cond not in rng:
        raise ValueError(
            f"claimed twisted conductor {twisted_cond} outside computed range {rng}"
        )
    na = pi.dim * a
    m = max(twisted_cond, pi.cond)
    if na > m:
        return False
    if twisted_cond != pi.cond and na != m:
        return False
    if pi.cond == na and m != na:
        return False
    return True


def claim32_bound(pi: GenericLocalRep, a: int) -> int:
    """Rank-2 principal-series refinement with trivial central character.

    For a representation that decomposes as two characters of equal
    exponent a1 (forced by the trivial central character), returns the
    larger of the untwisted and twisted conductor exponents:

        a <= a1  ->  M = 2*a1  (the untwisted conductor already suffices)
        a >  a1  ->  M = 2*a   (both product characters keep exponent a)

    In both branches 2*a <= M, which is the local divisibility statement.
    """
    if not pi.central_char_trivial:
        raise ValueError("requires the trivial-central-character attestation")
    if pi.rank != 2 or len(pi.components) != 2:
        raise ValueError("requires rank 2 with two one-dimensional components")
    c1, c2 = pi.components
    if c1.dim != 1 or c2.dim != 1:
        raise ValueError("requires two one-dimensional components")
    if c1.cond != c2.cond:
        raise ValueError(
            f"component exponents must agree, got {c1.cond} and {c2.cond}"
        )
    if a < 0:
        raise ValueError(f"conductor exponent must be >= 0, got {a}")
    a1 = c1.cond
    if a <= a1:
        return 2 * a1
    # a > a1: each product character has exponent exactly max(a, a1) = a.
    twisted = twist_conductor_char(a, a1)
    assert twisted.is_exact and twisted.value == a
    return 2 * a
