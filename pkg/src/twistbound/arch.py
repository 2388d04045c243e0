"""Archimedean conductors, gamma shifts, and the explicit twist bounds.

Parameters at an archimedean place:

* complex place: every summand is a character (k, nu) acting as
  (z/|z|)^k |z|^(2*nu) -- the complex norm convention is |z|_C = |z|^2
  throughout, so nu is stored in that normalization;
* real place: a summand is either one-dimensional, recorded as
  (eps, nu) with eps = +-1 the value at the nontrivial Weyl element, or
  two-dimensional, induced from (k, nu) with k >= 1.

Conductors per summand (chi already folded in by ``twist_arch``):

    complex (k, nu):        (1 + |nu + |k|/2|)^2
    real one-dim (eps, nu):  1 + |nu + (1-eps)/2|
    real two-dim (k, nu):   (1 + |nu + k/2|)^2

Twisting a real two-dimensional summand absorbs the sign of the twisting
character (induction swallows it), which is why the difference formula for
that case cannot recover the sign from the summands alone.

The unitary strip is the constraint |Re nu| <= 1/2.  Strip enforcement is
a validation mode, not a type invariant: the sharpness witness of the
real-place bound lives outside the strip and must remain evaluable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .factored import FactoredInteger, divides_pow

__all__ = [
    "Place",
    "GammaType",
    "ComplexParam",
    "RealOneDim",
    "RealTwoDim",
    "ArchRep",
    "ArchChar",
    "twist_arch",
    "cond_summand",
    "gamma_shift",
    "cond_rep",
    "char_cond",
    "cond_from_difference",
    "claim31_holds",
    "BoundCheck",
    "lemma_bound_check",
    "analytic_conductor",
    "GlobalCharData",
    "GlobalRepData",
    "TheoremBResult",
    "theorem_b_check",
    "in_strip",
    "rep_to_json",
    "rep_from_json",
    "char_to_json",
    "char_from_json",
    "REL_TOL",
]

# Conductors are smooth products of absolute values; no cancellation risk
# at desk scale, so one relative tolerance serves every comparison.
REL_TOL = 1e-12


class Place(Enum):
    REAL = "R"
    COMPLEX = "C"


class GammaType(Enum):
    R = "R"  # pi^(-s/2) Gamma(s/2)
    C = "C"  # 2 (2 pi)^(-s) Gamma(s)


@dataclass(frozen=True)
class ComplexParam:
    """Character (z/|z|)^k |z|^(2 nu) of the complex units."""

    k: int
    nu: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "nu", complex(self.nu))


@dataclass(frozen=True)
class RealOneDim:
    """One-dimensional real-place summand; eps is the value at j."""

    eps: int
    nu: complex

    def __post_init__(self) -> None:
        if self.eps not in (1, -1):
            raise ValueError(f"eps must be +1 or -1, got {self.eps}")
        object.__setattr__(self, "nu", complex(self.nu))


@dataclass(frozen=True)
class RealTwoDim:
    """Two-dimensional real-place summand induced from (k, nu), k >= 1."""

    k: int
    nu: complex

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError(f"two-dimensional summand needs k >= 1, got {self.k}")
        object.__setattr__(self, "nu", complex(self.nu))


Summand = ComplexParam | RealOneDim | RealTwoDim


def _summand_dim(s: Summand) -> int:
    return 2 if isinstance(s, RealTwoDim) else 1


@dataclass(frozen=True)
class ArchRep:
    """A direct sum of summands at one archimedean place."""

    place: Place
    summands: tuple[Summand, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "summands", tuple(self.summands))
        for s in self.summands:
            if self.place is Place.COMPLEX and not isinstance(s, ComplexParam):
                raise ValueError("complex place admits ComplexParam summands only")
            if self.place is Place.REAL and isinstance(s, ComplexParam):
                raise ValueError("real place admits RealOneDim/RealTwoDim summands only")

    @property
    def dim(self) -> int:
        return sum(_summand_dim(s) for s in self.summands)


@dataclass(frozen=True)
class ArchChar:
    """A one-dimensional twisting datum matching its place."""

    place: Place
    param: ComplexParam | RealOneDim

    def __post_init__(self) -> None:
        if self.place is Place.COMPLEX and not isinstance(self.param, ComplexParam):
            raise ValueError("a complex-place character is a ComplexParam")
        if self.place is Place.REAL and not isinstance(self.param, RealOneDim):
            raise ValueError("a real-place character is a RealOneDim")

    @classmethod
    def trivial(cls, place: Place) -> "ArchChar":
        if place is Place.COMPLEX:
            return cls(place, ComplexParam(0, 0))
        return cls(place, RealOneDim(1, 0))

    def inverse(self) -> "ArchChar":
        if isinstance(self.param, ComplexParam):
            return ArchChar(self.place, ComplexParam(-self.param.k, -self.param.nu))
        return ArchChar(self.place, RealOneDim(self.param.eps, -self.param.nu))


def in_strip(nu: complex, tol: float = 0.0) -> bool:
    return abs(complex(nu).real) <= 0.5 + tol


def twist_arch(rep: ArchRep, chi: ArchChar) -> ArchRep:
    """Twist summand by summand; the real two-dimensional case keeps its k
    and absorbs the sign of chi."""
    if rep.place is not chi.place:
        raise ValueError("place mismatch between representation and character")
    out: list[Summand] = []
    if rep.place is Place.COMPLEX:
        assert isinstance(chi.param, ComplexParam)
        kp, nup = chi.param.k, chi.param.nu
        for s in rep.summands:
            assert isinstance(s, ComplexParam)
            out.append(ComplexParam(s.k + kp, s.nu + nup))
    else:
        assert isinstance(chi.param, RealOneDim)
        epsp, nup = chi.param.eps, chi.param.nu
        for s in rep.summands:
            if isinstance(s, RealOneDim):
                out.append(RealOneDim(s.eps * epsp, s.nu + nup))
            else:
                assert isinstance(s, RealTwoDim)
                out.append(RealTwoDim(s.k, s.nu + nup))
    return ArchRep(rep.place, tuple(out))


def gamma_shift(s: Summand) -> tuple[GammaType, complex]:
    """Gamma type and shift of a summand's local factor."""
    if isinstance(s, ComplexParam):
        return (GammaType.C, s.nu + abs(s.k) / 2)
    if isinstance(s, RealOneDim):
        return (GammaType.R, s.nu + (1 - s.eps) / 2)
    return (GammaType.C, s.nu + s.k / 2)


def cond_summand(s: Summand) -> float:
    """(1 + |shift|) to the first or second power, by gamma type."""
    gtype, shift = gamma_shift(s)
    base = 1.0 + abs(shift)
    return base if gtype is GammaType.R else base * base


def cond_rep(rep: ArchRep) -> float:
    """Archimedean conductor: product over summands (empty product is 1)."""
    out = 1.0
    for s in rep.summands:
        out *= cond_summand(s)
    return out


def char_cond(chi: ArchChar) -> float:
    """The character's own conductor, as a one-dimensional summand."""
    return cond_summand(chi.param)


def cond_from_difference(
    s1: Summand, s2: Summand, twist_sign: int | None = None
) -> float:
    """Character conductor recovered from a matching summand pair of
    sigma_1 and sigma_2 = sigma_1 (x) chi.

    For a real two-dimensional pair the sign of chi was absorbed by the
    induction, so it must be supplied as ``twist_sign``; everywhere else
    the pair determines the character datum.
    """
    if isinstance(s1, ComplexParam):
        if not isinstance(s2, ComplexParam):
            raise ValueError("mismatched summand kinds")
        diff = ComplexParam(s2.k - s1.k, s2.nu - s1.nu)
        return cond_summand(diff)
    if isinstance(s1, RealOneDim):
        if not isinstance(s2, RealOneDim):
            raise ValueError("mismatched summand kinds")
        return cond_summand(RealOneDim(s1.eps * s2.eps, s2.nu - s1.nu))
    if not isinstance(s2, RealTwoDim):
        raise ValueError("mismatched summand kinds")
    if s1.k != s2.k:
        raise ValueError("two-dimensional pair must share k")
    if twist_sign is None:
        raise ValueError(
            "sign of the twisting character is not recoverable from a "
            "two-dimensional pair; pass twist_sign"
        )
    return cond_summand(RealOneDim(twist_sign, s2.nu - s1.nu))


def claim31_holds(k: int, nu: complex, tol: float = 0.0) -> bool:
    """The elementary inequality |nu| + |k|/2 <= 1 + 3|nu + |k|/2|.

    For |k| >= 2 its proof needs the unitary strip, so outside the strip
    the call is rejected rather than answered unreliably.
    """
    nu = complex(nu)
    if abs(k) >= 2 and not in_strip(nu):
        raise ValueError(
            f"|k| >= 2 requires |Re nu| <= 1/2; got Re nu = {nu.real}"
        )
    lhs = abs(nu) + abs(k) / 2
    rhs = 1 + 3 * abs(nu + abs(k) / 2)
    return lhs <= rhs + tol


@dataclass(frozen=True)
class BoundCheck:
    ratio: float
    holds: bool


def lemma_bound_check(
    sigma1: ArchRep, chi: ArchChar, allow_outside_strip: bool = False
) -> BoundCheck:
    """Check C(chi) <= c * [C(sigma1) C(sigma2)]^(1/n) with c = 3 at a real
    place and c = 9 at a complex place, where sigma2 = sigma1 (x) chi.

    Both representations' parameters must sit in the unitary strip unless
    ``allow_outside_strip`` is set (the sharpness witness needs that).
    """
    sigma2 = twist_arch(sigma1, chi)
    if not allow_outside_strip:
        for rep in (sigma1, sigma2):
            for s in rep.summands:
                if not in_strip(s.nu):
                    raise ValueError(
                        f"summand parameter {s.nu} outside the unitary strip; "
                        "pass allow_outside_strip=True to evaluate anyway"
                    )
    n = sigma1.dim
    c = 3.0 if sigma1.place is Place.REAL else 9.0
    bound = c * (cond_rep(sigma1) * cond_rep(sigma2)) ** (1.0 / n)
    ratio = char_cond(chi) / bound
    return BoundCheck(ratio, ratio <= 1.0 + REL_TOL)


def analytic_conductor(
    cond_fin: FactoredInteger | int, arch_parts: Sequence[ArchRep]
) -> float:
    """Arithmetic conductor times the product of archimedean conductors."""
    n = cond_fin.value if isinstance(cond_fin, FactoredInteger) else cond_fin
    if n < 1:
        raise ValueError(f"finite conductor must be >= 1, got {n}")
    out = float(n)
    for rep in arch_parts:
        out *= cond_rep(rep)
    return out


@dataclass(frozen=True)
class GlobalCharData:
    """Finite conductor plus per-place characters of a Hecke character."""

    cond_fin: FactoredInteger
    arch: tuple[ArchChar, ...]

    @property
    def analytic_conductor(self) -> float:
        out = float(self.cond_fin.value)
        for chi in self.arch:
            out *= char_cond(chi)
        return out


@dataclass(frozen=True)
class GlobalRepData:
    """Finite conductor plus per-place archimedean data of a cusp form."""

    cond_fin: FactoredInteger
    arch: tuple[ArchRep, ...]

    @property
    def analytic_conductor(self) -> float:
        return analytic_conductor(self.cond_fin, self.arch)


@dataclass(frozen=True)
class TheoremBResult:
    lhs: float
    rhs: float
    holds: bool


def theorem_b_check(
    chi_data: GlobalCharData,
    pi1_data: GlobalRepData,
    pi2_data: GlobalRepData,
    degree: int,
) -> TheoremBResult:
    """Analytic-conductor comparison C(chi) <= 3^degree * (C1 C2)^(1/n).

    Validates the global shape first: matching place lists with
    r_real + 2*r_complex = degree, pi_2's archimedean data equal to the
    twist of pi_1's, and finite conductors consistent with the product
    divisibility bound.
    """
    places = [rep.place for rep in pi1_data.arch]
    if [rep.place for rep in pi2_data.arch] != places or [
        chi.place for chi in chi_data.arch
    ] != places:
        raise ValueError("place lists of chi, pi_1, pi_2 must match")
    r_real = sum(1 for p in places if p is Place.REAL)
    r_complex = len(places) - r_real
    if r_real + 2 * r_complex != degree:
        raise ValueError(
            f"inconsistent place counts: {r_real} real + 2*{r_complex} complex "
            f"!= degree {degree}"
        )
    dims = {rep.dim for rep in pi1_data.arch} | {rep.dim for rep in pi2_data.arch}
    if len(dims) != 1:
        raise ValueError(f"ranks disagree across places: {sorted(dims)}")
    n = dims.pop()
    for rep1, rep2, chi in zip(pi1_data.arch, pi2_data.arch, chi_data.arch):
        if twist_arch(rep1, chi) != rep2:
            raise ValueError("pi_2 archimedean data is not the twist of pi_1's")
    if not divides_pow(chi_data.cond_fin, n, pi1_data.cond_fin * pi2_data.cond_fin):
        raise ValueError(
            "finite conductors violate the divisibility bound Q^n | N1*N2"
        )
    lhs = chi_data.analytic_conductor
    rhs = (
        3.0**degree
        * (pi1_data.analytic_conductor * pi2_data.analytic_conductor) ** (1.0 / n)
    )
    return TheoremBResult(lhs, rhs, lhs <= rhs * (1.0 + REL_TOL))


# JSON encoding: {"place": "R"|"C", "summands": [...]} with summand forms
# {"type": "one", "eps": +-1, "nu": [re, im]},
# {"type": "two", "k": int, "nu": [re, im]}, and, at a complex place,
# {"k": int, "nu": [re, im]}.

def _nu_to_json(nu: complex) -> list[float]:
    return [nu.real, nu.imag]


def _nu_from_json(v: object) -> complex:
    if (
        not isinstance(v, (list, tuple))
        or len(v) != 2
        or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in v)
    ):
        raise ValueError(f"nu must be a [re, im] pair, got {v!r}")
    return complex(v[0], v[1])


def _summand_to_json(s: Summand) -> dict:
    if isinstance(s, ComplexParam):
        return {"k": s.k, "nu": _nu_to_json(s.nu)}
    if isinstance(s, RealOneDim):
        return {"type": "one", "eps": s.eps, "nu": _nu_to_json(s.nu)}
    return {"type": "two", "k": s.k, "nu": _nu_to_json(s.nu)}


def _summand_from_json(d: object, place: Place) -> Summand:
    if not isinstance(d, dict):
        raise ValueError(f"summand must be an object, got {d!r}")
    nu = _nu_from_json(d.get("nu"))
    if place is Place.COMPLEX:
        if "type" in d:
            raise ValueError("complex-place summands carry no 'type' tag")
        k = d.get("k")
        if not isinstance(k, int) or isinstance(k, bool):
            raise ValueError(f"complex summand needs integer k, got {k!r}")
        return ComplexParam(k, nu)
    kind = d.get("type")
    if kind == "one":
        eps = d.get("eps")
        if eps not in (1, -1):
            raise ValueError(f"one-dimensional summand needs eps in {{1, -1}}, got {eps!r}")
        return RealOneDim(eps, nu)
    if kind == "two":
        k = d.get("k")
        if not isinstance(k, int) or isinstance(k, bool) or k < 1:
            raise ValueError(f"two-dimensional summand needs integer k >= 1, got {k!r}")
        return RealTwoDim(k, nu)
    raise ValueError(f"real-place summand type must be 'one' or 'two', got {kind!r}")


def rep_to_json(rep: ArchRep) -> dict:
    return {
        "place": rep.place.value,
        "summands": [_summand_to_json(s) for s in rep.summands],
    }


def rep_from_json(d: object) -> ArchRep:
    if not isinstance(d, dict):
        raise ValueError(f"representation must be an object, got {d!r}")
    place_tag = d.get("place")
    try:
        place = Place(place_tag)
    except ValueError as exc:
        raise ValueError(f"place must be 'R' or 'C', got {place_tag!r}") from exc
    summands = d.get("summands")
    if not isinstance(summands, list):
        raise ValueError("summands must be a list")
    return ArchRep(place, tuple(_summand_from_json(s, place) for s in summands))


def char_to_json(chi: ArchChar) -> dict:
    return {"place": chi.place.value, "summands": [_summand_to_json(chi.param)]}


def char_from_json(d: object) -> ArchChar:
    rep = rep_from_json(d)
    if len(rep.summands) != 1:
        raise ValueError("a character carries exactly one summand")
    param = rep.summands[0]
    if isinstance(param, RealTwoDim):
        raise ValueError("a character summand must be one-dimensional")
    return ArchChar(rep.place, param)
