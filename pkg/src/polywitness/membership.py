"""Closed-form membership in E^3, E^4, E^5 and the bound formulas around it."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import comb


class BadDimension(ValueError):
    pass


class Reason(str, enum.Enum):
    OK = "OK"
    BelowDegreeBound = "BelowDegreeBound"
    AboveBinomialBound = "AboveBinomialBound"
    InL = "InL"
    InG = "InG"
    Grunbaum4Exception = "Grunbaum4Exception"
    Steinitz3Violation = "Steinitz3Violation"
    # phi(v, d) is implied by the other gates for d <= 5; kept for completeness
    BelowPhi = "BelowPhi"


G5 = frozenset({(8, 20), (9, 25), (13, 35)})
GRUNBAUM4 = frozenset({(6, 12), (7, 14), (8, 17), (10, 20)})
PYRAMID_REGION_EXCEPTIONS = frozenset({(7, 18), (8, 21), (9, 25), (11, 30)})


@dataclass(frozen=True)
class MembershipVerdict:
    inside: bool
    reason: Reason

    def __str__(self):
        return "IN" if self.inside else f"OUT: {_short(self.reason)}"


def _short(reason: Reason) -> str:
    return {Reason.InL: "L", Reason.InG: "G"}.get(reason, reason.value)


def l_value(v: int) -> int:
    """Edge count of the column-v point of L: floor(5v/2 + 1)."""
    return (5 * v + 2) // 2


def in_L(v: int, e: int) -> bool:
    return v >= 7 and e == l_value(v)


def in_E(d: int, v: int, e: int) -> MembershipVerdict:
    if d not in (3, 4, 5):
        raise BadDimension(f"membership is only known for d in 3..5, got {d}")
    if v < 0 or e < 0:
        raise ValueError("vertex and edge counts must be nonnegative")
    # fewer than d + 1 vertices cannot span d dimensions
    if 2 * e < d * v or v < d + 1:
        return MembershipVerdict(False, Reason.BelowDegreeBound)
    if e > comb(v, 2):
        return MembershipVerdict(False, Reason.AboveBinomialBound)
    if d == 3:
        if e > 3 * v - 6:
            return MembershipVerdict(False, Reason.Steinitz3Violation)
    elif d == 4:
        if (v, e) in GRUNBAUM4:
            return MembershipVerdict(False, Reason.Grunbaum4Exception)
    else:
        if in_L(v, e):
            return MembershipVerdict(False, Reason.InL)
        if (v, e) in G5:
            return MembershipVerdict(False, Reason.InG)
    return MembershipVerdict(True, Reason.OK)


def phi(v: int, d: int) -> Fraction:
    """Lower bound on edges of a d-polytope with v <= 2d vertices."""
    return Fraction(d * v, 2) + Fraction((v - d - 1) * (2 * d - v), 2)


def pyramid_region_check(v: int, e: int) -> bool:
    """True iff (v, e) lies in the part of E^5 reached by pyramids over 4-polytopes."""
    return 3 * v - 3 <= e <= comb(v, 2) and (v, e) not in PYRAMID_REGION_EXCEPTIONS


def column(d: int, v: int) -> list[int]:
    """All e with (v, e) in E^d."""
    lo = (d * v + 1) // 2
    return [e for e in range(lo, comb(v, 2) + 1) if in_E(d, v, e).inside]
