"""Regular continued fractions of quadratic irrationals.

The expansion runs the classical ``(P + sqrt D) / Q`` recurrence, keeping
``Q | D - P^2`` so every state is an exact integer pair; the period starts
at the first state that repeats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .numberfield import QuadraticSurd


@dataclass(frozen=True)
class SurdCF:
    value: object  # QuadraticSurd, or Fraction when terminating
    preperiod: tuple[int, ...]
    period: tuple[int, ...]
    terminating: bool = False

    def digits(self, count: int) -> list[int]:
        """The first ``count`` partial quotients (fewer if the expansion terminates)."""
        out = list(self.preperiod[:count])
        if self.terminating:
            return out
        while len(out) < count:
            out.extend(self.period)
        return out[:count]

    def convergents(self, count: int) -> list[Fraction]:
        p0, p1 = 0, 1
        q0, q1 = 1, 0
        out = []
        for a in self.digits(count):
            p0, p1 = p1, a * p1 + p0
            q0, q1 = q1, a * q1 + q0
            out.append(Fraction(p1, q1))
        return out


def _euclid(x: Fraction) -> tuple[int, ...]:
    out = []
    while True:
        a = math.floor(x)
        out.append(a)
        x -= a
        if x == 0:
            return tuple(out)
        x = 1 / x


def _pq_floor(P: int, D: int, Q: int, s: int) -> int:
    # floor((P + sqrt D) / Q) for non-square D, with s = isqrt(D)
    if Q > 0:
        return (P + s) // Q
    return -((P + s) // (-Q)) - 1


def cf_expand(x) -> SurdCF:
    """Expand a quadratic surd (or a rational, giving a terminating result)."""
    if not isinstance(x, QuadraticSurd):
        x = Fraction(x)
        return SurdCF(x, _euclid(x), (), True)
    if x.b == 0:
        return SurdCF(x.a, _euclid(x.a), (), True)
    L = math.lcm(x.a.denominator, x.b.denominator)
    A, B = int(x.a * L), int(x.b * L)
    D = B * B * x.d
    if B > 0:
        P, Q = A, L
    else:
        P, Q = -A, -L
    if (D - P * P) % Q:
        P, D, Q = P * abs(Q), D * Q * Q, Q * abs(Q)
    s = math.isqrt(D)
    seen: dict[tuple[int, int], int] = {}
    digits: list[int] = []
    while (P, Q) not in seen:
        seen[(P, Q)] = len(digits)
        a = _pq_floor(P, D, Q, s)
        digits.append(a)
        P = a * Q - P
        Q = (D - P * P) // Q
    j = seen[(P, Q)]
    return SurdCF(x, tuple(digits[:j]), tuple(digits[j:]))


def rotations(period: Sequence[int]) -> list[tuple[int, ...]]:
    p = tuple(period)
    return [p[i:] + p[:i] for i in range(len(p))]


def canonical_rotation(period: Sequence[int]) -> tuple[int, ...]:
    return min(rotations(period)) if period else ()


def cyclically_equivalent(p1: Sequence[int], p2: Sequence[int]) -> bool:
    return len(p1) == len(p2) and tuple(p2) in rotations(p1)


def digit_matrix(a: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """The Moebius matrix of ``x -> a + 1/x``."""
    return ((a, 1), (1, 0))
