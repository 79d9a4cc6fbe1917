"""Dense univariate polynomials over Q.

Polynomials are tuples of coefficients, lowest degree first, with trailing
zeros stripped; the zero polynomial is ``()``.  Coefficients are ``int`` or
``Fraction``.  Public helpers that face users (``charpoly``, Alexander
polynomials) convert to the highest-degree-first convention at the boundary.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

Poly = tuple


def strip(p: Sequence) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def degree(p: Poly) -> int:
    return len(p) - 1  # zero polynomial has degree -1


def lead(p: Poly):
    return p[-1] if p else 0


def add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return strip((p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n))


def sub(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return strip((p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0) for i in range(n))


def scale(p: Poly, c) -> Poly:
    return strip(c * a for a in p)


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return strip(out)


def divmod_poly(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(a) for a in p]
    dq = degree(q)
    lq = Fraction(lead(q))
    if len(r) - 1 < dq:
        return (), strip(r)
    quot = [Fraction(0)] * (len(r) - dq)
    for k in range(len(r) - 1 - dq, -1, -1):
        c = r[k + dq] / lq
        quot[k] = c
        if c:
            for j, b in enumerate(q):
                r[k + j] -= c * b
    return strip(_demote(quot)), strip(_demote(r[:dq]))


def rem(p: Poly, q: Poly) -> Poly:
    return divmod_poly(p, q)[1]


def monic(p: Poly) -> Poly:
    if not p:
        return ()
    c = Fraction(lead(p))
    return tuple(_demote([Fraction(a) / c for a in p]))


def gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd over Q."""
    while q:
        p, q = q, rem(p, q)
    return monic(p)


def xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return ``(g, s, t)`` with ``s*a + t*b = g`` and ``g`` monic."""
    r0, r1 = strip(a), strip(b)
    s0, s1 = (1,), ()
    t0, t1 = (), (1,)
    while r1:
        quo, r2 = divmod_poly(r0, r1)
        r0, r1 = r1, r2
        s0, s1 = s1, sub(s0, mul(quo, s1))
        t0, t1 = t1, sub(t0, mul(quo, t1))
    if not r0:
        return (), (), ()
    c = Fraction(lead(r0))
    return monic(r0), scale(s0, 1 / c), scale(t0, 1 / c)


def derivative(p: Poly) -> Poly:
    return strip(i * p[i] for i in range(1, len(p)))


def evaluate(p: Poly, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def compose_shift(p: Poly, c) -> Poly:
    """p(x + c)."""
    out: Poly = ()
    for a in reversed(p):
        out = add(mul(out, (c, 1)), (a,))
    return out


def squarefree_part(p: Poly) -> Poly:
    g = gcd(p, derivative(p))
    return monic(divmod_poly(p, g)[0]) if degree(g) > 0 else monic(p)


def to_int_poly(p: Poly) -> tuple[int, ...]:
    """Return ``p`` with integer coefficients or raise ValueError."""
    out = []
    for a in p:
        a = Fraction(a)
        if a.denominator != 1:
            raise ValueError(f"non-integral coefficient {a}")
        out.append(int(a))
    return tuple(out)


def _demote(coeffs):
    return [int(c) if isinstance(c, Fraction) and c.denominator == 1 else c for c in coeffs]


# -- real roots --------------------------------------------------------------


def sturm_sequence(p: Poly) -> list[Poly]:
    p = squarefree_part(p)
    seq = [p, derivative(p)]
    while seq[-1] and degree(seq[-1]) > 0:
        seq.append(scale(rem(seq[-2], seq[-1]), -1))
    return [s for s in seq if s]


def _sign_changes(values) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(seq: list[Poly], lo, hi) -> int:
    """Number of distinct real roots in the half-open interval (lo, hi]."""
    return _sign_changes(evaluate(s, lo) for s in seq) - _sign_changes(evaluate(s, hi) for s in seq)


def root_bound(p: Poly) -> Fraction:
    """Cauchy bound: every complex root has modulus below the returned value."""
    lc = Fraction(lead(p))
    return 1 + max((abs(Fraction(a) / lc) for a in p[:-1]), default=Fraction(0))


def isolate_real_roots(p: Poly) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals (lo, hi], increasing, each holding exactly one real root."""
    seq = sturm_sequence(p)
    if degree(seq[0]) < 1:
        return []
    b = root_bound(seq[0])
    out = []
    stack = [(-b, b)]
    while stack:
        lo, hi = stack.pop()
        k = count_roots(seq, lo, hi)
        if k == 0:
            continue
        if k == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((lo, mid))
        stack.append((mid, hi))
    return sorted(out)


def largest_real_root_interval(p: Poly) -> tuple[Fraction, Fraction]:
    seq = sturm_sequence(p)
    b = root_bound(seq[0])
    lo, hi = -b, b
    if count_roots(seq, lo, hi) == 0:
        raise ValueError("polynomial has no real roots")
    while count_roots(seq, lo, hi) > 1:
        mid = (lo + hi) / 2
        if count_roots(seq, mid, hi) >= 1:
            lo = mid
        else:
            hi = mid
    return lo, hi


def refine_root(seq: list[Poly], lo: Fraction, hi: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    """Bisect an isolating interval (lo, hi] down to ``hi - lo <= width``."""
    p = seq[0]
    while hi - lo > width:
        mid = (lo + hi) / 2
        if evaluate(p, mid) == 0:
            return mid - width / 4, mid
        if count_roots(seq, lo, mid) == 1:
            hi = mid
        else:
            lo = mid
    return lo, hi


# -- factorization of small monic integer polynomials --------------------------


def divisors(n: int) -> list[int]:
    n = abs(n)
    if n == 0:
        return [0]
    small = [d for d in range(1, math.isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def _integer_root(p: Poly):
    c0 = p[0]
    if c0 == 0:
        return 0
    for d in divisors(c0):
        for r in (d, -d):
            if evaluate(p, r) == 0:
                return r
    return None


def _quadratic_split(p: Poly):
    """Split a monic quartic without rational roots into two monic quadratics."""
    c0, c1, c2, c3, _ = p
    for m in divisors(c0):
        for b in (m, -m):
            d = c0 // b
            if d != b:
                num = c1 - b * c3
                if num % (d - b):
                    continue
                a = num // (d - b)
                c = c3 - a
                if b + d + a * c == c2:
                    return (b, a, 1), (d, c, 1)
            else:
                if c1 != b * c3:
                    continue
                disc = c3 * c3 - 4 * (c2 - 2 * b)
                if disc < 0 or math.isqrt(disc) ** 2 != disc or (c3 + math.isqrt(disc)) % 2:
                    continue
                a = (c3 + math.isqrt(disc)) // 2
                return (b, a, 1), (d, c3 - a, 1)
    return None


def factor_monic(p: Poly) -> tuple[list[tuple[int, ...]], bool]:
    """Factor a monic integer polynomial into monic integer factors.

    Returns ``(factors, complete)``.  For factors of degree at most four the
    split into irreducibles is complete; a leftover factor of degree five or
    more after removing rational roots is returned as-is with
    ``complete=False``.  Repeated factors appear once per multiplicity.
    """
    p = to_int_poly(p)
    if lead(p) != 1:
        raise ValueError("polynomial must be monic")
    factors: list[tuple[int, ...]] = []
    while degree(p) >= 1:
        r = _integer_root(p)
        if r is None:
            break
        factors.append((-r, 1))
        p = to_int_poly(divmod_poly(p, (-r, 1))[0])
    complete = True
    if degree(p) == 4:
        split = _quadratic_split(p)
        factors.extend(split if split else [p])
    elif 1 <= degree(p) <= 3:
        factors.append(p)
    elif degree(p) >= 5:
        factors.append(p)
        complete = False
    return factors, complete


def is_irreducible(p: Poly) -> bool | None:
    """True/False for degree <= 4; None (unknown) above unless a root is found."""
    fs, complete = factor_monic(p)
    if len(fs) > 1:
        return False
    return True if complete else None
