"""Real algebraic number fields with a designated real embedding.

A field is ``Q[t]/(p(t))`` for a monic integer polynomial ``p`` together with
a rational interval isolating one real root of ``p``; that root is the image
of the generator under the embedding used for every comparison and floor.
Fields built from Perron-Frobenius data designate the dominant root.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Sequence

from . import polys
from .errors import DomainError, UsageError, ZeroDivisorError
from .exactnum import det_rational

TRIAL_DIVISION_LIMIT = 10**6


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Write a nonzero integer as ``k**2 * d`` with ``d`` squarefree.

    Trial division runs up to 10**6.  A leftover cofactor below 10**18 is
    then either a perfect square or squarefree; larger leftovers raise
    ``DomainError`` because a big square factor cannot be ruled out.
    """
    if n == 0:
        raise DomainError("zero has no squarefree part")
    sign = -1 if n < 0 else 1
    n = abs(n)
    k, d = 1, 1
    p = 2
    while p <= TRIAL_DIVISION_LIMIT and p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        k *= p ** (e // 2)
        if e % 2:
            d *= p
        p += 1 if p == 2 else 2
    if n > 1:
        r = math.isqrt(n)
        if r * r == n:
            k *= r
        elif n < TRIAL_DIVISION_LIMIT**3:
            d *= n
        else:
            raise DomainError(f"cannot certify the squarefree part of {n} by trial division")
    return k, sign * d


def is_squarefree(n: int) -> bool:
    return n != 0 and squarefree_decompose(n)[0] == 1


@lru_cache(maxsize=4096)
def _refined(poly: tuple, lo: Fraction, hi: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    return polys.refine_root(polys.sturm_sequence(poly), lo, hi, width)


class NumberField:
    """``Q(lambda)`` with ``lambda`` the root of ``minpoly`` isolated by ``interval``.

    ``minpoly`` is given highest degree first.  Irreducibility is proven for
    degree <= 4 (a reducible polynomial raises ``DomainError``); above that
    the field is accepted with ``verified=False`` and a warning, and any zero
    divisor met during arithmetic surfaces as ``ZeroDivisorError``.
    """

    def __init__(self, minpoly: Sequence[int], interval=None, *, check: bool = True):
        coeffs = [int(c) for c in minpoly]
        if not coeffs or coeffs[0] != 1:
            raise DomainError("minimal polynomial must be monic with integer coefficients")
        self.minpoly = tuple(coeffs)
        self._poly = tuple(reversed(coeffs))
        self.degree = len(coeffs) - 1
        if self.degree < 1:
            raise DomainError("field polynomial must have degree >= 1")
        self._seq = polys.sturm_sequence(self._poly)
        if interval is None:
            interval = polys.largest_real_root_interval(self._poly)
        lo, hi = Fraction(interval[0]), Fraction(interval[1])
        if polys.count_roots(self._seq, lo, hi) != 1:
            raise DomainError(f"interval ({lo}, {hi}] does not isolate exactly one root")
        self.interval = (lo, hi)
        self.warnings: tuple[str, ...] = ()
        self.verified = True
        if check:
            irreducible = polys.is_irreducible(self._poly)
            if irreducible is False:
                raise DomainError(f"polynomial {list(self.minpoly)} is reducible over Q")
            if irreducible is None:
                self.verified = False
                self.warnings = (f"irreducibility of degree-{self.degree} polynomial not verified",)

    @classmethod
    def quadratic(cls, d: int) -> "NumberField":
        """``Q(sqrt d)`` with the positive square root designated."""
        return _quadratic_field(int(d))

    # -- elements -----------------------------------------------------------

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise UsageError("element belongs to a different field")
            return value
        if isinstance(value, QuadraticSurd):
            return value.to_field(self)
        if isinstance(value, (int, Rational)):
            return FieldElement(self, (Fraction(value),) + (0,) * (self.degree - 1))
        coords = list(value)
        if len(coords) != self.degree:
            raise UsageError(f"expected {self.degree} coordinates, got {len(coords)}")
        return FieldElement(self, coords)

    @property
    def gen(self) -> "FieldElement":
        if self.degree == 1:
            return self(-Fraction(self._poly[0]))
        return FieldElement(self, (0, 1) + (0,) * (self.degree - 2))

    @property
    def zero(self) -> "FieldElement":
        return self(0)

    @property
    def one(self) -> "FieldElement":
        return self(1)

    def root_interval(self, width) -> tuple[Fraction, Fraction]:
        """Isolating interval for the designated root of width at most ``width``."""
        return _refined(self._poly, self.interval[0], self.interval[1], Fraction(width))

    def approx_root(self, bits: int = 64) -> Fraction:
        lo, hi = self.root_interval(Fraction(1, 2**bits))
        return (lo + hi) / 2

    def describe_embedding(self) -> str:
        lo, hi = self.root_interval(Fraction(1, 2**40))
        return f"root of {list(self.minpoly)} in ({float(lo):.12g}, {float(hi):.12g}]"

    def quadratic_data(self) -> tuple[int, int, int, int]:
        """For a quadratic field return ``(d, k, s, p)``: ``lambda = (-p + s*k*sqrt d)/2``."""
        if self.degree != 2:
            raise UsageError("not a quadratic field")
        return _quadratic_data(self)

    # -- identity -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, NumberField) or self._poly != other._poly:
            return False
        lo = max(self.interval[0], other.interval[0])
        hi = min(self.interval[1], other.interval[1])
        return lo < hi and polys.count_roots(self._seq, lo, hi) == 1

    def __hash__(self) -> int:
        return hash(self._poly)

    def __repr__(self) -> str:
        lo, hi = self.interval
        return f"NumberField({list(self.minpoly)}, ({lo}, {hi}])"


@lru_cache(maxsize=256)
def _quadratic_field(d: int) -> NumberField:
    if d <= 1 or not is_squarefree(d):
        raise DomainError(f"d = {d} must be a squarefree integer > 1")
    r = math.isqrt(d)
    return NumberField((1, 0, -d), (Fraction(r), Fraction(r + 1)))


@lru_cache(maxsize=256)
def _quadratic_data(field: NumberField):
    q, p, _ = field._poly
    disc = p * p - 4 * q
    if disc <= 0:
        raise DomainError("quadratic field is not real")
    k, d = squarefree_decompose(disc)
    s = compare_real(field.gen, field(Fraction(-p, 2)))
    return d, k, s, p


def _coerce(field: NumberField, value) -> "FieldElement":
    if isinstance(value, FieldElement):
        if value.field is not field and value.field != field:
            raise UsageError("field mismatch")
        return value
    return field(value)


class FieldElement:
    """An element ``c0 + c1*lambda + ... + c_{n-1}*lambda^(n-1)`` of a NumberField."""

    __slots__ = ("field", "coords")

    def __init__(self, field: NumberField, coords):
        coords = tuple(polys._demote([Fraction(c) for c in coords]))
        if len(coords) != field.degree:
            raise UsageError("coordinate vector length must equal the field degree")
        self.field = field
        self.coords = coords

    @classmethod
    def _from_poly(cls, field: NumberField, p) -> "FieldElement":
        r = polys.rem(p, field._poly) if len(p) > field.degree else p
        return cls(field, tuple(r) + (0,) * (field.degree - len(r)))

    def _poly(self):
        return polys.strip(self.coords)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, (FieldElement, int, Rational)):
            return NotImplemented
        o = _coerce(self.field, other)
        return FieldElement(self.field, [a + b for a, b in zip(self.coords, o.coords)])

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, [-a for a in self.coords])

    def __sub__(self, other):
        return self + (-_coerce(self.field, other))

    def __rsub__(self, other):
        return _coerce(self.field, other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return FieldElement(self.field, [a * other for a in self.coords])
        o = _coerce(self.field, other)
        return FieldElement._from_poly(self.field, polys.mul(self._poly(), o._poly()))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in number field")
        g, s, _ = polys.xgcd(self._poly(), self.field._poly)
        if polys.degree(g) > 0:
            raise ZeroDivisorError(polys.to_int_poly(g))
        return FieldElement._from_poly(self.field, s)

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            if other == 0:
                raise ZeroDivisionError("division by zero in number field")
            return FieldElement(self.field, [Fraction(a) / other for a in self.coords])
        return self * _coerce(self.field, other).inverse()

    def __rtruediv__(self, other):
        return _coerce(self.field, other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.field.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- exact queries ------------------------------------------------------

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return Fraction(self.coords[0])

    def mul_matrix(self) -> list[list[Fraction]]:
        """Matrix of ``y -> self*y`` in the power basis (column j = self*lambda^j)."""
        n = self.field.degree
        cols = []
        basis = self.field.one
        for j in range(n):
            cols.append((self * basis).coords)
            basis = basis * FieldElement(self.field, (0, 1) + (0,) * (n - 2)) if n > 1 else basis
        return [[Fraction(cols[j][i]) for j in range(n)] for i in range(n)]

    def trace(self) -> Fraction:
        m = self.mul_matrix()
        return sum((m[i][i] for i in range(len(m))), Fraction(0))

    def norm(self) -> Fraction:
        return det_rational(self.mul_matrix())

    # -- real embedding -----------------------------------------------------

    def approx(self, bits: int = 64) -> Fraction:
        """Rational approximation of the embedded value (not certified)."""
        if self.is_rational():
            return Fraction(self.coords[0])
        return Fraction(polys.evaluate(self._poly(), self.field.approx_root(bits)))

    def __float__(self) -> float:
        return float(self.approx())

    def sign(self) -> int:
        return compare_real(self, 0)

    def floor(self) -> int:
        return floor_real(self)

    __floor__ = floor

    def __lt__(self, other):
        return compare_real(self, other) < 0

    def __le__(self, other):
        return compare_real(self, other) <= 0

    def __gt__(self, other):
        return compare_real(self, other) > 0

    def __ge__(self, other):
        return compare_real(self, other) >= 0

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.coords == other.coords
        if isinstance(other, (int, Rational)):
            return self.is_rational() and self.coords[0] == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coords[0])
        return hash((self.field, self.coords))

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coords):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*L" + (f"^{i}" if i > 1 else ""))
        return " + ".join(terms) if terms else "0"


def field_arith(x: FieldElement, y: FieldElement, op: str) -> FieldElement:
    if x.field != y.field:
        raise UsageError("field mismatch")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise UsageError(f"unknown operation {op!r}")


def trace(x: FieldElement) -> Fraction:
    return x.trace()


def compare_real(x, y) -> int:
    """Sign of ``x - y`` under the designated embedding: -1, 0 or 1.

    Exact: the isolating interval is bisected until ``x - y`` (as a
    polynomial in the generator) has no root left inside it.
    """
    if not isinstance(x, FieldElement):
        if not isinstance(y, FieldElement):
            return (Fraction(x) > Fraction(y)) - (Fraction(x) < Fraction(y))
        return -compare_real(y, x)
    z = x - y
    if z.is_zero():
        return 0
    zp = z._poly()
    if polys.degree(zp) == 0:
        return 1 if zp[0] > 0 else -1
    field = z.field
    if not field.verified:
        g = polys.gcd(zp, field._poly)
        if polys.degree(g) > 0:
            lo, hi = field.interval
            if polys.count_roots(polys.sturm_sequence(g), lo, hi) == 1:
                return 0
    seq = polys.sturm_sequence(zp)
    lo, hi = field.interval
    width = hi - lo
    while True:
        lo, hi = field.root_interval(width)
        if polys.count_roots(seq, lo, hi) == 0:
            v = polys.evaluate(zp, hi)
            return 1 if v > 0 else -1
        width /= 2**8


def floor_real(x) -> int:
    """The integer ``f`` with ``f <= x < f + 1`` under the designated embedding."""
    if isinstance(x, QuadraticSurd):
        return x.floor()
    if not isinstance(x, FieldElement):
        return math.floor(Fraction(x))
    if x.is_rational():
        return math.floor(Fraction(x.coords[0]))
    f = math.floor(x.approx(64))
    while compare_real(x, f) < 0:
        f -= 1
    while compare_real(x, f + 1) >= 0:
        f += 1
    return f


# -- quadratic fast path -------------------------------------------------------


@dataclass(frozen=True)
class QuadraticSurd:
    """The real number ``a + b*sqrt(d)`` with ``d`` squarefree and > 1."""

    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        object.__setattr__(self, "d", int(self.d))
        if self.d <= 1 or not is_squarefree(self.d):
            raise DomainError(f"d = {self.d} must be a squarefree integer > 1")

    @classmethod
    def from_sqrt(cls, a, b, n: int) -> "QuadraticSurd":
        """``a + b*sqrt(n)`` for any positive non-square ``n``."""
        k, d = squarefree_decompose(n)
        if d == 1:
            raise DomainError(f"{n} is a perfect square")
        return cls(a, Fraction(b) * k, d)

    def _same(self, other) -> "QuadraticSurd":
        if isinstance(other, QuadraticSurd):
            if other.d != self.d:
                raise UsageError("surds live in different quadratic fields")
            return other
        if isinstance(other, (int, Rational)):
            return QuadraticSurd(other, 0, self.d)
        raise TypeError

    def __add__(self, other):
        try:
            o = self._same(other)
        except TypeError:
            return NotImplemented
        return QuadraticSurd(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticSurd(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-self._same(other))

    def __rsub__(self, other):
        return self._same(other) - self

    def __mul__(self, other):
        try:
            o = self._same(other)
        except TypeError:
            return NotImplemented
        return QuadraticSurd(self.a * o.a + self.d * self.b * o.b, self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadraticSurd":
        return QuadraticSurd(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def trace(self) -> Fraction:
        return 2 * self.a

    def inverse(self) -> "QuadraticSurd":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero surd")
        c = self.conjugate()
        return QuadraticSurd(c.a / n, c.b / n, self.d)

    def __truediv__(self, other):
        return self * self._same(other).inverse()

    def __rtruediv__(self, other):
        return self._same(other) * self.inverse()

    def is_rational(self) -> bool:
        return self.b == 0

    def sign(self) -> int:
        a, b = self.a, self.b
        sa = (a > 0) - (a < 0)
        sb = (b > 0) - (b < 0)
        if sb == 0 or sa == sb:
            return sa or sb
        if sa == 0:
            return sb
        big = a * a > b * b * self.d  # a and b have opposite signs here
        return sa if big else sb

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def floor(self) -> int:
        if self.b == 0:
            return math.floor(self.a)
        n = self.b * self.b * self.d
        scale = 2**64
        root = Fraction(math.isqrt(n.numerator * n.denominator * scale * scale), n.denominator * scale)
        f = math.floor(self.a + (root if self.b > 0 else -root))
        while (self - f).sign() < 0:
            f -= 1
        while (self - (f + 1)).sign() >= 0:
            f += 1
        return f

    __floor__ = floor

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def to_field(self, field: NumberField | None = None) -> FieldElement:
        """Exact image in ``field`` (default ``Q(sqrt d)``)."""
        if field is None:
            field = NumberField.quadratic(self.d)
        d, k, s, p = field.quadratic_data()
        if d != self.d:
            raise UsageError(f"sqrt({self.d}) does not lie in {field!r}")
        sqrt_d = (2 * field.gen + p) / (s * k)
        return self.a + self.b * sqrt_d

    @classmethod
    def from_field(cls, x: FieldElement) -> "QuadraticSurd":
        d, k, s, p = x.field.quadratic_data()
        c0, c1 = (Fraction(c) for c in x.coords)
        return cls(c0 - c1 * Fraction(p, 2), c1 * s * Fraction(k, 2), d)

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        mag = abs(self.b)
        term = f"sqrt({self.d})" if mag == 1 else f"{mag}*sqrt({self.d})"
        sign = "-" if self.b < 0 else "+"
        if self.a == 0:
            return term if sign == "+" else "-" + term
        return f"{self.a}{sign}{term}"
