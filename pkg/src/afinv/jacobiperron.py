"""Jacobi-Perron continued fractions.

A state is a vector ``theta = (theta_1, ..., theta_{n-1})`` standing for the
projective point ``(1, theta_1, ..., theta_{n-1})``.  One step takes digits
``b_i = floor(theta_i)`` and moves to

    ({theta_2}/{theta_1}, ..., {theta_{n-1}}/{theta_1}, 1/{theta_1})

so that ``(1, theta) ~ B(b) (1, theta')`` with the block matrix
``B(b) = ((0 ... 0 1), (I b))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DimensionError, DomainError, FactorizationNotFound, RangeError, UsageError
from .exactnum import IntMatrix, as_matrix, det_exact
from .numberfield import FieldElement, NumberField, QuadraticSurd, compare_real, floor_real
from .pfdata import PerronData, perron_data

DEFAULT_MAX_STEPS = 100

Digit = tuple  # tuple of n-1 nonnegative ints


@dataclass(frozen=True)
class JPExpansion:
    dimension: int
    theta: tuple
    digits: tuple  # tuple of Digit
    periodic: tuple[int, int] | None = None  # (preperiod_len, period_len)
    terminating: bool = False
    states: tuple | None = None  # exact states, states[k] is the input of step k
    exact: bool = True

    @property
    def preperiod(self) -> tuple:
        return self.digits[: self.periodic[0]] if self.periodic else self.digits

    @property
    def period(self) -> tuple:
        if not self.periodic:
            return ()
        pre, per = self.periodic
        return self.digits[pre:pre + per]

    def digit_stream(self, count: int) -> list:
        """First ``count`` digits, continuing through the period when periodic."""
        out = list(self.digits[:count])
        if self.periodic:
            per = self.period
            while len(out) < count:
                out.extend(per)
        return out[:count]

    def available(self) -> int | None:
        """Number of digits available, or None when unbounded (periodic)."""
        return None if self.periodic else len(self.digits)


def _coerce_theta(theta: Sequence) -> tuple[tuple, bool]:
    vals = list(theta)
    if not vals:
        raise UsageError("theta must have at least one entry")
    exact = not any(isinstance(x, float) for x in vals)
    fields = {x.field for x in vals if isinstance(x, FieldElement)}
    surds = {x.d for x in vals if isinstance(x, QuadraticSurd) and x.b != 0}
    if len(fields) > 1 or len(surds) > 1 or (fields and surds):
        if not (fields and surds and len(fields) == 1 and len(surds) == 1):
            raise UsageError("theta entries lie in different fields")
    if surds and not fields:
        fields = {NumberField.quadratic(surds.pop())}
    if fields:
        K = fields.pop()
        out = []
        for x in vals:
            if isinstance(x, QuadraticSurd):
                out.append(x.to_field(K))
            elif isinstance(x, FieldElement):
                out.append(x)
            else:
                out.append(K(Fraction(x)))
        return tuple(out), exact
    out = []
    for x in vals:
        if isinstance(x, QuadraticSurd):
            x = x.a
        out.append(Fraction(x))
    return tuple(out), exact


def _sign(x) -> int:
    return compare_real(x, 0) if isinstance(x, FieldElement) else (x > 0) - (x < 0)


def jp_step(theta: tuple) -> tuple[Digit, tuple | None]:
    """One Jacobi-Perron step: ``(digit, next_state)``; next_state is None when {theta_1} = 0."""
    b = tuple(floor_real(x) for x in theta)
    frac = [x - bi for x, bi in zip(theta, b)]
    f1 = frac[0]
    if _sign(f1) == 0:
        return b, None
    inv = 1 / f1
    return b, tuple(x * inv for x in frac[1:]) + (inv,)


def jp_expand(theta: Sequence, max_steps: int = DEFAULT_MAX_STEPS) -> JPExpansion:
    """Expand ``theta`` until it terminates, repeats a state, or hits ``max_steps`` digits."""
    if max_steps < 1:
        raise UsageError("max_steps must be at least 1")
    state, exact = _coerce_theta(theta)
    if any(_sign(x) <= 0 for x in state):
        raise DomainError("every theta_i must be positive")
    n = len(state) + 1
    theta0 = state
    seen: dict[tuple, int] = {}
    states: list[tuple] = []
    digits: list[Digit] = []
    periodic = None
    terminating = False
    while len(digits) < max_steps:
        if exact:
            if state in seen:
                j = seen[state]
                periodic = (j, len(digits) - j)
                break
            seen[state] = len(digits)
        states.append(state)
        b, nxt = jp_step(state)
        digits.append(b)
        if nxt is None:
            terminating = True
            break
        state = nxt
    else:
        if exact and state in seen:
            j = seen[state]
            periodic = (j, len(digits) - j)
    return JPExpansion(n, theta0, tuple(digits), periodic, terminating, tuple(states) if exact else None, exact)


def jp_block(b: Sequence[int]) -> IntMatrix:
    """The block matrix ``((0 ... 0 1), (I b))`` for a digit ``b`` of length n-1."""
    b = tuple(int(x) for x in b)
    n = len(b) + 1
    rows = [tuple(int(j == n - 1) for j in range(n))]
    for i in range(1, n):
        rows.append(tuple(int(j == i - 1) for j in range(n - 1)) + (b[i - 1],))
    return IntMatrix(tuple(rows))


def jp_matrix_product(digits: Sequence[Sequence[int]]) -> IntMatrix:
    digits = list(digits)
    if not digits:
        raise UsageError("at least one digit is required")
    n = len(digits[0]) + 1
    out = IntMatrix.identity(n)
    for b in digits:
        if len(b) != n - 1:
            raise UsageError(f"digit {tuple(b)} does not have length {n - 1}")
        out = out @ jp_block(b)
    return out


def jp_convergents(e: JPExpansion, k: int) -> tuple[Fraction, ...]:
    """The k-th convergent ``(A_1/A_0, ..., A_{n-1}/A_0)`` built from digits ``0..k``.

    ``A`` is the last column of ``B(b_0) ... B(b_k)``; the empty product is
    the identity, whose last column is the seed ``(0, ..., 0, 1)``.
    """
    if k < 0:
        raise RangeError("k must be nonnegative")
    avail = e.available()
    if avail is not None and k >= avail:
        raise RangeError(f"convergent {k} needs {k + 1} digits, only {avail} available")
    col = jp_matrix_product(e.digit_stream(k + 1)).column(e.dimension - 1)
    return tuple(Fraction(a, col[0]) for a in col[1:])


def _is_block(m: IntMatrix) -> bool:
    n = m.nrows
    if m.rows[0] != tuple(int(j == n - 1) for j in range(n)):
        return False
    return all(m[i, j] == int(j == i - 1) for i in range(1, n) for j in range(n - 1)) and all(
        m[i, n - 1] >= 0 for i in range(1, n)
    )


def jp_factorize(A, max_steps: int = 10_000) -> list[Digit]:
    """Digits whose block product equals ``A`` (nonnegative, determinant +-1).

    Blocks are peeled from the left: ``A = B(b) A'`` forces the last row of
    ``A'`` to be the first row of ``A`` and row ``i-1`` of ``A'`` to be
    ``A_i - b_i A_0``; each ``b_i`` is taken as large as nonnegativity of
    ``A'`` allows.  The result is always verified by multiplying back.
    """
    m = as_matrix(A)
    m._need_square()
    n = m.nrows
    if n < 2:
        raise DimensionError("factorization needs n >= 2")
    if not m.is_nonnegative():
        raise DomainError("matrix has negative entries")
    d = det_exact(m)
    if d not in (1, -1):
        raise DomainError(f"determinant {d} is not +-1")
    digits: list[Digit] = []
    zero_run = 0
    for _ in range(max_steps):
        if _is_block(m):
            digits.append(tuple(m[i, n - 1] for i in range(1, n)))
            break
        top = m.rows[0]
        support = [j for j in range(n) if top[j] > 0]
        b = tuple(min(m[i, j] // top[j] for j in support) for i in range(1, n))
        rows = [tuple(x - bi * t for x, t in zip(m.rows[i], top)) for i, bi in zip(range(1, n), b)]
        m = IntMatrix(tuple(rows) + (top,))
        digits.append(b)
        zero_run = zero_run + 1 if not any(b) else 0
        if zero_run >= n:
            raise FactorizationNotFound("greedy peeling cycles through zero digits")
    else:
        raise FactorizationNotFound(f"no factorization within {max_steps} blocks")
    if jp_matrix_product(digits) != as_matrix(A):
        raise FactorizationNotFound("peeled blocks do not multiply back to the input")
    return digits


def ratio_vector(v: Sequence) -> tuple:
    """``(v_1/v_0, ..., v_{n-1}/v_0)``."""
    return tuple(x / v[0] for x in v[1:])


def _repeats_rotation(period: Sequence, minimal: Sequence) -> bool:
    period = tuple(tuple(b) for b in period)
    minimal = tuple(tuple(b) for b in minimal)
    if not minimal or len(period) % len(minimal):
        return False
    word = minimal * (len(period) // len(minimal))
    return any(word[i:] + word[:i] == period for i in range(len(word)))


@dataclass(frozen=True)
class PeriodicEigenvector:
    perron: PerronData
    expansion: JPExpansion
    reproduces_period: bool


def periodic_jp_eigenvector(period: Sequence[Sequence[int]], max_steps: int = DEFAULT_MAX_STEPS) -> PeriodicEigenvector:
    """Perron-Frobenius data of the period product, checked against its own expansion."""
    p = jp_matrix_product(period)
    pd = perron_data(p)
    e = jp_expand(ratio_vector(pd.eigenvector), max_steps)
    ok = e.periodic is not None and _repeats_rotation(period, e.period)
    return PeriodicEigenvector(pd, e, ok)


@dataclass(frozen=True)
class PeriodWitness:
    """Evidence that the expansion of a Perron-Frobenius direction is periodic.

    ``product`` is the block product over one period, ``state`` the projective
    state ``(1, theta^(k))`` at the start of the period and ``mu`` the exact
    eigenvalue with ``product @ state == mu * state``.  ``mu**a == lam**b``
    links it to the dilatation of the input matrix.
    """

    expansion: JPExpansion
    product: IntMatrix
    prefix: IntMatrix
    state: tuple
    mu: FieldElement
    exponents: tuple[int, int] | None


def period_witness(A, max_steps: int = DEFAULT_MAX_STEPS, max_exponent: int = 24) -> PeriodWitness:
    pd = perron_data(A)
    e = jp_expand(ratio_vector(pd.eigenvector), max_steps)
    if e.periodic is None:
        raise DomainError(f"no period detected within {max_steps} steps")
    pre, _ = e.periodic
    K = pd.field
    prod = jp_matrix_product(e.period)
    prefix = jp_matrix_product(e.digits[:pre]) if pre else IntMatrix.identity(e.dimension)
    w = (K.one,) + tuple(e.states[pre])
    pw = prod @ list(w)
    mu = pw[0]
    if any(not (x - mu * y).is_zero() for x, y in zip(pw, w)):
        raise ArithmeticError("period product does not fix the period-start state")  # unreachable
    lam = pd.eigenvalue
    exps = None
    mu_pows = [K.one]
    for a in range(1, max_exponent + 1):
        mu_pows.append(mu_pows[-1] * mu)
    lam_pow = K.one
    for b in range(1, max_exponent + 1):
        lam_pow = lam_pow * lam
        a = next((a for a in range(1, max_exponent + 1) if mu_pows[a] == lam_pow), None)
        if a is not None:
            exps = (a, b)
            break
    return PeriodWitness(e, prod, prefix, w, mu, exps)


def common_tail(e1: JPExpansion, e2: JPExpansion, max_drop: int = 10) -> tuple[int, int] | None:
    """Smallest prefix drops ``(p1, p2)`` after which the digit sequences agree.

    For two periodic expansions agreement is checked far enough to be exact;
    otherwise only the generated digits are compared.
    """
    if e1.dimension != e2.dimension:
        return None
    both_periodic = e1.periodic is not None and e2.periodic is not None
    best = None
    for p1 in range(max_drop + 1):
        for p2 in range(max_drop + 1):
            if best is not None and (p1 + p2, p1) >= (sum(best), best[0]):
                continue
            if both_periodic:
                window = max(e1.periodic[0] - p1, e2.periodic[0] - p2, 0) + math.lcm(e1.periodic[1], e2.periodic[1])
            else:
                lens = [len(e.digits) - p for e, p in ((e1, p1), (e2, p2)) if e.periodic is None]
                window = min(lens)
                if window < 1:
                    continue
            if e1.digit_stream(p1 + window)[p1:] == e2.digit_stream(p2 + window)[p2:]:
                best = (p1, p2)
    return best
