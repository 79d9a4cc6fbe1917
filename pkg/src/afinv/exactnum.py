"""Exact integer linear algebra.

Rationals are ``fractions.Fraction`` (always in lowest terms with a positive
denominator) and integers are Python ``int``; nothing here ever rounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionError

BigRational = Fraction


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored row-major as a tuple of row tuples."""

    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        if not rows or not rows[0]:
            raise DimensionError("matrix must have at least one row and one column")
        if any(len(r) != len(rows[0]) for r in rows):
            raise DimensionError("ragged rows")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_flat(cls, entries: Sequence[int], nrows: int | None = None) -> "IntMatrix":
        """Build from row-major entries; square shape is inferred when ``nrows`` is None."""
        entries = list(entries)
        if nrows is None:
            nrows = math.isqrt(len(entries))
            if nrows * nrows != len(entries):
                raise DimensionError(f"{len(entries)} entries do not form a square matrix")
        if nrows <= 0 or len(entries) % nrows:
            raise DimensionError(f"{len(entries)} entries do not fill {nrows} rows")
        ncols = len(entries) // nrows
        return cls(tuple(tuple(entries[i * ncols:(i + 1) * ncols]) for i in range(nrows)))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[int]]) -> "IntMatrix":
        return cls(tuple(zip(*cols)))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.ncols)]

    def flat(self) -> list[int]:
        return [x for r in self.rows for x in r]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.rows)))

    def trace(self) -> int:
        self._need_square()
        return sum(self.rows[i][i] for i in range(self.nrows))

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.ncols != other.nrows:
                raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
            cols = other.columns()
            return IntMatrix(tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows))
        # vector (any ring elements supporting * and +)
        vec = list(other)
        if len(vec) != self.ncols:
            raise DimensionError("vector length mismatch")
        out = []
        for r in self.rows:
            acc = 0
            for a, x in zip(r, vec):
                if a:
                    acc = acc + a * x
            out.append(acc)
        return out

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(tuple(tuple(-x for x in r) for r in self.rows))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise DimensionError("shape mismatch")
        return IntMatrix(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def __pow__(self, k: int) -> "IntMatrix":
        self._need_square()
        if k < 0:
            raise ValueError("negative powers are not supported; use inverse_unimodular")
        out = IntMatrix.identity(self.nrows)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def is_nonnegative(self) -> bool:
        return all(x >= 0 for r in self.rows for x in r)

    def is_positive(self) -> bool:
        return all(x > 0 for r in self.rows for x in r)

    def _need_square(self):
        if not self.is_square:
            raise DimensionError(f"square matrix required, got {self.nrows}x{self.ncols}")

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()})"


def as_matrix(m) -> IntMatrix:
    return m if isinstance(m, IntMatrix) else IntMatrix(tuple(tuple(r) for r in m))


def det_exact(m) -> int:
    """Determinant by fraction-free Bareiss elimination.

    Accepts an ``IntMatrix`` or a square nested sequence of integers; rational
    entries are handled by clearing denominators first (see ``det_rational``).
    """
    m = as_matrix(m)
    m._need_square()
    a = [list(r) for r in m.rows]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def det_rational(rows: Sequence[Sequence]) -> Fraction:
    """Exact determinant of a square rational matrix."""
    rows = [[Fraction(x) for x in r] for r in rows]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DimensionError("square matrix required")
    den = 1
    for r in rows:
        for x in r:
            den = den * x.denominator // math.gcd(den, x.denominator)
    scaled = IntMatrix(tuple(tuple(int(x * den) for x in r) for r in rows))
    return Fraction(det_exact(scaled), den ** n)


def charpoly(m) -> list[int]:
    """Characteristic polynomial det(tI - m), highest degree first.

    Faddeev-LeVerrier over Q, then checked to be integral.
    """
    m = as_matrix(m)
    m._need_square()
    n = m.nrows
    a = [[Fraction(x) for x in r] for r in m.rows]
    coeffs = [Fraction(1)]
    mk = [[Fraction(0)] * n for _ in range(n)]  # M_0 = 0
    c = Fraction(1)
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        prod = [[sum(a[i][t] * mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            prod[i][i] += c
        mk = prod
        am = [[sum(a[i][t] * mk[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
        c = -sum(am[i][i] for i in range(n)) / k
        coeffs.append(c)
    out = []
    for x in coeffs:
        if x.denominator != 1:
            raise ArithmeticError("characteristic polynomial is not integral")  # unreachable for int input
        out.append(int(x))
    return out


def hnf(m) -> tuple[IntMatrix, IntMatrix]:
    """Column-style Hermite normal form.

    Returns ``(H, U)`` with ``H = m @ U``, ``det U = +-1``.  ``H`` is lower
    triangular in column-echelon form: the pivot rows of successive nonzero
    columns strictly increase, pivots are positive, entries of earlier columns
    in a pivot row lie in ``[0, pivot)``, and zero columns come last.
    """
    m = as_matrix(m)
    nr, nc = m.shape
    cols = [list(c) for c in m.columns()]
    ucols = [[int(i == j) for i in range(nc)] for j in range(nc)]

    def axpy(j, q, k):  # col_j -= q * col_k
        cols[j] = [a - q * b for a, b in zip(cols[j], cols[k])]
        ucols[j] = [a - q * b for a, b in zip(ucols[j], ucols[k])]

    k = 0
    for r in range(nr):
        if k >= nc:
            break
        while True:
            nz = [j for j in range(k, nc) if cols[j][r] != 0]
            if not nz:
                break
            j0 = min(nz, key=lambda j: (abs(cols[j][r]), j))
            cols[k], cols[j0] = cols[j0], cols[k]
            ucols[k], ucols[j0] = ucols[j0], ucols[k]
            clean = True
            for j in range(k + 1, nc):
                if cols[j][r]:
                    axpy(j, cols[j][r] // cols[k][r], k)
                    if cols[j][r]:
                        clean = False
            if clean:
                break
        if cols[k][r] == 0:
            continue
        if cols[k][r] < 0:
            cols[k] = [-x for x in cols[k]]
            ucols[k] = [-x for x in ucols[k]]
        p = cols[k][r]
        for j in range(k):
            q = cols[j][r] // p
            if q:
                axpy(j, q, k)
        k += 1
    return IntMatrix.from_columns(cols), IntMatrix.from_columns(ucols)


def hnf_rank(h: IntMatrix) -> int:
    return sum(1 for c in h.columns() if any(c))


def integer_kernel(m) -> list[tuple[int, ...]]:
    """A Z-basis of {x in Z^n : m x = 0}, read off the HNF transform."""
    h, u = hnf(m)
    return [u.column(j) for j in range(h.ncols) if not any(h.column(j))]


def solve_integer(h: IntMatrix, v: Sequence[int]) -> list[int] | None:
    """Integer coordinates of ``v`` in the nonzero columns of an HNF ``h``, or None."""
    v = list(v)
    basis = [c for c in h.columns() if any(c)]
    coeffs = []
    for c in basis:
        r = next(i for i, x in enumerate(c) if x)
        if v[r] % c[r]:
            return None
        q = v[r] // c[r]
        coeffs.append(q)
        v = [a - q * b for a, b in zip(v, c)]
    return coeffs if not any(v) else None


def lcm_denominators(values: Iterable[Fraction]) -> int:
    out = 1
    for x in values:
        d = Fraction(x).denominator
        out = out * d // math.gcd(out, d)
    return out


def inverse_unimodular(m: IntMatrix) -> IntMatrix:
    """Integer inverse of a matrix with determinant +-1 (adjugate route)."""
    m._need_square()
    d = det_exact(m)
    if d not in (1, -1):
        raise DimensionError(f"matrix is not unimodular (det {d})")
    n = m.nrows
    if n == 1:
        return IntMatrix(((d,),))
    adj = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = [r[:i] + r[i + 1:] for k, r in enumerate(m.rows) if k != j]
            row.append((-1) ** (i + j) * det_exact(minor) * d)
        adj.append(tuple(row))
    return IntMatrix(tuple(adj))


def is_primitive(m: IntMatrix) -> bool:
    """Some power m^k with k <= n^2 is strictly positive (m must be nonnegative)."""
    m._need_square()
    n = m.nrows
    pattern = [[x > 0 for x in r] for r in m.rows]
    cur = pattern
    for _ in range(n * n):
        if all(all(r) for r in cur):
            return True
        cur = [[any(cur[i][t] and pattern[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
    return all(all(r) for r in cur)
