"""The trace form of a module and its determinant and signature."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DimensionError, DomainError
from .exactnum import det_rational
from .numberfield import NumberField, is_squarefree


@dataclass(frozen=True)
class GramForm:
    entries: tuple  # tuple of row tuples of Fraction
    generators: tuple = ()

    @property
    def n(self) -> int:
        return len(self.entries)

    def transformed(self, u) -> "GramForm":
        """``U^T G U`` for an integer (or rational) matrix ``u`` given as rows."""
        u = [list(r) for r in (u.rows if hasattr(u, "rows") else u)]
        n = self.n
        if len(u) != n:
            raise DimensionError("transform has the wrong number of rows")
        m = len(u[0])
        g = self.entries
        gu = [[sum(g[i][k] * u[k][j] for k in range(n)) for j in range(m)] for i in range(n)]
        out = [[sum(u[k][i] * gu[k][j] for k in range(n)) for j in range(m)] for i in range(m)]
        return make_gram(out)


def make_gram(rows: Sequence[Sequence]) -> GramForm:
    entries = tuple(tuple(Fraction(x) for x in r) for r in rows)
    n = len(entries)
    if any(len(r) != n for r in entries):
        raise DimensionError("Gram matrix must be square")
    if any(entries[i][j] != entries[j][i] for i in range(n) for j in range(i)):
        raise DimensionError("Gram matrix must be symmetric")
    return GramForm(entries)


def gram(m) -> GramForm:
    """Trace form ``a_ij = Tr(l_i l_j)`` on the generators of a module (or a list of elements)."""
    gens = tuple(m.generators if hasattr(m, "generators") else m)
    fields = {g.field for g in gens}
    if len(fields) > 1:
        raise DimensionError("generators lie in different fields")
    n = len(gens)
    rows = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = (gens[i] * gens[j]).trace()
    return GramForm(tuple(tuple(r) for r in rows), gens)


@dataclass(frozen=True)
class FormInvariants:
    delta: Fraction
    sigma: int
    diagonal: tuple  # nonzero diagonal entries
    radical_dim: int = 0
    transform: tuple = ()  # rows of T with T^T G T = diag(diagonal + zeros)

    @property
    def positive(self) -> int:
        return sum(1 for x in self.diagonal if x > 0)

    @property
    def negative(self) -> int:
        return sum(1 for x in self.diagonal if x < 0)


def diagonalize(g: GramForm) -> tuple[list[Fraction], list[list[Fraction]]]:
    """Symmetric congruence diagonalization over Q.

    Returns ``(diag, T)`` with ``T^T G T = diag``; nonzero entries come first.
    """
    n = g.n
    a = [list(r) for r in g.entries]
    t = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]  # columns are new basis vectors

    def col_op(j, k, c):  # basis_j += c * basis_k
        for r in range(n):
            a[r][j] += c * a[r][k]
        for r in range(n):
            a[j][r] += c * a[k][r]
        for r in range(n):
            t[r][j] += c * t[r][k]

    def swap(j, k):
        for r in range(n):
            a[r][j], a[r][k] = a[r][k], a[r][j]
        a[j], a[k] = a[k], a[j]
        for r in range(n):
            t[r][j], t[r][k] = t[r][k], t[r][j]

    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            col_op(i, j, Fraction(1))  # a[i][i] becomes 2 a[i][j] != 0
            piv = i
        if piv != k:
            swap(piv, k)
        p = a[k][k]
        for j in range(k + 1, n):
            if a[k][j]:
                col_op(j, k, -a[k][j] / p)
    diag = [a[i][i] for i in range(n)]
    return diag, t


def form_invariants(g: GramForm) -> FormInvariants:
    diag, t = diagonalize(g)
    nonzero = tuple(x for x in diag if x != 0)
    sigma = sum(1 if x > 0 else -1 for x in nonzero)
    return FormInvariants(
        det_rational(g.entries) if g.n else Fraction(1),
        sigma,
        nonzero,
        g.n - len(nonzero),
        tuple(tuple(r) for r in t),
    )


@dataclass(frozen=True)
class OrderForm:
    d: int
    f: int
    invariants: FormInvariants
    form: tuple[Fraction, Fraction, Fraction]  # (A, B, C) in A x^2 + B xy + C y^2

    def form_text(self) -> str:
        a, b, c = self.form
        return f"{a}*x^2 + {b}*x*y + {c}*y^2"


def order_form_closed(d: int, f: int) -> OrderForm:
    """Trace form of ``Z + f*omega*Z`` in ``Q(sqrt d)`` from the closed formulas."""
    if d <= 1 or not is_squarefree(d):
        raise DomainError(f"d = {d} must be a squarefree integer > 1")
    if f < 1:
        raise DomainError("conductor must be positive")
    if d % 4 == 1:
        a11, a12, a22 = Fraction(2), Fraction(f), Fraction(f * f * (d + 1), 2)
        delta = Fraction(f * f * d)
    else:
        a11, a12, a22 = Fraction(2), Fraction(0), Fraction(2 * f * f * d)
        delta = Fraction(4 * f * f * d)
    diag = (a11, a22 - a12 * a12 / a11)
    inv = FormInvariants(delta, 2, diag, 0, ((Fraction(1), -a12 / a11), (Fraction(0), Fraction(1))))
    return OrderForm(d, f, inv, (a11, 2 * a12, a22))


def order_form_direct(d: int, f: int) -> FormInvariants:
    """Trace form of ``Z + f*omega*Z`` computed from its Gram matrix."""
    from .pfdata import omega

    if d <= 1 or not is_squarefree(d):
        raise DomainError(f"d = {d} must be a squarefree integer > 1")
    K = NumberField.quadratic(d)
    return form_invariants(gram([K.one, (omega(d) * f).to_field(K)]))
