"""Perron-Frobenius data, Jacobian modules and their coefficient rings.

The Perron-Frobenius eigenvector of a primitive nonnegative integer matrix is
computed exactly over ``K = Q(lambda)``.  Its entries span a Z-module of full
rank in ``K``; the module, its ring of multipliers and, for quadratic fields,
its similarity class are computed here.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

from . import polys
from .errors import DomainError, NotHyperbolicError, NotPrimitiveError, UsageError, ZeroDivisorError
from .exactnum import (
    IntMatrix,
    as_matrix,
    charpoly,
    det_exact,
    hnf,
    hnf_rank,
    integer_kernel,
    is_primitive,
    lcm_denominators,
    solve_integer,
)
from .numberfield import FieldElement, NumberField, QuadraticSurd, compare_real
from .surdcf import cf_expand, cyclically_equivalent


@dataclass(frozen=True)
class PerronData:
    matrix: IntMatrix
    field: NumberField
    eigenvector: tuple  # FieldElements, first entry 1
    warnings: tuple[str, ...] = ()

    @property
    def eigenvalue(self) -> FieldElement:
        return self.field.gen

    def ratio_vector(self) -> tuple:
        v = self.eigenvector
        return tuple(x / v[0] for x in v[1:])


def _pick_factor(factors, lo, hi):
    for f in factors:
        if polys.count_roots(polys.sturm_sequence(f), lo, hi) == 1:
            return f
    raise ArithmeticError("no factor holds the isolated root")  # unreachable


def _nullvector(rows: list[list[FieldElement]]) -> list[FieldElement]:
    """A nonzero kernel vector of a corank-1 square matrix over a field."""
    n = len(rows)
    a = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, n) if not a[i][c].is_zero()), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = a[r][c].inverse()
        a[r] = [x * inv for x in a[r]]
        for i in range(n):
            if i != r and not a[i][c].is_zero():
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    if len(free) != 1:
        raise DomainError(f"eigenspace has dimension {len(free)}, expected 1")
    fc = free[0]
    K = rows[0][0].field
    v = [K.zero] * n
    v[fc] = K.one
    for i, c in enumerate(pivots):
        v[c] = -a[i][fc]
    return v


def dominant_eigendata(A) -> PerronData:
    """Exact eigenvector for the largest real eigenvalue, normalized to ``v[0] = 1``.

    No sign conditions are imposed; ``perron_data`` adds the nonnegativity and
    primitivity checks.
    """
    A = as_matrix(A)
    A._need_square()
    n = A.nrows
    p = tuple(reversed(charpoly(A)))
    sf = polys.to_int_poly(polys.squarefree_part(p))
    lo, hi = polys.largest_real_root_interval(sf)
    factors, complete = polys.factor_monic(sf)
    f = _pick_factor(factors, lo, hi)
    warnings: list[str] = []
    while True:
        if polys.degree(f) == 1:
            raise NotHyperbolicError(f"dominant eigenvalue {-f[0]} is rational")
        K = NumberField(tuple(reversed(f)), (lo, hi))
        lam = K.gen
        rows = [[K(A[i, j]) - (lam if i == j else 0) for j in range(n)] for i in range(n)]
        try:
            v = _nullvector(rows)
            if v[0].is_zero():
                raise DomainError("eigenvector has a vanishing first coordinate")
            v0 = v[0]
            v = [x / v0 for x in v]
        except ZeroDivisorError as exc:
            g = exc.factor
            h = polys.to_int_poly(polys.divmod_poly(f, g)[0])
            f = _pick_factor([g, h], lo, hi)
            warnings.append(f"split reducible field polynomial via zero divisor {list(g)}")
            continue
        warnings.extend(K.warnings)
        break
    Av = A @ v
    if any(not (x - lam * y).is_zero() for x, y in zip(Av, v)):
        raise ArithmeticError("eigenvector verification failed")  # unreachable
    return PerronData(A, K, tuple(v), tuple(warnings))


def perron_data(A) -> PerronData:
    """Perron-Frobenius data of a primitive nonnegative integer matrix."""
    A = as_matrix(A)
    A._need_square()
    if not A.is_nonnegative():
        raise DomainError("matrix has negative entries")
    if not is_primitive(A):
        raise NotPrimitiveError("no power A^k with k <= n^2 is strictly positive")
    if A.nrows == 2 and det_exact(A) == 1 and abs(A.trace()) <= 2:
        raise NotHyperbolicError(f"trace {A.trace()} is not hyperbolic")
    pd = dominant_eigendata(A)
    if any(compare_real(x, 0) <= 0 for x in pd.eigenvector):
        raise ArithmeticError("Perron-Frobenius eigenvector is not positive")  # unreachable
    return pd


# -- modules -------------------------------------------------------------------


@dataclass(frozen=True)
class JacobianModule:
    """The Z-span of ``generators`` inside a number field.

    Stored canonically as ``(1/denominator) * lattice`` where ``denominator``
    is the least integer making every power-basis coordinate integral and
    ``lattice`` holds the HNF basis columns.  Equality is module equality.
    """

    field: NumberField
    generators: tuple = dc_field(compare=False)
    lattice: IntMatrix = None
    denominator: int = 1
    rank: int = 0

    def basis(self) -> list[FieldElement]:
        return [
            FieldElement(self.field, [Fraction(x, self.denominator) for x in col])
            for col in self.lattice.columns()
            if any(col)
        ]

    def contains(self, x) -> bool:
        x = self.field(x)
        scaled = [Fraction(c) * self.denominator for c in x.coords]
        if any(c.denominator != 1 for c in scaled):
            return False
        return solve_integer(self.lattice, [int(c) for c in scaled]) is not None

    def contains_module(self, other: "JacobianModule") -> bool:
        return all(self.contains(b) for b in other.basis())

    def scaled(self, mu) -> "JacobianModule":
        return jacobian_from_periods(self.field, [mu * b for b in self.basis()])

    def primitive_lattice(self) -> IntMatrix:
        """Lattice divided by the gcd of its entries (module up to rational scale)."""
        from math import gcd

        g = 0
        for x in self.lattice.flat():
            g = gcd(g, x)
        g = g or 1
        return IntMatrix(tuple(tuple(x // g for x in r) for r in self.lattice.rows))

    def equal_up_to_scale(self, other: "JacobianModule") -> bool:
        return self.field == other.field and self.primitive_lattice() == other.primitive_lattice()


def jacobian_from_periods(field: NumberField, periods: Sequence) -> JacobianModule:
    if not periods:
        raise UsageError("at least one generator is required")
    gens = []
    for x in periods:
        if isinstance(x, FieldElement) and x.field != field:
            raise UsageError("generators lie in different fields")
        gens.append(field(x))
    den = lcm_denominators(c for g in gens for c in g.coords)
    cols = [[int(Fraction(c) * den) for c in g.coords] for g in gens]
    h, _ = hnf(IntMatrix.from_columns(cols))
    rank = hnf_rank(h)
    kept = [c for c in h.columns() if any(c)] or [h.column(0)]
    return JacobianModule(field, tuple(gens), IntMatrix.from_columns(kept), den, rank)


# -- coefficient rings ---------------------------------------------------------


@dataclass(frozen=True)
class OrderDescription:
    field: NumberField
    basis: tuple  # FieldElements, a Z-basis of the order
    module: JacobianModule  # the order as a canonical lattice
    conductor: int | None = None
    d: int | None = None
    is_ring: bool = True


def _rational_inverse(m: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        piv = next(i for i in range(c, n) if a[i][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        p = a[c][c]
        a[c] = [x / p for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [row[n:] for row in a]


def omega(d: int) -> QuadraticSurd:
    """Generator of the maximal order of ``Q(sqrt d)``."""
    if d % 4 == 1:
        return QuadraticSurd(Fraction(1, 2), Fraction(1, 2), d)
    return QuadraticSurd(0, 1, d)


def quadratic_order(field: NumberField, f: int) -> JacobianModule:
    """The order ``Z + f*omega*Z`` inside a quadratic ``field``."""
    d = field.quadratic_data()[0]
    return jacobian_from_periods(field, [field(1), (omega(d) * f).to_field(field)])


def coefficient_ring(m: JacobianModule) -> OrderDescription:
    """The ring ``{alpha : alpha*m in m}`` of a full-rank module."""
    K = m.field
    n = K.degree
    if m.rank != n:
        raise DomainError(f"module has rank {m.rank}, need full rank {n}")
    basis = m.basis()
    bmat = [[Fraction(basis[j].coords[i]) for j in range(n)] for i in range(n)]
    binv = _rational_inverse(bmat)
    # alpha * basis[0] lies in m, so alpha = sum x_i * w_i with x integral
    w = [b / basis[0] for b in basis]

    def m_coords(x: FieldElement) -> list[Fraction]:
        return [sum(binv[i][k] * Fraction(x.coords[k]) for k in range(n)) for i in range(n)]

    crows = [[None] * n for _ in range(n * n)]
    for i, wi in enumerate(w):
        for j, bj in enumerate(basis):
            for k, c in enumerate(m_coords(wi * bj)):
                crows[j * n + k][i] = c
    den = lcm_denominators(c for row in crows for c in row)
    big = [
        [int(c * den) for c in row] + [-den if t == r else 0 for t in range(n * n)]
        for r, row in enumerate(crows)
    ]
    kernel = integer_kernel(IntMatrix(tuple(tuple(r) for r in big)))
    xs, _ = hnf(IntMatrix.from_columns([v[:n] for v in kernel]))
    order_basis = [sum((x * wi for x, wi in zip(col, w)), K.zero) for col in xs.columns() if any(col)]
    order = jacobian_from_periods(K, order_basis)
    closed = (
        order.contains(K.one)
        and all(order.contains(a * b) for a in order.basis() for b in order.basis())
        and all(m.contains(a * b) for a in order.basis() for b in basis)
    )
    if not closed:
        raise ArithmeticError("coefficient ring verification failed")  # unreachable
    conductor = d = None
    order_basis = tuple(order.basis())
    if n == 2:
        d = K.quadratic_data()[0]
        conductor = _conductor(order, d)
        order_basis = (K.one, (omega(d) * conductor).to_field(K))
    return OrderDescription(K, order_basis, order, conductor, d, closed)


def _conductor(order: JacobianModule, d: int) -> int:
    rows = []
    for x in order.basis():
        s = QuadraticSurd.from_field(x)
        # s = u + v*omega with integral u, v
        if d % 4 == 1:
            u, v = s.a - s.b, 2 * s.b
        else:
            u, v = s.a, s.b
        if u.denominator != 1 or v.denominator != 1:
            raise ArithmeticError("order is not inside the maximal order")  # unreachable
        rows.append((int(u), int(v)))
    f = abs(det_exact(rows))
    if quadratic_order(order.field, f) != order:
        raise ArithmeticError("order does not have the form Z + f*omega*Z")  # unreachable
    return f


# -- similarity ------------------------------------------------------------------


def module_ratio(m: JacobianModule) -> QuadraticSurd:
    b = m.basis()
    return QuadraticSurd.from_field(b[1] / b[0])


def module_similar(m1: JacobianModule, m2: JacobianModule) -> str:
    """``"similar"``, ``"distinct"`` or ``"unsupported"`` (degree above 2).

    Quadratic modules ``g(Z + theta*Z)`` are similar exactly when the two
    ratios ``theta`` are GL(2,Z)-equivalent, i.e. when their continued
    fraction periods agree up to rotation.
    """
    if m1.field != m2.field:
        raise UsageError("modules lie in different fields")
    n = m1.field.degree
    if n > 2:
        return "unsupported"
    if m1.rank != n or m2.rank != n:
        raise DomainError("similarity is decided for full-rank modules only")
    if n == 1:
        return "similar"
    p1 = cf_expand(module_ratio(m1)).period
    p2 = cf_expand(module_ratio(m2)).period
    return "similar" if cyclically_equivalent(p1, p2) else "distinct"


# -- numeric formulas for measured foliations -------------------------------------


def _cycles(perm: Sequence[int]) -> int:
    perm = list(perm)
    n = len(perm)
    if sorted(perm) == list(range(1, n + 1)):
        perm = [x - 1 for x in perm]
    if sorted(perm) != list(range(n)):
        raise DomainError(f"{perm} is not a permutation")
    seen = [False] * n
    count = 0
    for i in range(n):
        if not seen[i]:
            count += 1
            j = i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
    return count


def zippered_genus(perm: Sequence[int]) -> tuple[int, int]:
    """Genus and singularity count ``(g, N)`` of the zippered rectangle of ``perm``.

    ``perm`` lists images of ``0..n-1`` (or ``1..n``); ``N`` is its cycle count.
    """
    n = len(perm)
    N = _cycles(perm)
    if (n - N + 1) % 2:
        raise DomainError(f"genus (n - N + 1)/2 = {Fraction(n - N + 1, 2)} is not an integer")
    return (n - N + 1) // 2, N


def index_check(orders: Sequence[int], genus: int) -> bool:
    """Whether singularity orders satisfy ``sum(k_i/2) == 2g - 2``."""
    return Fraction(sum(orders), 2) == 2 * genus - 2


def riemann_hurwitz(genus: int, m: int) -> int:
    """Genus of the double cover ramified over ``m`` odd-order singularities."""
    if genus < 0 or m < 0:
        raise DomainError("genus and m must be nonnegative")
    if m % 2:
        raise DomainError("m must be even")
    return 2 * genus + m // 2 - 1


def foliation_formulas(kind: str, **args):
    if kind == "zippered_genus":
        return zippered_genus(args["perm"])
    if kind == "index_check":
        return index_check(args["orders"], args["genus"])
    if kind == "riemann_hurwitz":
        return riemann_hurwitz(args["genus"], args["m"])
    raise UsageError(f"unknown formula {kind!r}")
