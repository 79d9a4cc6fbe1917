"""Torus bundles with hyperbolic monodromy in SL(2, Z).

Fixed points of the Moebius action are quadratic surds; their periodic
continued fractions drive the conjugacy test, the nonnegative
representative, and through it the full invariant report.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, NotHyperbolicError
from .exactnum import IntMatrix, as_matrix, charpoly, det_exact, integer_kernel, inverse_unimodular
from .numberfield import QuadraticSurd
from .pfdata import coefficient_ring, jacobian_from_periods, perron_data
from .surdcf import SurdCF, cf_expand, cyclically_equivalent, digit_matrix
from .traceform import form_invariants, gram

__all__ = [
    "TorusMonodromy",
    "SurdCF",
    "cf_expand",
    "fixed_point",
    "alexander_polynomial",
    "NonnegRepresentative",
    "nonneg_representative",
    "ConjugacyVerdict",
    "conjugacy_test",
    "BundleReport",
    "bundle_invariants",
]

DEFAULT_SEARCH_BOUND = 50


@dataclass(frozen=True)
class TorusMonodromy:
    matrix: IntMatrix

    def __post_init__(self):
        m = as_matrix(self.matrix)
        if m.shape != (2, 2):
            raise DomainError("monodromy must be a 2x2 matrix")
        if det_exact(m) != 1:
            raise DomainError(f"monodromy must have determinant 1, got {det_exact(m)}")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def of(cls, a) -> "TorusMonodromy":
        return a if isinstance(a, cls) else cls(as_matrix(a))

    @property
    def trace(self) -> int:
        return self.matrix.trace()

    @property
    def hyperbolic(self) -> bool:
        return abs(self.trace) > 2

    @property
    def negated(self) -> bool:
        return self.trace < 0

    @property
    def sign_normalized(self) -> IntMatrix:
        return -self.matrix if self.negated else self.matrix

    def require_hyperbolic(self) -> "TorusMonodromy":
        if not self.hyperbolic:
            raise NotHyperbolicError(f"|trace| = {abs(self.trace)} <= 2")
        return self


def fixed_point(A) -> QuadraticSurd:
    """Attracting fixed point of ``x -> (a x + b) / (c x + d)`` for the positive-trace sign of ``A``."""
    A = TorusMonodromy.of(A).require_hyperbolic()
    (a, b), (c, d) = A.sign_normalized.rows
    # c = 0 forces a = d = +-1, which is never hyperbolic
    t = a + d
    return QuadraticSurd.from_sqrt(Fraction(a - d, 2 * c), Fraction(1, 2 * c), t * t - 4)


def alexander_polynomial(A) -> list[int]:
    """``t^2 - tr(A) t + 1`` as coefficients, highest degree first."""
    return charpoly(TorusMonodromy.of(A).matrix)


def _product(mats) -> IntMatrix:
    out = IntMatrix.identity(2)
    for m in mats:
        out = out @ IntMatrix(m)
    return out


@dataclass(frozen=True)
class NonnegRepresentative:
    """``certificate @ matrix @ certificate^-1 == sign * A`` with ``matrix = period_product ** exponent``."""

    matrix: IntMatrix
    period_product: IntMatrix
    exponent: int
    certificate: IntMatrix
    negated: bool
    period: tuple[int, ...]  # the rotated period the product is built from
    cf: SurdCF


def nonneg_representative(A) -> NonnegRepresentative:
    """A canonical nonnegative matrix conjugate in SL(2, Z) to ``A`` or ``-A``.

    The fixed point expands as ``[a_0; a_1, ...]``.  Among the starting
    positions ``k`` inside the periodic part with ``k`` even (so the prefix
    product has determinant 1) the lexicographically smallest rotation of the
    period is chosen.  The digit matrices over that rotation multiply to a
    positive matrix, squared when the period is odd.
    """
    A = TorusMonodromy.of(A).require_hyperbolic()
    target = A.sign_normalized
    cf = cf_expand(fixed_point(A))
    pre, per = cf.preperiod, cf.period
    p = len(per)
    digits = cf.digits(len(pre) + 3 * p)
    starts = [k for k in range(len(pre), len(pre) + 2 * p) if k % 2 == 0]
    k = min(starts, key=lambda s: (tuple(digits[s:s + p]), s))
    rot = tuple(digits[k:k + p])
    m0 = _product(digit_matrix(a) for a in rot)
    if p % 2:
        m0 = m0 @ m0
    tr = target.trace()
    power, j = m0, 1
    while power.trace() < tr:
        power, j = power @ m0, j + 1
    cert = _product(digit_matrix(a) for a in digits[:k])
    if power.trace() != tr or cert @ power @ inverse_unimodular(cert) != target:
        raise ArithmeticError("nonnegative representative failed verification")  # unreachable
    return NonnegRepresentative(power, m0, j, cert, A.negated, rot, cf)


# -- conjugacy ------------------------------------------------------------------


@dataclass(frozen=True)
class ConjugacyVerdict:
    verdict: str  # conjugate | distinct_by_invariants | distinct_by_periods | undetermined
    certificate: IntMatrix | None = None
    periods: tuple = ()

    @property
    def exit_code(self) -> int:
        if self.verdict == "conjugate":
            return 0
        return 2 if self.verdict == "undetermined" else 1


def _check_certificate(t: IntMatrix, a: IntMatrix, b: IntMatrix) -> bool:
    return det_exact(t) == 1 and t @ a == b @ t


def sylvester_search(a: IntMatrix, b: IntMatrix, bound: int = DEFAULT_SEARCH_BOUND) -> IntMatrix | None:
    """Search ``T = x K1 + y K2`` in the solution lattice of ``T A = B T`` for ``det T = 1``.

    Shells of growing max-norm are scanned up to ``bound`` so small solutions
    are found first and the result is deterministic.
    """
    rows = []
    for i, j in itertools.product(range(2), repeat=2):
        # (TA - BT)[i][j] as a linear form in vec(T) = (t00, t01, t10, t11)
        row = [0] * 4
        for k in range(2):
            row[2 * i + k] += a[k, j]
            row[2 * k + j] -= b[i, k]
        rows.append(row)
    kernel = integer_kernel(IntMatrix(tuple(map(tuple, rows))))
    if len(kernel) != 2:
        return None
    k1, k2 = kernel
    for r in range(bound + 1):
        for x in range(-r, r + 1):
            for y in range(-r, r + 1):
                if max(abs(x), abs(y)) != r:
                    continue
                v = [x * s + y * t for s, t in zip(k1, k2)]
                if v[0] * v[3] - v[1] * v[2] == 1:
                    return IntMatrix.from_flat(v)
    return None


def conjugacy_test(A, B, bound: int = DEFAULT_SEARCH_BOUND) -> ConjugacyVerdict:
    """Decide SL(2, Z) conjugacy ``B = T A T^-1`` with layered evidence."""
    A = TorusMonodromy.of(A).require_hyperbolic()
    B = TorusMonodromy.of(B).require_hyperbolic()
    if charpoly(A.matrix) != charpoly(B.matrix):
        return ConjugacyVerdict("distinct_by_invariants")
    if A.matrix == B.matrix:
        return ConjugacyVerdict("conjugate", IntMatrix.identity(2))
    ra, rb = nonneg_representative(A), nonneg_representative(B)
    periods = (ra.cf.period, rb.cf.period)
    if not cyclically_equivalent(*periods):
        return ConjugacyVerdict("distinct_by_periods", None, periods)
    if ra.matrix == rb.matrix:
        t = rb.certificate @ inverse_unimodular(ra.certificate)
        if _check_certificate(t, A.matrix, B.matrix):
            return ConjugacyVerdict("conjugate", t, periods)
    t = sylvester_search(A.matrix, B.matrix, bound)
    if t is not None and _check_certificate(t, A.matrix, B.matrix):
        return ConjugacyVerdict("conjugate", t, periods)
    return ConjugacyVerdict("undetermined", None, periods)


# -- invariant report --------------------------------------------------------------


@dataclass(frozen=True)
class BundleReport:
    matrix: IntMatrix
    d: int
    conductor: int
    delta: Fraction
    sigma: int
    alexander: tuple[int, ...]
    cf_period: tuple[int, ...]
    module_lattice: tuple  # HNF columns of denominator * coordinates
    module_denominator: int
    order_basis: tuple[str, ...]
    representative: IntMatrix
    exponent: int
    negated: bool
    warnings: tuple[str, ...] = ()


def bundle_invariants(A) -> BundleReport:
    """Field, order, trace-form and continued-fraction invariants of a hyperbolic monodromy.

    Everything module-valued is computed on the canonical nonnegative
    representative, so conjugate inputs produce identical reports apart from
    the echoed matrix.
    """
    A = TorusMonodromy.of(A).require_hyperbolic()
    rep = nonneg_representative(A)
    pd = perron_data(rep.matrix)
    m = jacobian_from_periods(pd.field, pd.eigenvector)
    order = coefficient_ring(m)
    inv = form_invariants(gram(m))
    return BundleReport(
        matrix=A.matrix,
        d=order.d,
        conductor=order.conductor,
        delta=inv.delta,
        sigma=inv.sigma,
        alexander=tuple(alexander_polynomial(A)),
        cf_period=rep.period,
        module_lattice=tuple(m.lattice.columns()),
        module_denominator=m.denominator,
        order_basis=tuple(str(QuadraticSurd.from_field(x)) for x in order.basis),
        representative=rep.matrix,
        exponent=rep.exponent,
        negated=rep.negated,
        warnings=pd.warnings,
    )
