import math
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from afinv.errors import DomainError, NotHyperbolicError
from afinv.exactnum import IntMatrix, inverse_unimodular
from afinv.numberfield import QuadraticSurd
from afinv.surdcf import canonical_rotation, cyclically_equivalent
from afinv.torusbundle import (
    TorusMonodromy,
    alexander_polynomial,
    bundle_invariants,
    cf_expand,
    conjugacy_test,
    fixed_point,
    nonneg_representative,
    sylvester_search,
)
from desk import HYPERBOLIC_2X2, random_sl2

A = [[5, 2], [2, 1]]
B = [[5, 1], [4, 1]]
G = [[2, 1], [1, 1]]


def test_monodromy_validation():
    with pytest.raises(DomainError):
        TorusMonodromy(IntMatrix(((2, 0), (0, 1))))
    m = TorusMonodromy(IntMatrix(((-5, -2), (-2, -1))))
    assert m.hyperbolic and m.negated and m.sign_normalized == IntMatrix(A)
    assert not TorusMonodromy(IntMatrix(((1, 1), (0, 1)))).hyperbolic


def test_fixed_points():
    assert fixed_point(A) == QuadraticSurd(1, 1, 2)
    assert fixed_point(B) == QuadraticSurd(Fraction(1, 2), Fraction(1, 2), 2)
    # x = (2x + 1)/(x + 1)  <=>  x^2 - x - 1 = 0
    x = fixed_point(G)
    assert x == QuadraticSurd(Fraction(1, 2), Fraction(1, 2), 5)
    assert x * x - x - 1 == QuadraticSurd(0, 0, 5)
    with pytest.raises(NotHyperbolicError):
        fixed_point([[1, 1], [0, 1]])


def float_cf(x: float, count: int):
    out = []
    for _ in range(count):
        a = math.floor(x)
        out.append(a)
        x = 1 / (x - a)
    return out


def test_cf_examples():
    e = cf_expand(QuadraticSurd(1, 1, 2))
    assert (e.preperiod, e.period) == ((), (2,))
    e = cf_expand(QuadraticSurd(Fraction(1, 2), Fraction(1, 2), 2))
    assert (e.preperiod, e.period) == ((), (1, 4))
    e = cf_expand(QuadraticSurd(0, 1, 3))
    assert (e.preperiod, e.period) == ((1,), (1, 2))
    assert e.digits(8) == float_cf(math.sqrt(3), 8)
    r = cf_expand(Fraction(7, 3))
    assert r.terminating and r.preperiod == (2, 3)


surds = st.tuples(
    st.builds(Fraction, st.integers(-30, 30), st.integers(1, 9)),
    st.builds(Fraction, st.integers(1, 30), st.integers(1, 9)),
    st.sampled_from([2, 3, 5, 6, 7, 10, 13]),
    st.booleans(),
)


@given(surds)
def test_cf_convergent_bound(t):
    a, b, d, neg = t
    x = QuadraticSurd(a, -b if neg else b, d)
    e = cf_expand(x)
    assert e.period and all(c >= 1 for c in e.period) and all(c >= 1 for c in e.preperiod[1:])
    # minimal period
    p = e.period
    assert all(p != p[k:] + p[:k] for k in range(1, len(p)) if len(p) % k == 0)
    digits = e.digits(22)
    xs = sympy.Rational(a.numerator, a.denominator) + (-1 if neg else 1) * sympy.Rational(b.numerator, b.denominator) * sympy.sqrt(d)
    qs = [1, 0]  # q_{-2}, q_{-1}
    for c in digits:
        qs.append(c * qs[-1] + qs[-2])
    conv = e.convergents(21)
    for k in range(20):
        err = abs(xs - sympy.Rational(conv[k].numerator, conv[k].denominator))
        assert sympy.N(err - sympy.Rational(1, qs[k + 2] * qs[k + 3]), 50) <= 0


def test_alexander():
    assert alexander_polynomial(A) == [1, -6, 1]
    assert alexander_polynomial(B) == [1, -6, 1]
    assert alexander_polynomial(G) == [1, -3, 1]


def test_nonneg_representative_examples():
    assert nonneg_representative(A).matrix == IntMatrix(A)
    assert nonneg_representative(B).matrix == IntMatrix(B)
    assert nonneg_representative(G).matrix == IntMatrix(G)
    r = nonneg_representative(IntMatrix(G) ** 3)
    assert r.period_product == IntMatrix(G) and r.exponent == 3


@pytest.mark.parametrize("seed", range(25))
def test_nonneg_representative_random(seed):
    rng = random.Random(seed)
    while True:
        m = random_sl2(rng)
        if abs(m.trace()) > 2:
            break
    r = nonneg_representative(m)
    target = -m if m.trace() < 0 else m
    assert r.matrix.is_nonnegative()
    assert r.certificate @ r.matrix @ inverse_unimodular(r.certificate) == target
    assert r.matrix.trace() == target.trace()


def test_conjugacy_examples():
    v = conjugacy_test(A, B)
    assert v.verdict == "distinct_by_periods" and v.exit_code == 1
    v = conjugacy_test(A, A)
    assert v.verdict == "conjugate" and v.certificate == IntMatrix.identity(2)
    t = IntMatrix(((1, 1), (0, 1)))
    b = t @ IntMatrix(A) @ inverse_unimodular(t)
    v = conjugacy_test(A, b)
    assert v.verdict == "conjugate"
    assert v.certificate @ IntMatrix(A) == b @ v.certificate
    assert conjugacy_test(A, G).verdict == "distinct_by_invariants"
    with pytest.raises(NotHyperbolicError):
        conjugacy_test(A, [[1, 1], [0, 1]])


def test_sylvester_search_finds_certificate():
    t = IntMatrix(((2, 1), (1, 1)))
    b = t @ IntMatrix(A) @ inverse_unimodular(t)
    s = sylvester_search(IntMatrix(A), b)
    assert s is not None and s @ IntMatrix(A) == b @ s


@pytest.mark.parametrize("seed", range(40))
def test_conjugates_never_reported_distinct(seed):
    rng = random.Random(1000 + seed)
    base = IntMatrix(HYPERBOLIC_2X2[seed % len(HYPERBOLIC_2X2)])
    t = random_sl2(rng)
    b = t @ base @ inverse_unimodular(t)
    v = conjugacy_test(base, b)
    assert v.verdict == "conjugate"
    assert v.certificate @ base == b @ v.certificate
    assert alexander_polynomial(base) == alexander_polynomial(b)


def test_bundle_invariants_examples():
    ra = bundle_invariants(A)
    assert (ra.d, ra.conductor, ra.delta, ra.sigma, ra.alexander, ra.cf_period) == (2, 1, 8, 2, (1, -6, 1), (2,))
    rb = bundle_invariants(B)
    assert (rb.d, rb.conductor, rb.delta, rb.sigma, rb.alexander, rb.cf_period) == (2, 2, 32, 2, (1, -6, 1), (1, 4))
    rg = bundle_invariants(G)
    assert (rg.d, rg.delta, rg.sigma, rg.alexander) == (5, 5, 2, (1, -3, 1))


def test_bundle_invariants_negative_trace():
    r = bundle_invariants([[-5, -2], [-2, -1]])
    assert r.negated and r.delta == 8 and r.alexander == (1, 6, 1)


def invariant_key(r):
    return (r.d, r.conductor, r.delta, r.sigma, r.alexander, r.cf_period, r.module_lattice, r.order_basis)


@pytest.mark.parametrize("rows", HYPERBOLIC_2X2)
def test_conjugate_pairs_share_invariants(rows):
    rng = random.Random(sum(map(sum, rows)))
    base = IntMatrix(rows)
    ref = invariant_key(bundle_invariants(base))
    for _ in range(4):
        t = random_sl2(rng)
        assert invariant_key(bundle_invariants(t @ base @ inverse_unimodular(t))) == ref


def test_period_helpers():
    assert cyclically_equivalent((1, 4), (4, 1))
    assert not cyclically_equivalent((2,), (1, 4))
    assert canonical_rotation((4, 1, 3)) == (1, 3, 4)
