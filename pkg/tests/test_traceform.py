import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from afinv.errors import DimensionError, DomainError
from afinv.numberfield import NumberField, QuadraticSurd
from afinv.pfdata import coefficient_ring, jacobian_from_periods, perron_data, quadratic_order
from afinv.traceform import form_invariants, gram, make_gram, order_form_closed, order_form_direct
from desk import PRIMITIVE_SUITE, random_unimodular

K2 = NumberField.quadratic(2)


def rows_of(g):
    return [list(r) for r in g.entries]


def test_gram_examples():
    ga = gram(jacobian_from_periods(K2, [1, QuadraticSurd(-1, 1, 2)]))
    assert rows_of(ga) == [[2, -2], [-2, 6]]
    gb = gram(jacobian_from_periods(K2, [1, QuadraticSurd(-2, 2, 2)]))
    assert rows_of(gb) == [[2, -4], [-4, 24]]
    go = gram([K2.one, K2(QuadraticSurd(0, 1, 2))])
    assert rows_of(go) == [[2, 0], [0, 4]]


def test_gram_field_mismatch():
    with pytest.raises(DimensionError):
        gram([K2.one, NumberField.quadratic(3).one])


def test_form_invariants_examples():
    a = form_invariants(make_gram([[2, -2], [-2, 6]]))
    assert (a.delta, a.sigma) == (8, 2)
    assert a.diagonal == (2, 4)  # 2(x - y)^2 + 4y^2
    b = form_invariants(make_gram([[2, -4], [-4, 24]]))
    assert (b.delta, b.sigma) == (32, 2)
    h = form_invariants(make_gram([[1, 0], [0, -1]]))
    assert (h.delta, h.sigma) == (-1, 0)


def test_zero_diagonal_and_degenerate_forms():
    h = form_invariants(make_gram([[0, 1], [1, 0]]))
    assert (h.delta, h.sigma, h.radical_dim) == (-1, 0, 0)
    d = form_invariants(make_gram([[1, 1], [1, 1]]))
    assert (d.delta, d.sigma, d.radical_dim) == (0, 1, 1)
    z = form_invariants(make_gram([[0, 0], [0, 0]]))
    assert (z.sigma, z.radical_dim) == (0, 2)


def check_certificate(g, inv):
    t = sympy.Matrix(inv.transform)
    diag = sympy.Matrix(g.entries)
    out = t.T * diag * t
    expected = list(inv.diagonal) + [0] * inv.radical_dim
    assert out == sympy.diag(*expected)


def sign_changes(coeffs):
    signs = [c > 0 for c in coeffs if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


sym_forms = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.integers(-6, 6), min_size=n * n, max_size=n * n).map(
        lambda xs: [[xs[min(i, j) * n + max(i, j)] for j in range(n)] for i in range(n)]
    )
)


@given(sym_forms)
def test_diagonalization_certificate_and_inertia(rows):
    g = make_gram(rows)
    inv = form_invariants(g)
    check_certificate(g, inv)
    assert inv.delta == sympy.Matrix(rows).det()
    # a symmetric matrix has only real eigenvalues, so Descartes' rule counts them exactly
    x = sympy.Symbol("x")
    cp = sympy.Matrix(rows).charpoly(x)
    pos = sign_changes(cp.all_coeffs())
    neg = sign_changes(sympy.Poly(cp.as_expr().subs(x, -x), x).all_coeffs())
    assert inv.sigma == pos - neg
    assert abs(inv.sigma) <= g.n
    if inv.delta != 0:
        assert (g.n - inv.sigma) % 2 == 0
        assert (inv.delta > 0) == ((g.n - inv.sigma) // 2 % 2 == 0)


@given(sym_forms, st.integers(0, 10**6))
def test_unimodular_invariance(rows, seed):
    g = make_gram(rows)
    u = random_unimodular(random.Random(seed), g.n)
    a, b = form_invariants(g), form_invariants(g.transformed(u))
    assert (a.delta, a.sigma) == (b.delta, b.sigma)


def test_order_form_examples():
    assert order_form_closed(2, 1).invariants.delta == 8
    assert order_form_closed(5, 1).invariants.delta == 5
    assert order_form_closed(3, 2).invariants.delta == 48
    # oracle: Gram matrix of {1, 2*sqrt(3)} by hand is (2 0; 0 24)
    assert order_form_direct(3, 2).delta == 48
    assert order_form_closed(5, 1).form == (2, 2, 3)
    with pytest.raises(DomainError):
        order_form_closed(12, 1)


@pytest.mark.parametrize("d", [2, 3, 5, 7, 13])
@pytest.mark.parametrize("f", [1, 2, 3])
def test_order_form_grid(d, f):
    closed = order_form_closed(d, f)
    K = NumberField.quadratic(d)
    order = quadratic_order(K, f)
    direct = form_invariants(gram(order.basis()))
    assert closed.invariants.delta == direct.delta
    assert closed.invariants.sigma == direct.sigma == 2
    assert coefficient_ring(order).conductor == f


@pytest.mark.parametrize("rows", PRIMITIVE_SUITE)
def test_perron_module_trace_form(rows):
    pd = perron_data(rows)
    m = jacobian_from_periods(pd.field, pd.eigenvector)
    inv = form_invariants(gram(m))
    # generators beyond the field degree are dependent, leaving a radical
    assert inv.radical_dim == len(rows) - m.rank
    assert (inv.delta != 0) == (m.rank == len(rows))
    assert form_invariants(gram(m.basis())).delta != 0
    assert abs(inv.sigma) <= len(rows)
    assert isinstance(inv.delta, Fraction)
