import random

import pytest

from superyangian.context import make_context
from superyangian.pbw import Element, generator
from superyangian.relations import check_family
from superyangian.series import (
    MatrixSeries, Series, SeriesError, clear_denominator_compare, compare_residuals, mat_inverse, mat_mul,
    negate_variable, quasideterminant, series_invert, series_mul, t_matrix, t_series, tprime_matrix,
)


def t(ctx, i, j, r):
    return generator(ctx, i, j, r)


def scalar_series(ctx, R, coeffs, var="u"):
    return Series.univariate(ctx, var, R, [Element.scalar(ctx, c) for c in coeffs])


def test_t_matrix_examples(c11):
    T = t_matrix(c11, 1)
    assert (T.rows, T.cols) == (2, 2)
    assert T.entry(1, 1).coeff(0) == Element.scalar(c11, 1)
    assert T.entry(1, 1).coeff(1) == t(c11, 1, 1, 1)
    assert T.entry(1, 2).coeff(0).is_zero()
    assert T.is_identity_leading()
    assert not T.entry(2, 1).inexact
    with pytest.raises(SeriesError):
        t_matrix(c11, 0)


def test_series_mul_examples(c11):
    R = 3
    c = 2
    a = scalar_series(c11, R, [1, c])
    b = scalar_series(c11, R, [1, -c])
    assert series_mul(a, b) == scalar_series(c11, R, [1, 0, -c * c])
    x = t_series(c11, 1, 2, R)
    assert series_mul(x, Series.constant(c11, ("u",), R, 1)) == x
    pa = Series.univariate(c11, "u", R, [0, t(c11, 1, 2, 1)])
    pb = Series.univariate(c11, "u", R, [0, t(c11, 2, 1, 1)])
    prod = series_mul(pa, pb)
    assert prod.coeff(2) == t(c11, 1, 2, 1) * t(c11, 2, 1, 1)
    assert prod.coeff(1).is_zero() and prod.coeff(3).is_zero()


def test_series_mul_rejects_mismatched_orders(c11):
    with pytest.raises(SeriesError):
        series_mul(t_series(c11, 1, 1, 2), t_series(c11, 1, 1, 3))


def test_series_invert_examples(c11):
    R = 3
    one = Series.constant(c11, ("u",), R, 1)
    assert series_invert(one) == one
    assert series_invert(scalar_series(c11, R, [1, 2])) == scalar_series(c11, R, [1, -2, 4, -8])
    inv = series_invert(t_series(c11, 1, 1, R))
    assert inv.coeff(1) == t(c11, 1, 1, 1).scale(-1)
    assert series_mul(inv, t_series(c11, 1, 1, R)) == one
    with pytest.raises(SeriesError):
        series_invert(t_series(c11, 1, 2, R))


def test_negate_variable(c11):
    a = scalar_series(c11, 2, [1, 1, 1])
    b = negate_variable(a, "u")
    assert b == scalar_series(c11, 2, [1, -1, 1])
    assert negate_variable(b, "u") == a
    with pytest.raises(SeriesError):
        negate_variable(a, "v")


def test_mat_inverse_examples(c11):
    R = 3
    ident = MatrixSeries.identity(c11, ("u",), R, 2)
    assert mat_inverse(ident) == ident
    Tp = tprime_matrix(c11, R)
    for i in (1, 2):
        for j in (1, 2):
            assert Tp.entry(i, j).coeff(1) == t(c11, i, j, 1).scale(-1)
            want = t(c11, i, j, 2).scale(-1)
            for k in (1, 2):
                want = want + t(c11, i, k, 1) * t(c11, k, j, 1)
            assert Tp.entry(i, j).coeff(2) == want
    T = t_matrix(c11, R)
    assert mat_mul(T, Tp).exact_equal(ident)
    assert mat_inverse(Tp).exact_equal(T)
    with pytest.raises(SeriesError):
        mat_inverse(MatrixSeries.zeros(c11, ("u",), R, 2, 2))


def test_quasideterminant_examples():
    ctx = make_context(5, 1, 1, "01")

    def one(c):
        return MatrixSeries(ctx, ("u",), 1, [[Series.constant(ctx, ("u",), 1, c)]])

    A, B, C, D = one(1), one(2), one(3), one(4)
    assert quasideterminant(A, B, C, D) == one(3)
    assert quasideterminant(A, B, one(0), D) == D
    assert quasideterminant(A, one(0), C, D) == D


def _g_series(ctx, c):
    return [Element.scalar(ctx, 1), Element.scalar(ctx, c), Element.scalar(ctx, c * c)]


def _bracket_side(ctx, R, g):
    d = {}
    for r in range(1, R + 1):
        for s in range(1, R + 1):
            k = r + s - 1
            if k < len(g):
                d[(r, s)] = g[k]
    return Series(ctx, ("u", "v"), R, d)


def test_clear_denominator_self_test(c11):
    R = 2
    g = _g_series(c11, 2)
    lhs = _bracket_side(c11, R, g)
    rhs = Series.univariate(c11, "v", R, g) - Series.univariate(c11, "u", R, g)
    verdicts = clear_denominator_compare(lhs, rhs, "u-v")
    assert verdicts and all(ok for _, ok in verdicts)
    assert all(ok for _, ok in clear_denominator_compare(rhs, rhs, None))
    bad = clear_denominator_compare(lhs.scale(-1), rhs, "u-v")
    assert not all(ok for _, ok in bad)
    n, res = compare_residuals(lhs.scale(-1), rhs, "u-v")
    assert n == len(bad) and res


def test_series_mul_associative_and_unital(c11):
    R = 2
    rng = random.Random(3)
    gens = [t(c11, i, j, r) for i in (1, 2) for j in (1, 2) for r in (1, 2)]

    def rand():
        return Series.univariate(c11, "u", R, [Element.scalar(c11, rng.randrange(3))]
                                 + [rng.choice(gens).scale(rng.randrange(1, 3)) for _ in range(R)])

    one = Series.constant(c11, ("u",), R, 1)
    for _ in range(5):
        a, b, c = rand(), rand(), rand()
        assert series_mul(series_mul(a, b), c).exact_equal(series_mul(a, series_mul(b, c)))
        assert series_mul(a, one) == a and series_mul(one, a) == a


def test_exactness_monotone_in_order(c11):
    lo = series_invert(t_series(c11, 1, 1, 2))
    hi = series_invert(t_series(c11, 1, 1, 4))
    for e in lo.exponents():
        if lo.is_exact(e):
            assert lo.coeff(e) == hi.coeff(e)


def test_serialize_format(c11):
    rows = t_series(c11, 1, 2, 1).serialize()
    assert rows == [((0,), "0", True), ((1,), "1*t(1,2,1)", True)]


@pytest.mark.parametrize("cfg", [(3, 1, 1, "01"), (2, 2, 1, "010"), (5, 1, 2, "101")])
def test_commurelation_on_t_matrix(cfg):
    ctx = make_context(*cfg)
    out = check_family(ctx, (1,) * ctx.size, "commurelation", R=3)
    assert out["checked"] > 0 and not out["failures"]
