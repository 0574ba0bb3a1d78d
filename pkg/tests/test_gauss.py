import pytest

from superyangian.context import ContextError, make_context
from superyangian.pbw import Element, generator, supercommutator
from superyangian.series import series_invert, series_mul, t_matrix, t_series
from superyangian.gauss import (
    GaussError, block_identities, decompose_elimination, gauss_decompose, parity_check, primed_combinations,
    recursion_all, recursion_check, roundtrip_check, uniqueness_check, with_fault,
)

CONFIGS = [
    ((3, 1, 1, "01"), (1, 1)),
    ((5, 2, 1, "010"), (1, 1, 1)),
    ((3, 1, 2, "101"), (1, 2)),
    ((2, 2, 2, "0101"), (1, 2, 1)),
    ((3, 2, 2, "0110"), (1, 1, 1, 1)),
]


def t(ctx, i, j, r):
    return generator(ctx, i, j, r)


def test_single_block_is_t(c21):
    g = gauss_decompose(c21, (3,), 3)
    assert g.D[1].exact_equal(t_matrix(c21, 3))
    assert not g.E and not g.F
    assert not roundtrip_check(g)


def test_two_blocks_on_one_one(c11):
    R = 3
    g = gauss_decompose(c11, (1, 1), R)
    t11, t12, t21, t22 = (t_series(c11, i, j, R) for i, j in ((1, 1), (1, 2), (2, 1), (2, 2)))
    inv = series_invert(t11)
    assert g.D[1].entry(1, 1).exact_equal(t11)
    assert g.E[(1, 2)].entry(1, 1).exact_equal(series_mul(inv, t12))
    assert g.F[(2, 1)].entry(1, 1).exact_equal(series_mul(t21, inv))
    assert g.D[2].entry(1, 1).exact_equal(t22 - series_mul(series_mul(t21, inv), t12))


@pytest.mark.parametrize("cfg,mu", CONFIGS)
def test_first_block_and_level_one(cfg, mu):
    ctx = make_context(*cfg)
    g = gauss_decompose(ctx, mu, 2)
    for i in range(1, mu[0] + 1):
        for j in range(1, mu[0] + 1):
            for r in range(0, 3):
                assert g.d(1, i, j, r) == t(ctx, i, j, r)
    off = [sum(mu[:a]) for a in range(len(mu))]
    for b in range(2, len(mu) + 1):
        for i in range(1, mu[b - 2] + 1):
            for j in range(1, mu[b - 1] + 1):
                assert g.e(b - 1, i, j, 1) == t(ctx, off[b - 2] + i, off[b - 1] + j, 1)
                assert g.f(b - 1, j, i, 1) == t(ctx, off[b - 1] + j, off[b - 2] + i, 1)
    for a in range(1, len(mu) + 1):
        for i in range(1, mu[a - 1] + 1):
            for j in range(1, mu[a - 1] + 1):
                assert g.d(a, i, j, 0) == Element.scalar(ctx, int(i == j))


@pytest.mark.parametrize("cfg,mu", CONFIGS)
def test_roundtrip_uniqueness_parity(cfg, mu):
    ctx = make_context(*cfg)
    g = gauss_decompose(ctx, mu, 3)
    for log in (roundtrip_check(g), block_identities(g), uniqueness_check(g), parity_check(g)):
        assert log.checked > 0
        assert list(log) == []


def test_elimination_matches(c21):
    g = gauss_decompose(c21, (1, 1, 1), 2)
    h = decompose_elimination(c21, (1, 1, 1), 2)
    for k in g.E:
        assert g.E[k].exact_equal(h.E[k])


def test_perturbed_d2_fails(c11):
    g = with_fault(gauss_decompose(c11, (1, 1), 2), "perturb-D2")
    assert roundtrip_check(g)
    with pytest.raises(GaussError):
        with_fault(g, "nope")


@pytest.mark.parametrize("cfg,mu", [c for c in CONFIGS if len(c[1]) >= 3])
def test_recursion_every_pivot(cfg, mu):
    ctx = make_context(*cfg)
    g = gauss_decompose(ctx, mu, 3)
    checked, bad = recursion_all(g)
    assert checked > 0 and not bad


def test_recursion_fault_and_errors(c21):
    g = gauss_decompose(c21, (1, 1, 1), 2)
    checked, bad = recursion_check(g, 1, 3, 1, fault="sign")
    assert bad and bad[0][0][0] in ("E", "F")
    with pytest.raises(GaussError):
        recursion_check(g, 1, 3, 2)
    with pytest.raises(GaussError):
        recursion_check(gauss_decompose(c21, (2, 1), 2), 1, 2, 1)


def test_primed_combinations(c21):
    g = gauss_decompose(c21, (1, 1, 1), 3)
    Ep, Fp = primed_combinations(g)
    assert Fp.entry(1, 1).coeff(1) == g.f(1, 1, 1, 1, b=3).scale(-1)
    assert Ep.entry(1, 1).coeff(1) == g.e(1, 1, 1, 1, b=3).scale(-1)
    # E~_{1,3} = E_1 E_2 - E_{1,3} at levels 1 and 2
    for r in (1, 2):
        assert g.Et[(1, 3)].entry(1, 1).coeff(r) == Ep.entry(1, 1).coeff(r)
    with pytest.raises(GaussError):
        primed_combinations(gauss_decompose(c21, (2, 1), 2))


def test_level_two_recursion_example(c21):
    g = gauss_decompose(c21, (1, 1, 1), 3)
    # the pivot sits in an odd block of 010, so the bracket carries a sign
    assert g.e(1, 1, 1, 2, b=3) == supercommutator(g.e(1, 1, 1, 2), g.e(2, 1, 1, 1)).scale(-1)


def test_bad_inputs(c11):
    with pytest.raises(ContextError):
        gauss_decompose(c11, (1, 2), 2)
    with pytest.raises(GaussError):
        gauss_decompose(c11, (1, 1), 0)


def test_dump_lines_prefix(c11):
    lines1 = gauss_decompose(c11, (1, 1), 1).dump_lines()
    lines2 = gauss_decompose(c11, (1, 1), 2).dump_lines()
    assert set(lines1) <= set(lines2)
    assert "E 1 2 | 1 1 1 | 1*t(1,2,1)" in lines1
