import random

import pytest

from superyangian.context import ContextError, make_context
from superyangian.maps import (
    KINDS, MapError, antipode_antihom_check, apply_map, corner_commute_check, dual_context, factorization_check,
    image, involution_check, make_map, parity_preservation_check, psi_dual_path, psi_on_parabolic,
    suffix_context, well_definedness, zeta_on_parabolic,
)
from superyangian.pbw import Element, generator

CONTEXTS = [(3, 1, 1, "01"), (5, 2, 1, "010"), (3, 1, 2, "101"), (2, 2, 1, "001")]


def t(ctx, i, j, r):
    return generator(ctx, i, j, r)


def test_zeta_example(c11):
    m = make_map("zeta", c11, 2)
    tgt = dual_context(c11)
    assert m.target == tgt
    assert apply_map(m, t(c11, 1, 1, 1)) == t(tgt, 2, 2, 1).scale(-1)


def test_phi_example(c11):
    m = make_map("phi_shift", c11, 2, prefix="0")
    assert m.L == 1 and m.target.sigma == "001"
    assert apply_map(m, t(c11, 1, 2, 1)) == t(m.target, 2, 3, 1)


@pytest.mark.parametrize("cfg", CONTEXTS)
def test_involutions(cfg):
    ctx = make_context(*cfg)
    for kind in ("omega", "sigma_anti"):
        checked, bad = involution_check(kind, ctx, 3)
        assert checked and not bad


@pytest.mark.parametrize("cfg", CONTEXTS)
def test_factorizations_and_antipode(cfg):
    ctx = make_context(*cfg)
    for check in (factorization_check, antipode_antihom_check, parity_preservation_check):
        checked, bad = check(ctx, 3)
        assert checked and not bad


def test_psi_dual_path_example():
    small = make_context(3, 1, 1, "01")
    big = make_context(3, 2, 1, "001")
    checked, bad = psi_dual_path(small, big, 1, 1, 1, 2)
    assert checked == 3 and not bad
    m = make_map("psi_shift", small, 2, target=big)
    assert image(m, 1, 1, 1) == t(big, 2, 2, 1)
    for i in (1, 2):
        for j in (1, 2):
            assert image(m, i, j, 0) == Element.scalar(big, int(i == j))
    with pytest.raises(MapError):
        psi_dual_path(small, make_context(3, 1, 2, "110"), 1, 1, 1, 2)


def test_psi_key_is_shift_only():
    small = make_context(3, 1, 1, "01")
    for prefix in ("0", "1", "01", "10"):
        checked, bad = factorization_check(make_context(3, 1 + prefix.count("0"), 1 + prefix.count("1"),
                                                        prefix + "01"), 2)
        assert not bad
        m = make_map("psi_shift", small, 2, prefix=prefix)
        assert m.L == len(prefix)


@pytest.mark.parametrize("cfg,mu,a", [
    ((3, 1, 1, "01"), (1, 1), 2),
    ((5, 2, 1, "010"), (1, 1, 1), 2),
    ((5, 2, 1, "010"), (1, 1, 1), 3),
    ((3, 2, 2, "0110"), (1, 2, 1), 2),
])
def test_psi_on_parabolic(cfg, mu, a):
    ctx = make_context(*cfg)
    checked, bad = psi_on_parabolic(ctx, mu, a, 3)
    assert checked and not bad


def test_psi_on_parabolic_fault_and_range(c11):
    checked, bad = psi_on_parabolic(c11, (1, 1), 2, 2, fault="sign")
    assert bad
    with pytest.raises(MapError):
        psi_on_parabolic(c11, (1, 1), 1, 2)


@pytest.mark.parametrize("cfg,mu", [
    ((3, 1, 1, "01"), (1, 1)),
    ((3, 1, 1, "01"), (2,)),
    ((5, 2, 1, "010"), (1, 1, 1)),
    ((3, 1, 2, "101"), (1, 1, 1)),
    ((3, 2, 2, "0110"), (1, 2, 1)),
])
def test_zeta_on_parabolic(cfg, mu):
    ctx = make_context(*cfg)
    checked, bad = zeta_on_parabolic(ctx, mu, 3)
    assert checked and not bad


def test_zeta_literal_reading_fails_on_outer_blocks(c21):
    checked, bad = zeta_on_parabolic(c21, (1, 1, 1), 2, reading="literal")
    assert bad
    assert {f[0][0] for f in bad} <= {"zetae", "zetaf"}
    assert zeta_on_parabolic(c21, (1, 1, 1), 2, fault="sign")[1]


def test_corner_commute(c21):
    assert not corner_commute_check(c21, 1, 2)[1]
    assert corner_commute_check(c21, 3, 2) == (0, [])
    assert corner_commute_check(c21, 1, 2, fault="phi")[1]
    with pytest.raises(MapError):
        corner_commute_check(c21, 0, 2)


@pytest.mark.parametrize("kind", ["rho", "zeta", "omega", "sigma_anti", "antipode"])
def test_well_defined(kind, c11):
    checked, bad = well_definedness(make_map(kind, c11, 3), 2)
    assert checked and not bad


def test_shift_well_defined(c11):
    for kind in ("phi_shift", "psi_shift"):
        checked, bad = well_definedness(make_map(kind, c11, 3, prefix="1"), 2)
        assert checked and not bad


def test_well_defined_detects_fault(c11):
    assert well_definedness(make_map("rho", c11, 2, fault="sign"), 2)[1]


def test_level_bound_and_context_errors(c11, c21):
    m = make_map("omega", c11, 2)
    with pytest.raises(MapError):
        image(m, 1, 1, 3)
    with pytest.raises(ContextError):
        apply_map(m, t(c21, 1, 1, 1))
    with pytest.raises(MapError):
        make_map("nope", c11, 2)
    with pytest.raises(MapError):
        make_map("phi_shift", c11, 2)
    with pytest.raises(MapError):
        suffix_context(c11, 3)
    assert set(KINDS) == {"rho", "sigma_anti", "antipode", "omega", "zeta", "phi_shift", "psi_shift"}


def test_rho_is_homomorphism_on_random_products(c21):
    m = make_map("rho", c21, 3)
    rng = random.Random(1)
    for _ in range(10):
        x = t(c21, rng.randint(1, 3), rng.randint(1, 3), rng.randint(1, 2))
        y = t(c21, rng.randint(1, 3), rng.randint(1, 3), rng.randint(1, 2))
        assert apply_map(m, x * y) == apply_map(m, x) * apply_map(m, y)
