from itertools import product

import pytest
from hypothesis import given, strategies as st

from superyangian.context import (
    Composition, ContextError, all_sequences, check_composition, compositions, is_prime, make_context,
    restricted_parity, sequence_transform, sort_generators,
)


def test_make_context_reads_digits():
    c = make_context(2, 1, 1, "01")
    assert (c.parity(1), c.parity(2)) == (0, 1)
    c = make_context(3, 2, 1, "010")
    assert c.parities == (0, 1, 0)


@pytest.mark.parametrize("args", [(4, 1, 1, "01"), (1, 1, 1, "01"), (3, 1, 1, "011"), (3, 2, 1, "011"),
                                  (3, 1, 1, "0a")])
def test_make_context_rejects(args):
    with pytest.raises(ContextError):
        make_context(*args)


def test_is_prime():
    assert [q for q in range(20) if is_prime(q)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_sequence_transforms():
    assert sequence_transform("0011", "flip") == "1100"
    assert sequence_transform("0011", "reverse") == "1100"
    # flip gives 101, reversing keeps it
    assert sequence_transform("010", "flip_reverse") == "101"
    assert sequence_transform("0010", "flip_reverse") == "1011"


def test_parity_identities_all_short_sequences():
    for n in range(1, 6):
        for bits in product("01", repeat=n):
            s = "".join(bits)
            fs, rs, ds = (sequence_transform(s, k) for k in ("flip", "reverse", "flip_reverse"))
            for i in range(1, n + 1):
                p = int(s[i - 1])
                assert p == (int(fs[i - 1]) + 1) % 2
                assert p == int(rs[n - i])
                assert p == (int(ds[n - i]) + 1) % 2


def test_restricted_parity_examples():
    assert restricted_parity((1, 2), "010", 2, 1) == 1
    assert restricted_parity((1, 2), "010", 2, 2) == 0
    assert restricted_parity((3,), "001", 1, 3) == 1
    with pytest.raises(ContextError):
        restricted_parity((1, 2), "010", 2, 3)


@given(st.lists(st.integers(1, 3), min_size=1, max_size=4), st.data())
def test_restricted_parity_is_global_digit(parts, data):
    total = sum(parts)
    sigma = data.draw(st.text("01", min_size=total, max_size=total))
    mu = Composition(tuple(parts))
    for a in range(1, mu.n + 1):
        for i in range(1, mu.size(a) + 1):
            assert restricted_parity(mu, sigma, a, i) == int(sigma[mu.offset(a) + i - 1])


def test_composition_counts_and_offsets():
    mu = Composition.parse("1,2,1")
    assert mu.n == 3 and mu.total == 4
    assert [mu.offset(a) for a in (1, 2, 3)] == [0, 1, 3]
    c = make_context(3, 2, 2, "0110")
    assert [mu.counts(c.sigma, a) for a in (1, 2, 3)] == [(1, 0), (0, 2), (1, 0)]
    assert all(sum(mu.counts(c.sigma, a)) == mu.size(a) for a in (1, 2, 3))


def test_check_composition_sum():
    with pytest.raises(ContextError):
        check_composition(make_context(3, 2, 1, "010"), "1,1")
    with pytest.raises(ContextError):
        Composition((1, 0))


def test_compositions_enumeration():
    assert [m.parts for m in compositions(3)] == [(1, 1, 1), (1, 2), (2, 1), (3,)]
    assert [m.parts for m in compositions(4, 2)] == [(1, 3), (2, 2), (3, 1)]


def test_all_sequences():
    assert list(all_sequences(2, 2)) == ["0011", "0101", "0110", "1001", "1010", "1100"]


def test_generator_order_total_and_deterministic():
    gens = [(2, 1, 1), (1, 1, 2), (1, 2, 1), (1, 1, 1)]
    assert sort_generators(gens) == [(1, 1, 1), (1, 2, 1), (2, 1, 1), (1, 1, 2)]
    assert sort_generators(list(reversed(gens))) == sort_generators(gens)
