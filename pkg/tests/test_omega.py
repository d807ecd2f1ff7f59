import itertools

import pytest

from chainavoid.chains import count_chain_312_321
from chainavoid.errors import NotInOmegaError
from chainavoid.omega import (
    BlockKind,
    OmegaBlock,
    c_of_identity,
    c_of_sigma,
    enumerate_omega,
    in_omega,
    omega_count,
    omega_decompose,
)
from chainavoid.perm import Permutation, perm_from_composition, power
from oracles import naive_compositions, naive_contains


def test_block_families():
    assert OmegaBlock(BlockKind.CYCLE_UP, 4).permutation() == Permutation("2341")
    assert OmegaBlock(BlockKind.SHIFT_TWO, 4).permutation() == Permutation("3412")
    with pytest.raises(ValueError):
        OmegaBlock(BlockKind.SHIFT_TWO, 2)


def test_decomposition_and_base():
    d = omega_decompose("2341567(10)89(11)(12)")
    assert [b.kind for b in d.blocks].count(BlockKind.SINGLETON) == 5
    assert d.base_composition() == (5, 1, 1, 1, 3, 1, 1)
    assert d.permutation() == Permutation("2341567(10)89(11)(12)")


def test_not_in_omega():
    assert omega_decompose("321") is None
    with pytest.raises(NotInOmegaError) as info:
        omega_decompose("12543", strict=True)
    assert info.value.block == "321"
    assert not in_omega("2413")


@pytest.mark.parametrize("n", range(1, 8))
def test_omega_is_the_set_of_square_patterns(n):
    # a 23...m1 block costs one extra host element, so hosts up to n + n//2 suffice
    seen = set()
    for m in range(n, n + n // 2 + 1):
        for d in naive_compositions(m):
            sq = power(perm_from_composition(d), 2)
            for idx in itertools.combinations(range(m), n):
                sub = [sq[i] for i in idx]
                ranks = sorted(sub)
                seen.add(Permutation(ranks.index(v) + 1 for v in sub))
    assert seen == enumerate_omega(n)


def test_counts():
    assert [omega_count(n) for n in range(8)] == [1, 1, 2, 5, 11, 24, 53, 117]


@pytest.mark.parametrize("k", range(1, 8))
def test_identity_set_size(k):
    assert len(c_of_identity(k)) == 2 ** (k - 1)


def test_sigma_in_c_sigma_base():
    for sigma in enumerate_omega(5):
        base = omega_decompose(sigma).base_composition()
        assert base in c_of_sigma(sigma)


@pytest.mark.parametrize("sigma", sorted(enumerate_omega(3) | enumerate_omega(4) | enumerate_omega(5)))
def test_c_sigma_characterises_square_containment(sigma):
    # d avoids C(sigma) exactly when the square of its permutation avoids sigma
    comps = c_of_sigma(sigma)
    for n in range(1, 9):
        for d in naive_compositions(n):
            sq = power(perm_from_composition(d), 2)
            hit = any(all(a >= b for a, b in zip(sub, c))
                      for c in comps for sub in itertools.combinations(d, len(c)))
            assert hit == naive_contains(sq, sigma)


def test_outside_omega_count_is_two_power():
    assert [count_chain_312_321(n, "2413").count for n in range(1, 8)] == [2 ** (n - 1) for n in range(1, 8)]
