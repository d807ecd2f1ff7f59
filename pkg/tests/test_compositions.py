import pytest
from hypothesis import given
from hypothesis import strategies as st

from chainavoid.compositions import (
    Composition,
    CompositionSet,
    avoids_all,
    comp_contains,
    comp_contains_naive,
    dominates,
    generate_compositions,
    prune_redundant,
)
from chainavoid.errors import BoundExceededError, ParseError
from oracles import naive_comp_contains, naive_compositions

comps = st.lists(st.integers(1, 6), max_size=6).map(Composition)
small_sets = st.lists(st.lists(st.integers(1, 5), min_size=1, max_size=3).map(Composition),
                      min_size=1, max_size=4).map(CompositionSet)


def test_parse_and_format():
    assert Composition.parse("3,2") == (3, 2)
    assert Composition.parse("") == ()
    assert str(Composition((3, 2))) == "3,2"
    s = CompositionSet.parse("6;3,2")
    assert list(s) == [(3, 2), (6,)]
    assert s.pretty() == "{(3,2), (6)}"
    assert CompositionSet.parse(";2").has_empty


@pytest.mark.parametrize("text", ["3,0", "a", "3,,2"])
def test_parse_rejects(text):
    with pytest.raises(ParseError):
        Composition.parse(text)


def test_weight_and_hat():
    c = Composition((3, 2))
    assert c.weight == 5
    assert c.hat() == (2,)
    with pytest.raises(ValueError):
        Composition().hat()


def test_dominates_requires_equal_lengths():
    assert dominates((3, 2), (3, 1))
    with pytest.raises(ValueError):
        dominates((3,), (3, 1))


@given(comps, comps)
def test_greedy_containment_matches_naive(d, c):
    assert comp_contains(d, c) == naive_comp_contains(d, c) == comp_contains_naive(d, c)


@given(comps, comps, st.integers(0, 6), st.integers(1, 3))
def test_containment_is_monotone(d, c, pos, bump):
    # enlarging a host part or inserting a part never destroys containment
    if comp_contains(d, c) and d:
        i = pos % len(d)
        bigger = Composition((*d[:i], d[i] + bump, *d[i + 1:]))
        longer = Composition((*d[:i], bump, *d[i:]))
        assert comp_contains(bigger, c)
        assert comp_contains(longer, c)


@pytest.mark.parametrize("n", range(0, 13))
def test_generation_matches_naive(n):
    got = list(generate_compositions(n))
    assert len(got) == len(set(got)) == (1 if n == 0 else 2 ** (n - 1))
    assert set(got) == set(naive_compositions(n))


def test_generation_by_first_part():
    n = 7
    split = [c for f in range(1, n + 1) for c in generate_compositions(n, first=f)]
    assert sorted(split) == sorted(generate_compositions(n))


def test_generation_bound():
    with pytest.raises(BoundExceededError):
        next(generate_compositions(27))


@given(small_sets, comps)
def test_pruning_preserves_avoidance(cs, d):
    pruned = prune_redundant(cs)
    assert set(pruned) <= set(cs)
    assert avoids_all(d, pruned) == avoids_all(d, cs)


def test_pruning_examples():
    assert prune_redundant(CompositionSet.parse("3,2;3;4,4")) == CompositionSet.parse("3")
    assert prune_redundant(CompositionSet.parse(";3")) == CompositionSet([()])
