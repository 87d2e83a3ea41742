import random
from math import factorial

import pytest
from hypothesis import given, strategies as st

from oracles import sym_group
from permkit.perm import (
    adjacent_transpose,
    check_perm,
    compose,
    identity,
    inverse,
    parse_perm,
    rank,
    reverse,
    rotate,
    transposition,
    unrank,
    wrap_transpose,
)


def perms(min_n=1, max_n=8):
    return st.integers(min_n, max_n).flatmap(lambda n: st.permutations(range(1, n + 1)).map(tuple))


def test_compose_identity():
    s = (3, 1, 2)
    assert compose(identity(3), s) == s
    assert compose(s, identity(3)) == s


def test_compose_transposition_swaps_positions():
    assert compose((1, 3, 2, 4), (1, 2, 3, 4)) == (1, 3, 2, 4)
    assert compose(transposition(4, 2, 3), (4, 1, 3, 2)) == (4, 3, 1, 2)


def test_compose_pointwise_random_pairs():
    rng = random.Random(1)
    for _ in range(100):
        a = tuple(rng.sample(range(1, 7), 6))
        b = tuple(rng.sample(range(1, 7), 6))
        c = compose(a, b)
        assert all(c[i - 1] == b[a[i - 1] - 1] for i in range(1, 7))


def test_compose_size_mismatch():
    with pytest.raises(ValueError):
        compose((1, 2), (1, 2, 3))


def test_inverse_examples():
    assert inverse((1, 2, 3)) == (1, 2, 3)
    assert inverse((2, 3, 1)) == (3, 1, 2)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_inverse_exhaustive(n):
    e = identity(n)
    for s in sym_group(n):
        assert compose(s, inverse(s)) == e
        assert compose(inverse(s), s) == e
        assert inverse(inverse(s)) == s


def test_adjacent_transpose():
    assert adjacent_transpose((1, 2, 3, 4), 1) == (2, 1, 3, 4)
    assert adjacent_transpose(parse_perm("0 1 2 3 4", zero_based=True), 4) == (1, 2, 3, 5, 4)
    with pytest.raises(ValueError):
        adjacent_transpose((1, 2, 3), 3)
    with pytest.raises(ValueError):
        adjacent_transpose((1, 2, 3), 0)


def test_adjacent_transpose_exhaustive_s5():
    for s in sym_group(5):
        for i in range(1, 5):
            t = adjacent_transpose(s, i)
            assert {k for k in range(5) if t[k] != s[k]} == {i - 1, i}
            assert t == compose(transposition(5, i, i + 1), s)
            assert adjacent_transpose(t, i) == s


def test_wrap_transpose():
    assert wrap_transpose((1, 2, 3, 4)) == (4, 2, 3, 1)
    assert wrap_transpose((1, 2)) == (2, 1)
    with pytest.raises(ValueError):
        wrap_transpose((1,))


@given(perms(2))
def test_wrap_is_involution(p):
    assert wrap_transpose(wrap_transpose(p)) == p


def test_reverse_and_rank_basics():
    assert reverse((1, 2, 3, 4)) == (4, 3, 2, 1)
    for n in range(1, 7):
        assert rank(identity(n)) == 0
        assert unrank(n, 0) == identity(n)
        assert rank(reverse(identity(n))) == factorial(n) - 1


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_rank_is_lexicographic_bijection(n):
    group = sym_group(n)  # itertools order is lexicographic
    assert [rank(s) for s in group] == list(range(factorial(n)))
    assert all(unrank(n, rank(s)) == s for s in group)


def test_unrank_out_of_range():
    with pytest.raises(ValueError):
        unrank(4, 24)
    with pytest.raises(ValueError):
        unrank(4, -1)


@given(perms(), st.integers(-20, 20))
def test_rotate_preserves_perm(p, k):
    assert sorted(rotate(p, k)) == sorted(p)
    assert rotate(rotate(p, k), -k) == p


def test_parse_and_check():
    assert parse_perm("2,4,1,3") == (2, 4, 1, 3)
    assert parse_perm("[2 4 1 3]") == (2, 4, 1, 3)
    assert parse_perm("1 3 0 2", zero_based=True) == (2, 4, 1, 3)
    for bad in ([1, 1, 2], [0, 1, 2], [], [1, 3]):
        with pytest.raises(ValueError):
            check_perm(bad)
