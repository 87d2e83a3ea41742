import threading
from itertools import product
from math import comb, factorial

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import bfs_distance, brute_mahonian, inversions, sym_group
from permkit.metric import (
    CapacityError,
    Metric,
    ball,
    ball_size,
    build_distance_table,
    cyclic_kendall_distance,
    distance,
    distance_table,
    kendall_ball_size,
    kendall_distance,
    kendall_distance_direct,
    mahonian,
    mahonian_row,
    perm_array,
    rank_array,
)
from permkit.perm import compose, identity, inverse, rank, reverse

perms_same_n = st.integers(1, 9).flatmap(
    lambda n: st.tuples(*[st.permutations(range(1, n + 1)).map(tuple)] * 3)
)


def test_paper_kendall_examples():
    e = (1, 2, 3, 4, 5)
    assert kendall_distance(e, (3, 1, 2, 4, 5)) == 2
    assert kendall_distance(e, (2, 1, 4, 3, 5)) == 2
    assert kendall_distance((4, 1, 3, 2), (4, 1, 3, 2)) == 0
    assert kendall_distance(identity(4), reverse(identity(4))) == comb(4, 2)


@given(perms_same_n)
def test_merge_count_matches_direct_formula(triple):
    a, b, _ = triple
    assert kendall_distance(a, b) == kendall_distance_direct(a, b)


def test_size_mismatch():
    with pytest.raises(ValueError):
        kendall_distance((1, 2), (1, 2, 3))
    with pytest.raises(ValueError):
        cyclic_kendall_distance((1, 2), (1, 2, 3))


def test_cyclic_paper_example():
    assert cyclic_kendall_distance((1, 2, 3, 4), (4, 3, 2, 1)) == 2
    assert cyclic_kendall_distance((3, 1, 2), (3, 1, 2)) == 0
    # per-pair BFS oracle gives 3 for this rotation
    assert cyclic_kendall_distance((1, 2, 3, 4), (2, 3, 4, 1)) == 3


@pytest.mark.parametrize("metric", ["kendall", "cyclic"])
def test_table_matches_per_pair_bfs_s4(metric):
    cyc = metric == "cyclic"
    group = sym_group(4)
    for a, b in product(group, repeat=2):
        d = distance(a, b, metric)
        assert d == bfs_distance(a, b, cyc)
        if cyc:
            assert d <= kendall_distance(a, b)


@pytest.mark.parametrize("metric", ["kendall", "cyclic"])
def test_right_invariance_and_axioms_s4(metric):
    group = sym_group(4)
    t = distance_table(4, metric)
    d = {(a, b): t.distance(a, b) for a, b in product(group, repeat=2)}
    for a, b in d:
        assert d[a, b] == d[b, a]
        assert (d[a, b] == 0) == (a == b)
    for a, b, c in product(group, repeat=3):
        assert d[a, c] <= d[a, b] + d[b, c]
        assert d[compose(a, c), compose(b, c)] == d[a, b]


def test_table_counts():
    assert build_distance_table(4, Metric.KENDALL).counts() == [1, 3, 5, 6, 5, 3, 1]
    assert build_distance_table(4, Metric.CYCLIC).counts() == [1, 4, 10, 8, 1]
    t3 = build_distance_table(3, Metric.CYCLIC)
    assert int((t3.dist == 0).sum()) == 1 and t3.dist[0] == 0
    assert build_distance_table(5, "kendall").max_distance == 10


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7])
def test_kendall_table_is_inversion_count(n):
    t = distance_table(n, Metric.KENDALL)
    for s in sym_group(n):
        assert t[s] == inversions(s)


def test_table_immutable_and_cached():
    t = distance_table(5, "cyclic")
    assert distance_table(5, Metric.CYCLIC) is t
    with pytest.raises(ValueError):
        t.dist[0] = 3


def test_table_cache_builds_once_under_threads():
    got = []
    threads = [threading.Thread(target=lambda: got.append(distance_table(6, "cyclic"))) for _ in range(8)]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    assert all(g is got[0] for g in got)


def test_capacity():
    with pytest.raises(CapacityError):
        build_distance_table(11, "kendall")
    with pytest.raises(CapacityError):
        build_distance_table(12, "kendall", allow_large=True)


def test_perm_array_and_ranks():
    arr = perm_array(5)
    assert [tuple(int(x) for x in row) for row in arr] == sym_group(5)
    assert np.array_equal(rank_array(arr), np.arange(120))


def test_ball_examples():
    e5 = identity(5)
    assert len(ball(e5, 1, "kendall")) == 5
    assert ball((2, 1, 3), 0, "cyclic") == {(2, 1, 3)}
    assert len(ball(e5, 1, "cyclic")) == 6
    with pytest.raises(ValueError):
        ball(e5, -1, "kendall")


@pytest.mark.parametrize("metric", ["kendall", "cyclic"])
@pytest.mark.parametrize("radius", [0, 1, 2, 3, 4])
def test_ball_matches_filter_and_is_center_independent(metric, radius):
    cyc = metric == "cyclic"
    group = sym_group(5)
    for center in [(1, 2, 3, 4, 5), (3, 5, 1, 4, 2), (5, 4, 3, 2, 1)]:
        b = ball(center, radius, metric)
        assert b == {p for p in group if bfs_distance(center, p, cyc) <= radius}
        assert len(b) == ball_size(5, radius, metric)


def test_mahonian_examples():
    assert mahonian_row(4) == (1, 3, 5, 6, 5, 3, 1)
    assert sum(mahonian_row(4)) == 24
    assert mahonian(7, 0) == 1
    assert mahonian(4, 7) == 0 and mahonian(4, -1) == 0
    assert kendall_ball_size(5, 1) == 5


@pytest.mark.parametrize("n", range(1, 7))
def test_mahonian_dp_matches_brute_force(n):
    assert list(mahonian_row(n)) == brute_mahonian(n)


@given(st.integers(1, 30))
def test_mahonian_row_properties(n):
    row = mahonian_row(n)
    assert sum(row) == factorial(n)
    assert len(row) == comb(n, 2) + 1
    assert row == row[::-1]


@given(perms_same_n)
def test_cyclic_never_exceeds_kendall(triple):
    a, b, c = triple
    if len(a) > 7:
        return
    assert cyclic_kendall_distance(a, b) <= kendall_distance(a, b)
    assert cyclic_kendall_distance(compose(a, c), compose(b, c)) == cyclic_kendall_distance(a, b)
    assert cyclic_kendall_distance(a, b) == distance_table(len(a), "cyclic")[compose(b, inverse(a))]


def test_metric_parse():
    assert Metric.parse("Cyclic") is Metric.CYCLIC
    assert Metric.parse(Metric.KENDALL) is Metric.KENDALL
    with pytest.raises(ValueError):
        Metric.parse("hamming")
