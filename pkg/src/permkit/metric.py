"""Kendall and cyclic Kendall distances, distance tables, balls, Mahonian numbers."""

from __future__ import annotations

import enum
import logging
import threading
from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial

import numpy as np

from .perm import (
    Perm,
    adjacent_transpose,
    compose,
    generator_positions,
    inverse,
    rank,
    unrank,
    wrap_transpose,
)

log = logging.getLogger(__name__)

#: Largest n for which distance tables are built without ``allow_large``.
MAX_TABLE_N = 10
#: Hard ceiling; distances are stored as uint8 and C(11, 2) = 55.
HARD_TABLE_N = 11


class CapacityError(RuntimeError):
    """Requested n exceeds a table or enumeration budget."""


class Metric(str, enum.Enum):
    KENDALL = "kendall"
    CYCLIC = "cyclic"

    @classmethod
    def parse(cls, value: "str | Metric") -> "Metric":
        if isinstance(value, Metric):
            return value
        v = value.strip().lower()
        if v in ("kendall", "k"):
            return cls.KENDALL
        if v in ("cyclic", "cyclic-kendall", "cyclic_kendall", "c"):
            return cls.CYCLIC
        raise ValueError(f"unknown metric {value!r} (expected kendall or cyclic)")


def kendall_distance(a: Perm, b: Perm) -> int:
    """Number of value pairs ordered oppositely in ``a`` and ``b``.

    O(n log n): counts inversions of the sequence of ``a``-positions of the
    values of ``b`` by merge sort.
    """
    if len(a) != len(b):
        raise ValueError(f"size mismatch: {len(a)} vs {len(b)}")
    pos = inverse(a)
    seq = [pos[v - 1] for v in b]
    _, inv = _sort_count(seq)
    return inv


def _sort_count(seq: list[int]) -> tuple[list[int], int]:
    if len(seq) <= 1:
        return seq, 0
    mid = len(seq) // 2
    left, x = _sort_count(seq[:mid])
    right, y = _sort_count(seq[mid:])
    merged = []
    count = x + y
    i = j = 0
    while i < len(left) and j < len(right):
        if left[i] <= right[j]:
            merged.append(left[i])
            i += 1
        else:
            merged.append(right[j])
            count += len(left) - i
            j += 1
    merged.extend(left[i:])
    merged.extend(right[j:])
    return merged, count


def kendall_distance_direct(a: Perm, b: Perm) -> int:
    """O(n^2) evaluation of the discordant-pair formula (test oracle)."""
    if len(a) != len(b):
        raise ValueError(f"size mismatch: {len(a)} vs {len(b)}")
    ia, ib = inverse(a), inverse(b)
    n = len(a)
    return sum(
        1
        for i in range(n)
        for j in range(n)
        if ia[i] < ia[j] and ib[i] > ib[j]
    )


# ---------------------------------------------------------------------------
# distance tables


def perm_array(n: int) -> np.ndarray:
    """All of S_n as an ``(n!, n)`` uint8 array, row index == lexicographic rank."""
    if n == 1:
        return np.ones((1, 1), dtype=np.uint8)
    sub = perm_array(n - 1)
    blocks = []
    for first in range(1, n + 1):
        rest = np.array([s for s in range(1, n + 1) if s != first], dtype=np.uint8)
        block = np.empty((sub.shape[0], n), dtype=np.uint8)
        block[:, 0] = first
        block[:, 1:] = rest[sub - 1]
        blocks.append(block)
    return np.concatenate(blocks)


def rank_array(rows: np.ndarray) -> np.ndarray:
    """Vectorized lexicographic rank of each row of an ``(m, n)`` array."""
    m, n = rows.shape
    out = np.zeros(m, dtype=np.int64)
    for i in range(n - 1):
        digit = (rows[:, i + 1 :] < rows[:, i : i + 1]).sum(axis=1)
        out += digit.astype(np.int64) * factorial(n - 1 - i)
    return out


@dataclass(frozen=True)
class DistanceTable:
    """``dist[rank(s)] == d(e, s)`` for every ``s`` in S_n."""

    n: int
    metric: Metric
    dist: np.ndarray

    def __getitem__(self, p: Perm) -> int:
        return int(self.dist[rank(p)])

    def distance(self, a: Perm, b: Perm) -> int:
        # right-invariance: d(a, b) = d(e, b o a^-1)
        return int(self.dist[rank(compose(b, inverse(a)))])

    def counts(self) -> list[int]:
        """Number of permutations at each distance 0..max from the identity."""
        return [int(c) for c in np.bincount(self.dist)]

    @property
    def max_distance(self) -> int:
        return int(self.dist.max())


def build_distance_table(n: int, metric: "Metric | str", allow_large: bool = False) -> DistanceTable:
    """BFS from the identity over the Cayley graph of the chosen generators."""
    metric = Metric.parse(metric)
    if n < 1:
        raise ValueError("n must be positive")
    limit = HARD_TABLE_N if allow_large else MAX_TABLE_N
    if n > limit:
        raise CapacityError(
            f"distance table for n={n} exceeds capacity n<={limit}"
            + ("" if allow_large else " (pass allow_large for n=11)")
        )
    if n >= 11:
        log.warning("building a %d-entry distance table (~%d MB)", factorial(n), factorial(n) * 12 >> 20)
    perms = perm_array(n)
    size = perms.shape[0]
    neighbours = []
    for i, j in generator_positions(n, metric is Metric.CYCLIC):
        swapped = perms.copy()
        swapped[:, [i, j]] = swapped[:, [j, i]]
        neighbours.append(rank_array(swapped))
    del perms
    dist = np.full(size, 255, dtype=np.uint8)
    dist[0] = 0
    frontier = np.array([0], dtype=np.int64)
    level = 0
    while frontier.size and neighbours:
        level += 1
        reached = np.unique(np.concatenate([nb[frontier] for nb in neighbours]))
        fresh = reached[dist[reached] == 255]
        dist[fresh] = level
        frontier = fresh
    dist.setflags(write=False)
    return DistanceTable(n, metric, dist)


_TABLES: dict[tuple[int, Metric], DistanceTable] = {}
_TABLES_LOCK = threading.Lock()


def distance_table(n: int, metric: "Metric | str", allow_large: bool = False) -> DistanceTable:
    """Cached :func:`build_distance_table`; each (n, metric) is built once."""
    key = (n, Metric.parse(metric))
    with _TABLES_LOCK:
        table = _TABLES.get(key)
        if table is None:
            table = build_distance_table(n, key[1], allow_large=allow_large)
            _TABLES[key] = table
    return table


def cyclic_kendall_distance(a: Perm, b: Perm) -> int:
    if len(a) != len(b):
        raise ValueError(f"size mismatch: {len(a)} vs {len(b)}")
    return distance_table(len(a), Metric.CYCLIC).distance(a, b)


def distance(a: Perm, b: Perm, metric: "Metric | str") -> int:
    if Metric.parse(metric) is Metric.KENDALL:
        return kendall_distance(a, b)
    return cyclic_kendall_distance(a, b)


def distance_function(n: int, metric: "Metric | str"):
    """A two-argument distance callable for S_n, warming the table if needed."""
    metric = Metric.parse(metric)
    if metric is Metric.KENDALL:
        return kendall_distance
    return distance_table(n, metric).distance


# ---------------------------------------------------------------------------
# balls


def neighbours(p: Perm, metric: "Metric | str") -> list[Perm]:
    """Images of ``p`` under each generator of the metric (distance exactly 1)."""
    metric = Metric.parse(metric)
    n = len(p)
    out = [adjacent_transpose(p, i) for i in range(1, n)]
    if metric is Metric.CYCLIC and n > 2:
        out.append(wrap_transpose(p))
    return out


def ball(center: Perm, radius: int, metric: "Metric | str") -> set[Perm]:
    """All permutations within distance ``radius`` of ``center``."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    metric = Metric.parse(metric)
    if radius <= 2:
        seen = {center}
        layer = [center]
        for _ in range(radius):
            nxt = []
            for p in layer:
                for q in neighbours(p, metric):
                    if q not in seen:
                        seen.add(q)
                        nxt.append(q)
            layer = nxt
        return seen
    n = len(center)
    table = distance_table(n, metric)
    idx = np.flatnonzero(table.dist <= radius)
    # y = tau o center has d(center, y) = d(e, tau)
    return {compose(unrank(n, int(i)), center) for i in idx}


@lru_cache(maxsize=None)
def mahonian_row(n: int) -> tuple[int, ...]:
    """Counts of permutations of S_n with k inversions, k = 0..C(n,2)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    row = [1]
    for m in range(2, n + 1):
        # multiply by 1 + q + ... + q^(m-1), via a running window sum
        new = [0] * (len(row) + m - 1)
        window = 0
        for k in range(len(new)):
            if k < len(row):
                window += row[k]
            if k - m >= 0:
                window -= row[k - m]
            new[k] = window
        row = new
    return tuple(row)


def mahonian(n: int, k: int) -> int:
    row = mahonian_row(n)
    return row[k] if 0 <= k < len(row) else 0


def kendall_ball_size(n: int, radius: int) -> int:
    if radius < 0:
        return 0
    return sum(mahonian_row(n)[: radius + 1])


def ball_size(n: int, radius: int, metric: "Metric | str") -> int:
    metric = Metric.parse(metric)
    if metric is Metric.KENDALL:
        return kendall_ball_size(n, radius)
    if radius <= 1:
        return 1 if radius == 0 else 1 + len(generator_positions(n, True))
    return int((distance_table(n, metric).dist <= radius).sum())


def diameter_of_space(n: int, metric: "Metric | str") -> int:
    if Metric.parse(metric) is Metric.KENDALL:
        return comb(n, 2)
    return distance_table(n, metric).max_distance
