"""Rotation classes of S_n and codes over them.

Two permutations are equivalent when one is a cyclic shift of the other's
one-line notation.  Every class has exactly n members, and its canonical
representative is the rotation that starts with symbol 1 (the lexicographic
minimum).  Two classes are adjacent when some members are at Kendall distance
one; class distance is the shortest-path distance of that adjacency.
"""

from __future__ import annotations

import threading
from collections import Counter, deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from math import factorial
from typing import Iterable

from .codes import CodeBook, min_distance
from .metric import CapacityError, Metric
from .perm import Perm, adjacent_transpose, check_perm, format_perm, rotate

#: Largest n whose class graph is built.
MAX_CLASS_N = 9


@dataclass(frozen=True, order=True)
class RotationClass:
    n: int
    representative: Perm

    @property
    def size(self) -> int:
        return self.n

    def rotations(self) -> list[Perm]:
        return [rotate(self.representative, k) for k in range(self.n)]


def class_of(p: Perm) -> RotationClass:
    p = check_perm(p)
    return RotationClass(len(p), rotate(p, p.index(1)))


def all_classes(n: int) -> list[RotationClass]:
    """The (n-1)! classes in representative order."""
    return [RotationClass(n, (1,) + rest) for rest in permutations(range(2, n + 1))]


def class_neighbours(c: RotationClass) -> set[RotationClass]:
    out = set()
    for q in c.rotations():
        for i in range(1, c.n):
            out.add(class_of(adjacent_transpose(q, i)))
    out.discard(c)
    return out


class ClassGraph:
    """Adjacency of S^c_n with per-source BFS distances computed on demand."""

    def __init__(self, n: int):
        if n > MAX_CLASS_N:
            raise CapacityError(f"class graph limited to n <= {MAX_CLASS_N}")
        self.n = n
        self.classes = all_classes(n)
        self.index = {c: k for k, c in enumerate(self.classes)}
        self.adj = [sorted(self.index[d] for d in class_neighbours(c)) for c in self.classes]
        self._bfs = lru_cache(maxsize=4096)(self._bfs_from)

    def _bfs_from(self, src: int) -> tuple[int, ...]:
        dist = [-1] * len(self.classes)
        dist[src] = 0
        queue = deque([src])
        while queue:
            u = queue.popleft()
            for v in self.adj[u]:
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        return tuple(dist)

    def distance(self, a: RotationClass, b: RotationClass) -> int:
        return self._bfs(self.index[a])[self.index[b]]

    def stats(self) -> dict:
        degrees = Counter(len(a) for a in self.adj)
        ecc = self._bfs(0)
        return {
            "n": self.n,
            "classes": len(self.classes),
            "class_size": self.n,
            "degree_histogram": {str(k): v for k, v in sorted(degrees.items())},
            "eccentricity_of_identity_class": max(ecc),
            "distance_profile_from_identity_class": dict(sorted(Counter(ecc).items())),
        }


_GRAPHS: dict[int, ClassGraph] = {}
_LOCK = threading.Lock()


def class_graph(n: int) -> ClassGraph:
    with _LOCK:
        g = _GRAPHS.get(n)
        if g is None:
            g = _GRAPHS[n] = ClassGraph(n)
    return g


def class_distance(a: RotationClass, b: RotationClass) -> int:
    if a.n != b.n:
        raise ValueError(f"size mismatch: {a.n} vs {b.n}")
    return class_graph(a.n).distance(a, b)


def class_code_min_distance(class_code: Iterable[RotationClass]) -> int | None:
    cs = sorted(set(class_code))
    if len(cs) < 2:
        return None
    return min(class_distance(a, b) for a, b in combinations(cs, 2))


@dataclass
class LiftReport:
    code: CodeBook
    target_distance: int
    class_min_distance: int | None
    measured_min_distance: int | None

    @property
    def holds(self) -> bool:
        return self.measured_min_distance is None or self.measured_min_distance >= self.target_distance

    def to_dict(self) -> dict:
        return {
            "n": self.code.n,
            "size": len(self.code),
            "target_distance": self.target_distance,
            "class_min_distance": self.class_min_distance,
            "measured_min_cyclic_distance": self.measured_min_distance,
            "holds": self.holds,
        }


def lift_class_code(class_code: Iterable[RotationClass], d: int) -> LiftReport:
    """All rotations of all representatives, as a cyclic-Kendall code of size n|C|.

    The minimum cyclic distance of the result is measured, not assumed.
    """
    cs = sorted(set(class_code))
    if not cs:
        raise ValueError("empty class code")
    cmin = class_code_min_distance(cs)
    if cmin is not None and cmin < d:
        raise ValueError(f"class code has minimum class distance {cmin} < {d}")
    words = [w for c in cs for w in c.rotations()]
    code = CodeBook.of(words, Metric.CYCLIC, claimed_min_distance=d)
    measured = min_distance(code) if len(code) >= 2 else None
    return LiftReport(code, d, cmin, measured)


def project_class_code(class_code: Iterable[RotationClass]) -> tuple[CodeBook, int | None]:
    """Experimental map to S_{n-1}: rotate each class so symbol n is last, then drop it.

    Returns the projected code and its measured minimum cyclic distance.
    """
    cs = sorted(set(class_code))
    n = cs[0].n
    words = []
    for c in cs:
        r = c.representative
        last = rotate(r, r.index(n) + 1)
        words.append(last[:-1])
    code = CodeBook.of(words, Metric.CYCLIC)
    return code, (min_distance(code) if len(code) >= 2 else None)


def classes_summary(n: int, graph_stats: bool = False) -> dict:
    classes = all_classes(n)
    out = {
        "n": n,
        "classes": len(classes),
        "expected": factorial(n - 1),
        "class_size": n,
        "representatives": [format_perm(c.representative) for c in classes] if n <= 5 else None,
    }
    if graph_stats:
        out["graph"] = class_graph(n).stats()
    return out
