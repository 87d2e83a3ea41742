"""Permutation codes: verification, explicit constructions, and exact searches."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from itertools import combinations
from math import factorial
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import certificate as cert
from .clique import max_clique
from .exact_cover import SearchTimeout, exact_cover
from .metric import (
    CapacityError,
    Metric,
    ball,
    ball_size,
    diameter_of_space,
    distance_function,
    distance_table,
    perm_array,
    rank_array,
)
from .perm import (
    Perm,
    all_perms,
    check_perm,
    format_perm,
    identity,
    inverse,
    parse_perm,
    reverse,
    rotate,
    unrank,
)

#: Largest n for which whole-space enumeration (verification, search) runs.
MAX_ENUM_N = 9


@dataclass(frozen=True)
class CodeBook:
    n: int
    metric: Metric
    words: frozenset
    claimed_min_distance: int | None = None
    verified: bool = False

    def __post_init__(self):
        words = frozenset(check_perm(w) for w in self.words)
        if any(len(w) != self.n for w in words):
            raise ValueError(f"all codewords must have length {self.n}")
        object.__setattr__(self, "words", words)
        object.__setattr__(self, "metric", Metric.parse(self.metric))

    @classmethod
    def of(cls, words: Iterable[Sequence[int]], metric="kendall", claimed_min_distance=None) -> "CodeBook":
        ws = [check_perm(w) for w in words]
        if not ws:
            raise ValueError("a code needs at least one word")
        if len(set(ws)) != len(ws):
            raise ValueError("duplicate codewords")
        return cls(len(ws[0]), Metric.parse(metric), frozenset(ws), claimed_min_distance)

    def __len__(self) -> int:
        return len(self.words)

    def sorted_words(self) -> list[Perm]:
        return sorted(self.words)

    def verify(self) -> "CodeBook":
        """Confirm the claimed minimum distance; returns a copy marked verified."""
        if self.claimed_min_distance is not None and len(self.words) >= 2:
            actual = min_distance(self)
            if actual < self.claimed_min_distance:
                raise ValueError(
                    f"claimed minimum distance {self.claimed_min_distance} but found {actual}"
                )
        return replace(self, verified=True)


def min_distance(code: CodeBook) -> int:
    if len(code.words) < 2:
        raise ValueError("minimum distance needs at least two codewords")
    dist = distance_function(code.n, code.metric)
    return min(dist(a, b) for a, b in combinations(code.sorted_words(), 2))


def distance_distribution(code: CodeBook) -> dict[int, int]:
    dist = distance_function(code.n, code.metric)
    out: dict[int, int] = {}
    for a, b in combinations(code.sorted_words(), 2):
        d = dist(a, b)
        out[d] = out.get(d, 0) + 1
    return dict(sorted(out.items()))


def _check_enum(n: int) -> None:
    if n > MAX_ENUM_N:
        raise CapacityError(f"n={n} exceeds the enumeration budget n<={MAX_ENUM_N}")


def _ball_offsets(n: int, radius: int, metric: Metric) -> np.ndarray:
    """Radius ball around the identity as an ``(m, n)`` array."""
    members = sorted(ball(identity(n), radius, metric))
    return np.array(members, dtype=np.uint8)


def translated_ball_ranks(offsets: np.ndarray, center: Perm) -> np.ndarray:
    """Ranks of ``compose(t, center)`` for every row ``t`` of ``offsets``."""
    c = np.array(center, dtype=np.uint8)
    return rank_array(c[offsets.astype(np.int64) - 1])


@dataclass
class PerfectionReport:
    verdict: str
    radius: int
    ball_size: int
    code_size: int
    space_size: int
    defect_count: int = 0
    uncovered: int = 0
    overcovered: int = 0
    defects: list[tuple[Perm, int]] = field(default_factory=list)

    @property
    def perfect(self) -> bool:
        return self.verdict == "perfect"

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "radius": self.radius,
            "ball_size": self.ball_size,
            "code_size": self.code_size,
            "space_size": self.space_size,
            "defect_count": self.defect_count,
            "uncovered": self.uncovered,
            "overcovered": self.overcovered,
            "defects": [[format_perm(p), c] for p, c in self.defects],
        }


def coverage_counts(code: CodeBook, radius: int) -> np.ndarray:
    """For each permutation (by rank), the number of codewords within ``radius``."""
    _check_enum(code.n)
    offsets = _ball_offsets(code.n, radius, code.metric)
    counts = np.zeros(factorial(code.n), dtype=np.int64)
    for w in code.sorted_words():
        counts[translated_ball_ranks(offsets, w)] += 1
    return counts


def verify_perfect(code: CodeBook, radius: int, max_defects: int = 20) -> PerfectionReport:
    """Check that the radius-``radius`` balls around the codewords partition S_n."""
    if not code.words:
        raise ValueError("empty code")
    counts = coverage_counts(code, radius)
    bad = np.flatnonzero(counts != 1)
    size = ball_size(code.n, radius, code.metric)
    ok = bad.size == 0 and len(code) * size == counts.size
    report = PerfectionReport(
        verdict="perfect" if ok else "not_perfect",
        radius=radius,
        ball_size=size,
        code_size=len(code),
        space_size=int(counts.size),
        defect_count=int(bad.size),
        uncovered=int((counts == 0).sum()),
        overcovered=int((counts > 1).sum()),
        defects=[(unrank(code.n, int(i)), int(counts[i])) for i in bad[:max_defects]],
    )
    if ok and len(code) >= 2:
        # a partition by radius-R balls forces minimum distance >= 2R+1
        assert min_distance(code) >= 2 * radius + 1
    return report


# ---------------------------------------------------------------------------
# explicit codes

_S5_LISTING = [
    [0, 1, 2, 3, 4], [0, 2, 4, 1, 3], [0, 3, 1, 4, 2], [0, 4, 3, 2, 1],
    [1, 2, 3, 4, 0], [2, 4, 1, 3, 0], [3, 1, 4, 2, 0], [4, 3, 2, 1, 0],
    [2, 3, 4, 0, 1], [4, 1, 3, 0, 2], [1, 4, 2, 0, 3], [3, 2, 1, 0, 4],
    [3, 4, 0, 1, 2], [1, 3, 0, 2, 4], [4, 2, 0, 3, 1], [2, 1, 0, 4, 3],
    [4, 0, 1, 2, 3], [3, 0, 2, 4, 1], [2, 0, 3, 1, 4], [1, 0, 4, 3, 2],
]


def paper_s5_listing() -> list[Perm]:
    """The 20 published codewords in listing order (rows of four), 1-based."""
    return [tuple(x + 1 for x in w) for w in _S5_LISTING]


def paper_s5_cyclic_code() -> CodeBook:
    """Perfect single-error-correcting code in S_5 under the cyclic Kendall metric."""
    return CodeBook.of(paper_s5_listing(), Metric.CYCLIC, claimed_min_distance=3)


def is_prime(n: int) -> bool:
    return n >= 2 and all(n % k for k in range(2, int(n**0.5) + 1))


def cyclic_prime_code(n: int) -> CodeBook:
    """All rotations of ``[0, a, 2a, ..., (n-1)a] mod n`` for ``a = 1..n-1``, 1-based.

    The minimum cyclic distance is not assumed; measure it with :func:`min_distance`.
    """
    if not is_prime(n) or n < 5:
        raise ValueError(f"cyclic prime construction needs a prime n >= 5, got {n}")
    words = []
    for a in range(1, n):
        base = tuple((k * a) % n + 1 for k in range(n))
        words.extend(rotate(base, s) for s in range(n))
    return CodeBook.of(words, Metric.CYCLIC)


def reverse_pair_code(p: Perm, metric="kendall") -> CodeBook:
    return CodeBook.of([p, reverse(p)], metric)


# ---------------------------------------------------------------------------
# searches


def exact_cover_perfect_search(
    n: int, radius: int, metric="kendall", time_budget: float | None = 60.0
) -> cert.Certificate:
    """Exact-cover search for a perfect code of the given radius in S_n.

    Right-invariance makes the automorphism group transitive, so the identity
    is forced into the code without loss of generality.
    """
    metric = Metric.parse(metric)
    _check_enum(n)
    total = factorial(n)
    size = ball_size(n, radius, metric)
    params = {"radius": radius, "metric": metric.value}
    if total % size:
        return cert.Certificate(
            n,
            cert.NONEXISTENCE,
            "divisibility",
            params=params,
            evidence={"space_size": total, "ball_size": size},
        )
    offsets = _ball_offsets(n, radius, metric)
    perms = perm_array(n)
    rows = {}
    for r in range(total):
        rows[r] = [int(x) for x in translated_ball_ranks(offsets, tuple(int(v) for v in perms[r]))]
    try:
        found, stats = exact_cover(rows, columns=range(total), forced=[0], time_budget=time_budget)
    except SearchTimeout as exc:
        return cert.Certificate(
            n,
            cert.INCONCLUSIVE,
            "exact_cover",
            params=params,
            evidence={"reason": f"time budget of {time_budget}s exhausted", "forced_identity": True},
            stats=exc.stats.as_dict(),
        )
    stats_d = stats.as_dict()
    if found is None:
        return cert.Certificate(
            n,
            cert.NONEXISTENCE,
            "exact_cover",
            params=params,
            evidence={"forced_identity": True, "search_exhausted": True, "ball_size": size},
            stats=stats_d,
        )
    words = sorted(unrank(n, r) for r in found)
    return cert.Certificate(
        n,
        cert.EXISTENCE,
        "exact_cover",
        params=params,
        evidence={"code": [format_perm(w) for w in words], "code_size": len(words), "ball_size": size},
        stats=stats_d,
    )


def pairwise_distances(n: int, metric) -> np.ndarray:
    """``(n!, n!)`` matrix of distances between all permutations, by rank."""
    _check_enum(n)
    if n > 7:
        raise CapacityError("pairwise distance matrix is limited to n <= 7")
    table = distance_table(n, metric)
    perms = perm_array(n)
    total = perms.shape[0]
    out = np.empty((total, total), dtype=np.uint8)
    for a in range(total):
        inv = np.array(inverse(tuple(int(v) for v in perms[a])), dtype=np.uint8)
        # d(a, b) = d(e, b o a^-1); b o a^-1 relabels the values of b by a^-1
        out[a] = table.dist[rank_array(inv[perms.astype(np.int64) - 1])]
    return out


def threshold_graph(dmat: np.ndarray, keep) -> list[int]:
    """Bitset adjacency of the graph whose edges satisfy ``keep(distance)``."""
    mask = keep(dmat)
    np.fill_diagonal(mask, False)
    adj = []
    for row in mask:
        bits = 0
        for j in np.flatnonzero(row):
            bits |= 1 << int(j)
        adj.append(bits)
    return adj


@dataclass
class MaxCodeResult:
    code: CodeBook
    method: str
    exact: bool
    exhausted: bool
    nodes: int = 0

    def to_dict(self) -> dict:
        return {
            "n": self.code.n,
            "metric": self.code.metric.value,
            "min_distance_target": self.code.claimed_min_distance,
            "method": self.method,
            "size": len(self.code),
            "exact": self.exact,
            "exhausted": self.exhausted,
            "nodes": self.nodes,
            "code": [format_perm(w) for w in self.code.sorted_words()],
        }


def max_code_search(
    n: int, d: int, metric="kendall", method: str = "exact_clique", time_budget: float | None = 60.0
) -> MaxCodeResult:
    """Largest code with minimum distance >= ``d`` (exact) or a greedy maximal one."""
    metric = Metric.parse(metric)
    if d > diameter_of_space(n, metric):
        code = CodeBook.of([identity(n)], metric, claimed_min_distance=d)
        return MaxCodeResult(code, method, exact=True, exhausted=True)
    if method == "greedy_lex":
        dist = distance_function(n, metric)
        chosen: list[Perm] = []
        for p in all_perms(n):
            if all(dist(p, q) >= d for q in chosen):
                chosen.append(p)
        code = CodeBook.of(chosen, metric, claimed_min_distance=d).verify()
        return MaxCodeResult(code, method, exact=False, exhausted=True)
    if method != "exact_clique":
        raise ValueError(f"unknown method {method!r}")
    if n > 6:
        raise CapacityError("exact clique search is limited to n <= 6")
    dmat = pairwise_distances(n, metric)
    # the identity can be assumed to be a codeword (transitive isometry group)
    far = np.flatnonzero(dmat[0] >= d)
    sub = dmat[np.ix_(far, far)]
    adj = threshold_graph(sub, lambda m: m >= d)
    res = max_clique(adj, time_budget=time_budget)
    words = [identity(n)] + [unrank(n, int(far[i])) for i in res.best]
    code = CodeBook.of(words, metric, claimed_min_distance=d).verify()
    return MaxCodeResult(code, method, exact=res.exhausted, exhausted=res.exhausted, nodes=res.nodes)


# ---------------------------------------------------------------------------
# code files


def read_code_file(path: "str | Path", zero_based: bool = False) -> CodeBook:
    """Read ``n=<n> metric=<kendall|cyclic>`` followed by one permutation per line."""
    lines = [ln.split("#", 1)[0].strip() for ln in Path(path).read_text().splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError(f"{path}: empty code file")
    header = dict(tok.split("=", 1) for tok in lines[0].split() if "=" in tok)
    if "n" not in header:
        raise ValueError(f"{path}: header must look like 'n=<n> metric=<kendall|cyclic>'")
    n = int(header["n"])
    metric = Metric.parse(header.get("metric", "kendall"))
    words = [parse_perm(ln, zero_based=zero_based) for ln in lines[1:]]
    bad = [w for w in words if len(w) != n]
    if bad:
        raise ValueError(f"{path}: codeword {list(bad[0])} does not have length {n}")
    return CodeBook.of(words, metric)


def write_code_file(code: CodeBook, path: "str | Path") -> None:
    body = "\n".join(format_perm(w) for w in code.sorted_words())
    Path(path).write_text(f"n={code.n} metric={code.metric.value}\n{body}\n")
