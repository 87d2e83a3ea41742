"""Covering linear systems for perfect single-error-correcting Kendall codes.

Partition S_n into classes and let ``x_A`` be the number of codewords of a
putative perfect code in class ``A``.  If every codeword in class ``A'`` has
exactly ``M[B][A']`` radius-1 neighbours (itself included) in class ``B``,
perfection forces ``M x = |B|`` for every class ``B``.  A system whose only
solutions are non-integral or negative rules the code out.

The pattern classes group permutations by the positions holding the values
``1..r``.  A transposition of adjacent positions moves that position tuple
independently of the other values, so the coefficients depend only on the
class.  ``r = 1`` gives the classic tridiagonal system.
"""

from __future__ import annotations

import logging
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product
from math import factorial, perm as n_perm

from . import certificate as cert
from .codes import CodeBook
from .metric import CapacityError, Metric, ball
from .perm import Perm, all_perms
from .rational import INCONSISTENT, UNIQUE, Solution, matvec, solve

log = logging.getLogger(__name__)

#: Largest number of classes a pattern system may have.
MAX_CLASSES = 2000
#: Largest number of integer points scanned over a solution kernel.
MAX_KERNEL_POINTS = 1_000_000


class InvarianceError(RuntimeError):
    """A covering coefficient depends on the class representative."""


@dataclass
class CoveringSystem:
    n: int
    r: int
    classes: list[tuple[int, ...]]
    matrix: list[list[int]]
    rhs: list[int]

    @property
    def class_size(self) -> int:
        return factorial(self.n - self.r)

    @property
    def size(self) -> int:
        return len(self.classes)

    def hash(self) -> str:
        return cert.matrix_hash(self.matrix, self.rhs)

    def column_sums(self) -> list[int]:
        return [sum(col) for col in zip(*self.matrix)]

    def row_sums(self) -> list[int]:
        return [sum(row) for row in self.matrix]


def build_basic_system(n: int) -> CoveringSystem:
    """The tridiagonal system for classes "symbol 1 sits at position i".

    Corner diagonal entries are ``n-1``, interior ones ``n-2``, and the off
    diagonals are 1; every equation has right-hand side ``(n-1)!``.
    """
    if n < 3:
        raise ValueError("the basic covering system needs n >= 3")
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = n - 1 if i in (0, n - 1) else n - 2
        if i > 0:
            a[i][i - 1] = 1
        if i < n - 1:
            a[i][i + 1] = 1
    return CoveringSystem(n, 1, [(i + 1,) for i in range(n)], a, [factorial(n - 1)] * n)


def pattern_class(p: Perm, r: int) -> tuple[int, ...]:
    """1-based positions of the values ``1..r`` in ``p``."""
    where = {v: i + 1 for i, v in enumerate(p)}
    return tuple(where[v] for v in range(1, r + 1))


def _move(cls: tuple[int, ...], i: int) -> tuple[int, ...]:
    """Image of a position tuple under the swap of positions ``i`` and ``i+1``."""
    return tuple(i + 1 if p == i else i if p == i + 1 else p for p in cls)


def _representative(n: int, cls: tuple[int, ...], rng: random.Random) -> Perm:
    rest = list(range(len(cls) + 1, n + 1))
    rng.shuffle(rest)
    out = [0] * n
    for v, pos in enumerate(cls, start=1):
        out[pos - 1] = v
    it = iter(rest)
    return tuple(x if x else next(it) for x in out)


def build_pattern_system(
    n: int, r: int, verify: bool = True, samples: int = 20, seed: int = 0, threads: int = 1
) -> CoveringSystem:
    """Covering system over the classes "values 1..r sit at positions (p1..pr)".

    Coefficients come from the action of the identity and the ``n-1`` adjacent
    transpositions on position tuples.  With ``verify`` they are checked against
    direct ball counting: over all of S_n when ``n <= 5``, otherwise on
    ``samples`` seeded random representatives per class.
    """
    if not 1 <= r <= n - 1:
        raise ValueError(f"need 1 <= r <= n-1, got r={r}, n={n}")
    count = n_perm(n, r)
    if count > MAX_CLASSES:
        raise CapacityError(f"pattern system n={n}, r={r} has {count} classes (limit {MAX_CLASSES})")
    classes = list(permutations(range(1, n + 1), r))
    index = {c: k for k, c in enumerate(classes)}
    a = [[0] * count for _ in range(count)]
    for col, c in enumerate(classes):
        a[col][col] += 1
        for i in range(1, n):
            a[index[_move(c, i)]][col] += 1
    system = CoveringSystem(n, r, classes, a, [factorial(n - r)] * count)
    if verify:
        verify_pattern_invariance(system, samples=samples, seed=seed, threads=threads)
    return system


def verify_pattern_invariance(
    system: CoveringSystem, samples: int = 20, seed: int = 0, threads: int = 1
) -> int:
    """Recount each column from actual radius-1 balls; returns representatives checked.

    Exhaustive over S_n for ``n <= 5``, else ``samples`` seeded representatives
    per class.  Raises :class:`InvarianceError` with a counterexample on any
    mismatch.  ``threads > 1`` spreads the classes over worker processes.
    """
    n, r = system.n, system.r
    if n <= 5:
        return _check_reps(system, [(None, p) for p in all_perms(n)])
    rng = random.Random(seed)
    reps = [
        (col, _representative(n, c, rng))
        for col, c in enumerate(system.classes)
        for _ in range(samples)
    ]
    if threads <= 1:
        return _check_reps(system, reps)
    from concurrent.futures import ProcessPoolExecutor

    chunks = [reps[k::threads] for k in range(threads)]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return sum(pool.map(_check_reps, [system] * threads, chunks))


def _check_reps(system: CoveringSystem, reps) -> int:
    index = {c: k for k, c in enumerate(system.classes)}
    r = system.r
    checked = 0
    for col, p in reps:
        if col is None:
            col = index[pattern_class(p, r)]
        hits = Counter(index[pattern_class(q, r)] for q in ball(p, 1, Metric.KENDALL))
        for row in set(hits) | {k for k in range(system.size) if system.matrix[k][col]}:
            if hits.get(row, 0) != system.matrix[row][col]:
                raise InvarianceError(
                    f"representative {p} of class {system.classes[col]}: "
                    f"{hits.get(row, 0)} neighbours in class {system.classes[row]}, "
                    f"matrix says {system.matrix[row][col]}"
                )
        checked += 1
    return checked


def gerschgorin_nonsingular(matrix) -> bool:
    """Strict diagonal dominance by rows; True proves nonsingularity, False proves nothing."""
    return all(
        abs(row[i]) > sum(abs(v) for j, v in enumerate(row) if j != i)
        for i, row in enumerate(matrix)
    )


def solve_exact(system: CoveringSystem) -> Solution:
    sol = solve(system.matrix, system.rhs)
    if sol.particular is not None:
        assert matvec(system.matrix, sol.particular) == [Fraction(b) for b in system.rhs]
    return sol


def _cert(system: CoveringSystem, verdict: str, method: str, sol: Solution | None, **kw) -> cert.Certificate:
    return cert.Certificate(
        system.n,
        verdict,
        method,
        params={"r": system.r},
        matrix_hash=system.hash(),
        solution=cert.fraction_strings(sol.particular) if sol and sol.particular else None,
        kernel_dim=sol.kernel_dim if sol and sol.status != INCONSISTENT else None,
        **kw,
    )


def basic_nonexistence_check(n: int) -> cert.Certificate:
    """Rule out a perfect 1-code in S_n when the basic system forces x_i = (n-1)!/n."""
    if n < 4:
        raise ValueError("basic nonexistence check needs n >= 4")
    system = build_basic_system(n)
    dominant = gerschgorin_nonsingular(system.matrix)
    sol = solve_exact(system)
    value = Fraction(factorial(n - 1), n)
    evidence = {
        "gerschgorin": dominant,
        "rank": sol.rank,
        "uniform_value": str(value),
    }
    stats = {"size": n}
    if sol.status == UNIQUE:
        assert all(x == value for x in sol.particular)
        if value.denominator != 1:
            return _cert(system, cert.NONEXISTENCE, "unique_rational_solution_non_integral", sol,
                         evidence=evidence, stats=stats)
        evidence["reason"] = "unique solution is integral"
    else:
        evidence["reason"] = f"system is {sol.status}"
    return _cert(system, cert.INCONCLUSIVE, "unique_rational_solution_non_integral", sol,
                 evidence=evidence, stats=stats)


def _integral_points(sol: Solution, upper: int, budget: int):
    """Integer points of the solution set inside the box [0, upper]^m.

    Free variables equal their kernel coordinates, so they range over
    0..upper.  Returns ``(points_found, first_point, scanned)`` or ``None`` if
    the scan would exceed ``budget``.
    """
    k = sol.kernel_dim
    if (upper + 1) ** k > budget:
        return None
    found, first = 0, None
    for t in product(range(upper + 1), repeat=k):
        x = list(sol.particular)
        for tv, vec in zip(t, sol.kernel):
            if tv:
                x = [a + tv * b for a, b in zip(x, vec)]
        if all(v.denominator == 1 and 0 <= v <= upper for v in x):
            found += 1
            if first is None:
                first = x
    return found, first, (upper + 1) ** k


def pattern_nonexistence_check(
    n: int, r: int, max_kernel_dim: int = 2, verify: bool = True, seed: int = 0, threads: int = 1
) -> cert.Certificate:
    """Decide whether the pattern system admits a nonnegative integral solution.

    Nonexistence is certified by an inconsistent system, a unique solution that
    is non-integral or negative, a coordinate pinned by the solution space to
    such a value, or an exhausted integer scan over a kernel of dimension at
    most ``max_kernel_dim``.  Anything else is reported as inconclusive.
    """
    system = build_pattern_system(n, r, verify=verify, seed=seed, threads=threads)
    sol = solve_exact(system)
    upper = system.class_size
    stats = {"classes": system.size, "rank": sol.rank}

    def done(verdict: str, **evidence) -> cert.Certificate:
        c = _cert(system, verdict, "pattern_system", sol, evidence=evidence, stats=stats)
        c.params["seed"] = seed
        return c

    if sol.status == INCONSISTENT:
        return done(cert.NONEXISTENCE, reason="inconsistent system")
    x = sol.particular
    pinned = [j for j in range(system.size) if all(vec[j] == 0 for vec in sol.kernel)]
    for j in pinned:
        v = x[j]
        if v.denominator != 1 or v < 0 or v > upper:
            return done(
                cert.NONEXISTENCE,
                reason="coordinate forced to a non-integral or out-of-range value",
                coordinate=j,
                pattern=list(system.classes[j]),
                value=str(v),
            )
    if sol.status == UNIQUE:
        return done(cert.INCONCLUSIVE, reason="unique solution is nonnegative and integral")
    if sol.kernel_dim > max_kernel_dim:
        return done(
            cert.INCONCLUSIVE,
            reason=f"kernel dimension {sol.kernel_dim} exceeds enumeration limit {max_kernel_dim}",
            pinned_coordinates=len(pinned),
        )
    scan = _integral_points(sol, upper, MAX_KERNEL_POINTS)
    if scan is None:
        return done(cert.INCONCLUSIVE, reason="integer scan over the kernel exceeds budget")
    found, first, scanned = scan
    stats["kernel_points_scanned"] = scanned
    if not found:
        return done(cert.NONEXISTENCE, reason="no nonnegative integral point in the solution set",
                    box_upper=upper)
    return done(
        cert.INCONCLUSIVE,
        reason="nonnegative integral solutions exist",
        integral_points=found,
        example=cert.fraction_strings(first),
    )


def nonexistence_check(n: int, r: int = 1, escalate: bool = False, time_budget: float | None = 60.0,
                       verify: bool = True, seed: int = 0, threads: int = 1) -> cert.Certificate:
    """Try divisibility, the basic system (r=1) or a pattern system, then optionally exact cover."""
    from .codes import exact_cover_perfect_search
    from .metric import kendall_ball_size

    if factorial(n) % kendall_ball_size(n, 1):
        return cert.Certificate(n, cert.NONEXISTENCE, "divisibility", params={"radius": 1, "metric": "kendall"},
                                evidence={"space_size": factorial(n), "ball_size": n})
    if r == 1:
        c = basic_nonexistence_check(n)
    else:
        c = pattern_nonexistence_check(n, r, verify=verify, seed=seed, threads=threads)
    if c.verdict == cert.INCONCLUSIVE and escalate:
        log.info("escalating n=%d to exact-cover search", n)
        return exact_cover_perfect_search(n, 1, Metric.KENDALL, time_budget=time_budget)
    return c


# ---------------------------------------------------------------------------
# regularity


@dataclass
class RegularityReport:
    n: int
    r: int
    code_size: int
    uniform: bool
    counts: dict[tuple[tuple[int, ...], tuple[int, ...]], int]
    expected: Fraction
    perfect_code_value: Fraction
    histogram: dict[int, int] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "code_size": self.code_size,
            "uniform": self.uniform,
            "expected_if_uniform": str(self.expected),
            "perfect_code_value": str(self.perfect_code_value),
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
        }


def verify_regularity(code: CodeBook, r: int) -> RegularityReport:
    """Count codewords with prescribed values at each set of ``r`` increasing positions.

    Keys of ``counts`` are ``(positions, values)``.  A perfect single-error
    correcting code must have ``(n-r)!/n`` codewords for every key when
    ``n > 11`` and ``r < n/4``; this verifier accepts any ``r``.
    """
    n = code.n
    if not 1 <= r <= n:
        raise ValueError(f"need 1 <= r <= n, got {r}")
    if not code.words:
        raise ValueError("empty code")
    counts: Counter = Counter()
    for pos in combinations(range(1, n + 1), r):
        for vals in permutations(range(1, n + 1), r):
            counts[(pos, vals)] = 0
    for w in code.words:
        for pos in combinations(range(1, n + 1), r):
            counts[(pos, tuple(w[j - 1] for j in pos))] += 1
    hist = Counter(counts.values())
    return RegularityReport(
        n,
        r,
        len(code),
        uniform=len(hist) == 1,
        counts=dict(counts),
        expected=Fraction(len(code) * factorial(n - r), factorial(n)),
        perfect_code_value=Fraction(factorial(n - r), n),
        histogram=dict(hist),
    )


# ---------------------------------------------------------------------------
# replay


def recheck(certificate: cert.Certificate, time_budget: float | None = None) -> cert.Certificate:
    """Recompute a certificate from its parameters; raises if the result differs."""
    from .codes import exact_cover_perfect_search, verify_perfect
    from .metric import ball_size

    c = certificate
    if c.method == "divisibility":
        metric = c.params.get("metric", "kendall")
        radius = c.params.get("radius", 1)
        size = ball_size(c.n, radius, metric)
        verdict = cert.NONEXISTENCE if factorial(c.n) % size else cert.INCONCLUSIVE
        fresh = cert.Certificate(c.n, verdict, "divisibility", params=c.params,
                                 evidence={"space_size": factorial(c.n), "ball_size": size})
    elif c.method == "unique_rational_solution_non_integral":
        fresh = basic_nonexistence_check(c.n)
    elif c.method == "pattern_system":
        fresh = pattern_nonexistence_check(c.n, c.params["r"], seed=c.params.get("seed", 0))
    elif c.method == "exact_cover":
        metric = c.params.get("metric", "kendall")
        radius = c.params.get("radius", 1)
        if c.verdict == cert.EXISTENCE:
            from .perm import parse_perm

            code = CodeBook.of([parse_perm(w) for w in c.evidence["code"]], metric)
            if not verify_perfect(code, radius).perfect:
                raise ValueError("witness code is not perfect")
            fresh = c
        else:
            fresh = exact_cover_perfect_search(c.n, radius, metric, time_budget=time_budget)
    else:
        raise ValueError(f"unknown method {c.method!r}")
    if fresh.verdict != c.verdict:
        raise ValueError(f"recheck verdict {fresh.verdict} differs from recorded {c.verdict}")
    if c.matrix_hash is not None and fresh.matrix_hash != c.matrix_hash:
        raise ValueError("matrix hash mismatch")
    if c.solution is not None and fresh.solution != c.solution:
        raise ValueError("solution mismatch")
    return fresh
