"""Anticodes, code-anticode bounds, and diameter-perfect codes in S_n."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb, factorial
from typing import Iterable

import numpy as np

from .clique import max_clique
from .codes import CodeBook, min_distance, pairwise_distances, threshold_graph
from .metric import CapacityError, Metric, ball, distance_function, kendall_ball_size
from .perm import Perm, all_perms, check_perm, compose, format_perm, identity, transposition, unrank


class PreconditionError(ValueError):
    """Inputs do not satisfy an operation's precondition (distinct from a False verdict)."""


def diameter(members: Iterable[Perm], metric="kendall") -> int:
    ms = sorted(set(members))
    if not ms:
        raise ValueError("diameter of an empty set is undefined")
    if len(ms) == 1:
        return 0
    dist = distance_function(len(ms[0]), metric)
    return max(dist(a, b) for a, b in combinations(ms, 2))


@dataclass(frozen=True)
class Anticode:
    n: int
    metric: Metric
    members: frozenset
    diameter: int
    description: str = ""

    @classmethod
    def of(cls, members: Iterable[Perm], metric="kendall", description: str = "") -> "Anticode":
        ms = frozenset(check_perm(m) for m in members)
        if not ms:
            raise ValueError("an anticode needs at least one member")
        metric = Metric.parse(metric)
        n = len(next(iter(ms)))
        return cls(n, metric, ms, diameter(ms, metric), description)

    def __len__(self) -> int:
        return len(self.members)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "metric": self.metric.value,
            "size": len(self),
            "diameter": self.diameter,
            "description": self.description,
            "members": [format_perm(p) for p in sorted(self.members)],
        }


def right_translate(members: Iterable[Perm], p: Perm) -> set[Perm]:
    """``{s o p : s in members}``."""
    return {compose(s, p) for s in members}


def union_anticode(n: int, radius: int) -> set[Perm]:
    """``S(e, R)`` together with its right translate by the transposition (1 2)."""
    b = ball(identity(n), radius, Metric.KENDALL)
    return b | right_translate(b, transposition(n, 1, 2))


def construct_diameter3_anticode(n: int) -> Anticode:
    """``S(e,1) U S(e,1) o (1,2)``: size 2(n-1), diameter 3."""
    if n < 4:
        raise ValueError("the diameter-3 anticode construction needs n >= 4")
    a = Anticode.of(union_anticode(n, 1), Metric.KENDALL, "S(e,1) u S(e,1)o(1,2)")
    assert len(a) == 2 * (n - 1) and a.diameter == 3, (len(a), a.diameter)
    return a


def half_space_anticode(n: int) -> Anticode:
    """Permutations in which symbol 1 precedes symbol 2: one from each reverse pair."""
    if n < 2:
        raise ValueError("n must be at least 2")
    members = [p for p in all_perms(n) if p.index(1) < p.index(2)]
    if n <= 7:
        return Anticode.of(members, Metric.KENDALL, "symbol 1 precedes symbol 2")
    # pair (1,2) is concordant across all members, so the diameter is at most C(n,2)-1,
    # attained by p and reverse(p) with 1 and 2 swapped back
    return Anticode(n, Metric.KENDALL, frozenset(members), comb(n, 2) - 1, "symbol 1 precedes symbol 2")


def is_ball(members: Iterable[Perm], radius: int, metric="kendall") -> Perm | None:
    """A center ``c`` with ``members == ball(c, radius)``, or None."""
    ms = set(members)
    for c in sorted(ms):
        if ball(c, radius, metric) == ms:
            return c
    return None


@dataclass
class AnticodeSearchResult:
    n: int
    diameter: int
    metric: Metric
    max_size: int
    witnesses: list[Anticode]
    exhausted: bool
    num_optima: int | None = None
    all_optima_are_balls: bool | None = None
    non_ball_optima: list[Anticode] = field(default_factory=list)
    nodes: int = 0

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "diameter": self.diameter,
            "metric": self.metric.value,
            "max_size": self.max_size,
            "exhausted": self.exhausted,
            "lower_bound_only": not self.exhausted,
            "num_optima": self.num_optima,
            "all_optima_are_balls": (
                "not checked" if self.all_optima_are_balls is None else self.all_optima_are_balls
            ),
            "witnesses": [w.to_dict() for w in self.witnesses[:5]],
            "non_ball_optima": [w.to_dict() for w in self.non_ball_optima[:5]],
            "nodes": self.nodes,
        }


def optimal_anticode_search(
    n: int,
    max_dist: int,
    metric="kendall",
    enumerate_optima: bool = False,
    time_budget: float | None = 120.0,
) -> AnticodeSearchResult:
    """Largest set with all pairwise distances <= ``max_dist``, by exact max clique.

    Vertices are ordered by distance from the identity.  Without enumeration the
    identity is fixed as a member (the isometry group is transitive).  With
    enumeration (n <= 5) every optimum is listed and tested for being a ball of
    radius ``max_dist // 2``.
    """
    metric = Metric.parse(metric)
    if n > 6 or (enumerate_optima and n > 5):
        raise CapacityError("anticode search supports n <= 6, optimum enumeration n <= 5")
    dmat = pairwise_distances(n, metric)
    if enumerate_optima:
        order = np.lexsort((np.arange(dmat.shape[0]), dmat[0]))
    else:
        order = np.flatnonzero(dmat[0] <= max_dist)
        order = order[np.lexsort((order, dmat[0][order]))]
    sub = dmat[np.ix_(order, order)]
    adj = threshold_graph(sub, lambda m: m <= max_dist)
    res = max_clique(adj, enumerate_all=enumerate_optima, time_budget=time_budget)

    def to_anticode(vs) -> Anticode:
        return Anticode.of([unrank(n, int(order[v])) for v in vs], metric)

    if enumerate_optima:
        optima = [to_anticode(vs) for vs in res.optima]
        radius = max_dist // 2
        non_balls = [a for a in optima if is_ball(a.members, radius, metric) is None]
        return AnticodeSearchResult(
            n, max_dist, metric, res.size, optima, res.exhausted,
            num_optima=len(optima),
            all_optima_are_balls=(not non_balls) if res.exhausted else None,
            non_ball_optima=non_balls,
            nodes=res.nodes,
        )
    witness = to_anticode(res.best)
    return AnticodeSearchResult(n, max_dist, metric, len(witness), [witness], res.exhausted, nodes=res.nodes)


@dataclass
class BoundReport:
    n: int
    d: int
    bound_value: int
    anticode_size: int
    anticode_used: str
    trivial: bool = False
    candidates: dict[str, int] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "bound": self.bound_value,
            "anticode_size": self.anticode_size,
            "anticode_used": self.anticode_used,
            "trivial": self.trivial,
            "candidates": self.candidates,
        }


def code_anticode_bound(n: int, d: int, use_search: bool = False) -> BoundReport:
    """``|C| <= floor(n! / |A|)`` for codes with minimum Kendall distance ``d``.

    Uses the largest anticode of diameter at most ``d-1`` among: the ball of
    radius ``(d-1)//2`` (diameter by the triangle inequality), the union
    ``S(e,R) u S(e,R)o(1,2)`` when its diameter is verified to be ``<= d-1``,
    the half-space anticode when ``d-1 >= C(n,2)-1``, and optionally an exact
    search result for small n.
    """
    if d < 1:
        raise ValueError("d must be positive")
    total = factorial(n)
    top = comb(n, 2)
    if d > top:
        return BoundReport(n, d, 1, total, "whole space (d exceeds the diameter)", candidates={"space": total})
    cands: dict[str, int] = {}
    D = d - 1
    if D == 0:
        cands["singleton"] = 1
    else:
        R = D // 2
        cands[f"ball radius {R}"] = kendall_ball_size(n, R)
        if D % 2 == 1 and n >= 2:
            u = union_anticode(n, R)
            if len(u) <= 5000 and diameter(u) <= D:
                cands[f"S(e,{R}) u S(e,{R})o(1,2)"] = len(u)
        if D >= top - 1:
            cands["half space"] = total // 2
        if D >= top:
            cands["whole space"] = total
        if use_search and n <= 5:
            res = optimal_anticode_search(n, D)
            if res.exhausted:
                cands["exact search"] = res.max_size
    name, size = max(cands.items(), key=lambda kv: (kv[1], kv[0]))
    return BoundReport(n, d, total // size, size, name, trivial=size == 1, candidates=cands)


def verify_diameter_perfect(code: CodeBook, anticode: Anticode) -> bool:
    """True iff ``|C| * |A| == n!``; raises :class:`PreconditionError` on mismatched inputs."""
    if code.n != anticode.n:
        raise PreconditionError(f"n mismatch: code {code.n}, anticode {anticode.n}")
    if code.metric is not anticode.metric:
        raise PreconditionError("code and anticode use different metrics")
    if len(code) >= 2:
        md = min_distance(code)
        if md != anticode.diameter + 1:
            raise PreconditionError(
                f"code minimum distance {md} != anticode diameter {anticode.diameter} + 1"
            )
    return len(code) * len(anticode) == factorial(code.n)


@dataclass
class RegularityProbe:
    n: int
    distance_sigma_pi: int
    distance_sigma_rho: int
    midpoints_pi: list[Perm]
    midpoints_rho: list[Perm]

    @property
    def distance_regular(self) -> bool:
        return len(self.midpoints_pi) == len(self.midpoints_rho)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "d(sigma,pi)": self.distance_sigma_pi,
            "d(sigma,rho)": self.distance_sigma_rho,
            "midpoints(sigma,pi)": len(self.midpoints_pi),
            "midpoints(sigma,rho)": len(self.midpoints_rho),
            "verdict": "distance-regular (on this probe)" if self.distance_regular else "not distance-regular",
        }


def probe_triple(n: int) -> tuple[Perm, Perm, Perm]:
    if n < 4:
        raise ValueError("the probe needs n >= 4")
    tail = tuple(range(5, n + 1))
    return identity(n), (3, 1, 2, 4) + tail, (2, 1, 4, 3) + tail


def distance_regularity_probe(n: int) -> RegularityProbe:
    """Count common Kendall neighbours of e with [3,1,2,4,...] and with [2,1,4,3,...]."""
    from .metric import kendall_distance, neighbours

    s, p, r = probe_triple(n)
    nb = neighbours(s, Metric.KENDALL)
    return RegularityProbe(
        n,
        kendall_distance(s, p),
        kendall_distance(s, r),
        sorted(a for a in nb if kendall_distance(a, p) == 1),
        sorted(a for a in nb if kendall_distance(a, r) == 1),
    )
