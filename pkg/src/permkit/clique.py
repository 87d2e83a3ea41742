"""Maximum clique by branch and bound with greedy-coloring bounds.

Graphs are adjacency bitsets: ``adj[v]`` is an int whose bit ``u`` is set when
``u`` and ``v`` are adjacent.  Vertex order is the caller's; ties and branching
follow it, so results are deterministic.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field


class CliqueTimeout(Exception):
    pass


@dataclass
class CliqueResult:
    size: int
    best: list[int]
    optima: list[list[int]] = field(default_factory=list)
    exhausted: bool = True
    nodes: int = 0


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def _color_order(cand: int, adj: list[int]) -> tuple[list[int], list[int]]:
    """Greedy sequential coloring of ``cand``; returns vertices and cumulative color bounds."""
    order, bounds = [], []
    color = 0
    uncolored = cand
    while uncolored:
        color += 1
        avail = uncolored
        while avail:
            v = (avail & -avail).bit_length() - 1
            avail &= ~adj[v] & ~(1 << v)
            uncolored &= ~(1 << v)
            order.append(v)
            bounds.append(color)
    return order, bounds


def max_clique(
    adj: list[int],
    enumerate_all: bool = False,
    lower_bound: int = 0,
    time_budget: float | None = None,
    max_optima: int = 100_000,
) -> CliqueResult:
    """Exact maximum clique.

    With ``enumerate_all`` every maximum clique is collected in ``optima`` (up
    to ``max_optima``).  ``lower_bound`` prunes branches that cannot exceed it
    (the result may then be empty when no larger clique exists).  On timeout
    the best clique found so far is returned with ``exhausted=False``.
    """
    n = len(adj)
    deadline = None if time_budget is None else time.monotonic() + time_budget
    res = CliqueResult(size=lower_bound, best=[])
    stack: list[int] = []

    def expand(cand: int) -> None:
        res.nodes += 1
        if deadline is not None and res.nodes % 1024 == 0 and time.monotonic() > deadline:
            raise CliqueTimeout
        order, bounds = _color_order(cand, adj)
        for idx in range(len(order) - 1, -1, -1):
            bound = len(stack) + bounds[idx]
            if bound < res.size or (bound == res.size and not enumerate_all):
                return
            v = order[idx]
            stack.append(v)
            new = cand & adj[v]
            if new:
                expand(new)
            else:
                k = len(stack)
                if k > res.size:
                    res.size = k
                    res.best = list(stack)
                    res.optima = [sorted(stack)] if enumerate_all else []
                elif enumerate_all and k == res.size and len(res.optima) < max_optima:
                    res.optima.append(sorted(stack))
                    if not res.best:
                        res.best = list(stack)
            stack.pop()
            cand &= ~(1 << v)

    try:
        if n:
            expand((1 << n) - 1)
    except CliqueTimeout:
        res.exhausted = False
    res.best = sorted(res.best)
    return res
