"""Algorithm X for exact cover, in the dict-of-sets formulation.

Columns are the points to be covered, rows the candidate subsets.  Column
choice is fewest-candidates-first.  Each search carries an optional wall-clock
deadline; running out of time raises :class:`SearchTimeout` so callers can
report an inconclusive result instead of a false nonexistence claim.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Sequence


class SearchTimeout(Exception):
    pass


@dataclass
class CoverStats:
    nodes: int = 0
    backtracks: int = 0
    elapsed: float = 0.0
    timed_out: bool = False

    def as_dict(self) -> dict:
        return {"nodes": self.nodes, "backtracks": self.backtracks, "timed_out": self.timed_out}


@dataclass
class _Search:
    cols: dict[Hashable, set]
    rows: Mapping[Hashable, Sequence[Hashable]]
    deadline: float | None
    stats: CoverStats = field(default_factory=CoverStats)

    def select(self, r):
        removed = []
        for j in self.rows[r]:
            for i in self.cols[j]:
                for k in self.rows[i]:
                    if k != j:
                        self.cols[k].remove(i)
            removed.append(self.cols.pop(j))
        return removed

    def deselect(self, r, removed):
        for j in reversed(self.rows[r]):
            self.cols[j] = removed.pop()
            for i in self.cols[j]:
                for k in self.rows[i]:
                    if k != j:
                        self.cols[k].add(i)

    def solve(self, partial: list):
        if not self.cols:
            return list(partial)
        self.stats.nodes += 1
        if self.deadline is not None and self.stats.nodes % 256 == 0 and time.monotonic() > self.deadline:
            raise SearchTimeout
        col = min(self.cols, key=lambda c: len(self.cols[c]))
        # sorted: deterministic branching order independent of set iteration
        for r in sorted(self.cols[col]):
            partial.append(r)
            removed = self.select(r)
            found = self.solve(partial)
            self.deselect(r, removed)
            partial.pop()
            if found is not None:
                return found
            self.stats.backtracks += 1
        return None


def exact_cover(
    rows: Mapping[Hashable, Sequence[Hashable]],
    columns: Iterable[Hashable] | None = None,
    forced: Sequence[Hashable] = (),
    time_budget: float | None = None,
) -> tuple[list | None, CoverStats]:
    """Find one exact cover.

    Returns ``(solution_rows, stats)``; ``solution_rows`` is ``None`` when the
    search space is exhausted.  ``forced`` rows are selected up front and are
    part of any returned solution.  Raises :class:`SearchTimeout` (with the
    stats attached as ``exc.stats``) if ``time_budget`` seconds elapse.
    """
    start = time.monotonic()
    if columns is None:
        columns = {c for cs in rows.values() for c in cs}
    cols: dict[Hashable, set] = {c: set() for c in columns}
    for r, cs in rows.items():
        for c in cs:
            cols[c].add(r)
    deadline = None if time_budget is None else start + time_budget
    search = _Search(cols, rows, deadline)
    partial = []
    for r in forced:
        if any(c not in search.cols for c in rows[r]):
            search.stats.elapsed = time.monotonic() - start
            return None, search.stats
        search.select(r)
        partial.append(r)
    try:
        found = search.solve(partial)
    except SearchTimeout as exc:
        search.stats.timed_out = True
        search.stats.elapsed = time.monotonic() - start
        exc.stats = search.stats
        raise
    search.stats.elapsed = time.monotonic() - start
    return found, search.stats
