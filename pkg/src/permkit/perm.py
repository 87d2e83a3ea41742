"""Permutations in one-line notation.

A permutation of ``n`` symbols is a plain tuple ``(s(1), ..., s(n))`` over the
symbols ``1..n``.  Tuples are hashable and cheap, which matters because most of
the toolkit builds sets and dicts keyed by permutations.

Composition follows the coding-theory convention used throughout the package::

    compose(a, b)(i) == b(a(i))

so ``a`` acts first as a map on positions.  With this convention swapping the
entries at positions ``i`` and ``i+1`` of ``p`` is ``compose(t, p)`` where ``t``
is the transposition ``(i, i+1)``, and ``compose(p, r)`` relabels the *values*
of ``p`` by ``r`` (the isometry of both metrics).
"""

from __future__ import annotations

from math import factorial
from typing import Iterable, Iterator, Sequence

Perm = tuple[int, ...]


def check_perm(p: Sequence[int]) -> Perm:
    """Return ``p`` as a tuple, raising ``ValueError`` unless it is a permutation of 1..n."""
    t = tuple(int(x) for x in p)
    if not t:
        raise ValueError("permutation must have at least one symbol")
    if sorted(t) != list(range(1, len(t) + 1)):
        raise ValueError(f"not a permutation of 1..{len(t)}: {list(t)}")
    return t


def parse_perm(text: str, zero_based: bool = False) -> Perm:
    """Parse ``"2 4 1 3"`` or ``"2,4,1,3"`` (brackets tolerated)."""
    cleaned = text.replace(",", " ").replace("[", " ").replace("]", " ")
    values = [int(tok) for tok in cleaned.split()]
    if zero_based:
        values = [v + 1 for v in values]
    return check_perm(values)


def format_perm(p: Perm) -> str:
    return " ".join(str(x) for x in p)


def identity(n: int) -> Perm:
    if n < 1:
        raise ValueError("n must be positive")
    return tuple(range(1, n + 1))


def _same_size(a: Perm, b: Perm) -> None:
    if len(a) != len(b):
        raise ValueError(f"size mismatch: {len(a)} vs {len(b)}")


def compose(a: Perm, b: Perm) -> Perm:
    """``(a o b)(i) = b(a(i))``: apply ``a`` first."""
    _same_size(a, b)
    return tuple(b[x - 1] for x in a)


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for pos, val in enumerate(p, start=1):
        inv[val - 1] = pos
    return tuple(inv)


def transposition(n: int, i: int, j: int) -> Perm:
    """The permutation exchanging symbols ``i`` and ``j`` (1-based)."""
    if not (1 <= i <= n and 1 <= j <= n) or i == j:
        raise ValueError(f"bad transposition ({i},{j}) for n={n}")
    t = list(range(1, n + 1))
    t[i - 1], t[j - 1] = j, i
    return tuple(t)


def adjacent_transpose(p: Perm, i: int) -> Perm:
    """Exchange the entries at positions ``i`` and ``i+1`` (1-based)."""
    n = len(p)
    if not 1 <= i <= n - 1:
        raise ValueError(f"position {i} out of range 1..{n - 1}")
    q = list(p)
    q[i - 1], q[i] = q[i], q[i - 1]
    return tuple(q)


def wrap_transpose(p: Perm) -> Perm:
    """Exchange the first and last entries (the extra cyclic generator)."""
    n = len(p)
    if n < 2:
        raise ValueError("wrap transposition needs n >= 2")
    q = list(p)
    q[0], q[-1] = q[-1], q[0]
    return tuple(q)


def reverse(p: Perm) -> Perm:
    return tuple(reversed(p))


def rotate(p: Perm, k: int) -> Perm:
    """Cyclic shift of the one-line notation: ``rotate(p, k)[0] == p[k mod n]``."""
    k %= len(p)
    return p[k:] + p[:k]


def generator_positions(n: int, cyclic: bool) -> list[tuple[int, int]]:
    """0-based position pairs swapped by the Kendall (or cyclic Kendall) generators."""
    pairs = [(i, i + 1) for i in range(n - 1)]
    # n == 2: the wrap swap coincides with (1,2)
    if cyclic and n > 2:
        pairs.append((0, n - 1))
    return pairs


def lehmer_code(p: Perm) -> list[int]:
    n = len(p)
    return [sum(1 for j in range(i + 1, n) if p[j] < p[i]) for i in range(n)]


def rank(p: Perm) -> int:
    """Lexicographic rank of ``p`` in S_n, via its Lehmer code."""
    n = len(p)
    r = 0
    for i, digit in enumerate(lehmer_code(p)):
        r += digit * factorial(n - 1 - i)
    return r


def unrank(n: int, index: int) -> Perm:
    if not 0 <= index < factorial(n):
        raise ValueError(f"rank {index} out of range for n={n}")
    symbols = list(range(1, n + 1))
    out = []
    for i in range(n - 1, -1, -1):
        digit, index = divmod(index, factorial(i))
        out.append(symbols.pop(digit))
    return tuple(out)


def all_perms(n: int) -> Iterator[Perm]:
    """All of S_n in lexicographic (rank) order."""
    from itertools import permutations

    return permutations(range(1, n + 1))


def normalize_zero_based(words: Iterable[Sequence[int]]) -> list[Perm]:
    return [check_perm([x + 1 for x in w]) for w in words]
