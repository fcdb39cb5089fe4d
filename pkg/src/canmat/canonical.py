"""Canonical elements: row tuples whose rows and columns are both nondecreasing."""
from __future__ import annotations

from collections import deque
from typing import Iterator, Sequence

from .bitcore import (
    CapacityError,
    DomainError,
    RowTuple,
    apply_perms,
    is_member,
    transpose_tuple,
)

ORACLE_N_MAX = 6


def _nondecreasing(xs: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(xs, xs[1:]))


def is_canonical(t: Sequence[int]) -> bool:
    return _nondecreasing(t) and _nondecreasing(transpose_tuple(t))


def check_lemma1(t: Sequence[int], n: int, k: int) -> bool:
    """First row and first column both read ``0...0 1...1`` with ``k`` ones.

    Every canonical member of the class must pass; a ``False`` here on a
    canonical input would be a counterexample.
    """
    if not is_member(t, n, k):
        raise DomainError(f"{tuple(t)} is not a member of Lambda({n},{k})")
    low = (1 << k) - 1
    return t[0] == low and transpose_tuple(t)[0] == low


def doubly_sort(t: Sequence[int], max_iters: int | None = None) -> tuple[RowTuple, bool]:
    """Alternately sort rows and columns ascending until the tuple is canonical.

    Returns the final tuple and whether it is canonical.  Sorting is stable, so
    equal rows (or columns) keep their relative order.
    """
    cur = tuple(t)
    n = len(cur)
    if max_iters is None:
        max_iters = n * n
    if max_iters < 1:
        raise DomainError("max_iters must be positive")
    identity = list(range(n))
    for _ in range(max_iters):
        if is_canonical(cur):
            return cur, True
        cur = tuple(sorted(cur))
        cols = transpose_tuple(cur)
        cur = apply_perms(cur, identity, sorted(identity, key=cols.__getitem__))
    return cur, is_canonical(cur)


def neighbors(t: RowTuple) -> Iterator[RowTuple]:
    """Images of ``t`` under every adjacent row swap and adjacent column swap."""
    n = len(t)
    for i in range(n - 1):
        if t[i] != t[i + 1]:
            yield t[:i] + (t[i + 1], t[i]) + t[i + 2:]
    for s in range(n - 1):
        mask = 3 << s
        # swapping two bits flips both exactly when they differ
        u = tuple(x ^ mask if ((x >> s) ^ (x >> (s + 1))) & 1 else x for x in t)
        if u != t:
            yield u


def orbit(t: Sequence[int], limit: int = ORACLE_N_MAX) -> set[RowTuple]:
    """All row/column permutations of ``t``, by breadth-first closure."""
    start = tuple(t)
    if len(start) > limit:
        raise CapacityError(f"orbit closure limited to n <= {limit}, got n={len(start)}", limit)
    seen = {start}
    queue = deque([start])
    while queue:
        for u in neighbors(queue.popleft()):
            if u not in seen:
                seen.add(u)
                queue.append(u)
    return seen


def min_orbit_rep(t: Sequence[int], limit: int = ORACLE_N_MAX) -> RowTuple:
    """Lexicographically smallest tuple in the orbit of ``t``."""
    return min(orbit(t, limit))
