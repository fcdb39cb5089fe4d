"""Enumeration and counting of canonical elements, plus exact counts of all members.

The search fills rows top to bottom.  Columns whose top-down prefixes are
equal form contiguous *groups*; since column prefixes must stay
nondecreasing, a new row may only put its ones at the right end of each
group.  A row is therefore a choice of how many ones each group receives, and
the search state after any number of rows is fully described by the group
sizes, the number of ones already in each group, and the previous row value.
Counting memoizes on that state.
"""
from __future__ import annotations

import json
import math
import time
from bisect import bisect_left
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

from .bitcore import CapacityError, Dims, DomainError, RowTuple, popcount

DESK_N_MAX = 12
LAMBDA_N_MAX = 16

Groups = tuple[tuple[int, int], ...]  # (size, ones so far) per run of equal columns


@dataclass(frozen=True)
class EnumConfig:
    dims: Dims
    emit: bool = True
    workers: int = 1
    force_first_row: bool = True

    def __post_init__(self):
        if self.workers < 1:
            raise DomainError("workers must be >= 1")


class _Search:
    def __init__(self, n: int, k: int):
        self.n = n
        self.k = k
        self._cands: dict[tuple[Groups, int], tuple[list[int], list[tuple[int, Groups]]]] = {}
        self._counts: dict[tuple[Groups, int, int], int] = {}

    def candidates(self, groups: Groups, rows_after: int):
        """Admissible next rows in ascending order, each with its successor groups."""
        key = (groups, rows_after)
        hit = self._cands.get(key)
        if hit is not None:
            return hit
        n, k = self.n, self.k
        lo, hi = [], []
        for size, ones in groups:
            need = k - ones
            # a column left out now must still be completable by the remaining rows
            lo.append(size if need > rows_after else 0)
            hi.append(size if need > 0 else 0)
        g_count = len(groups)
        cap = [0] * (g_count + 1)
        floor = [0] * (g_count + 1)
        for g in range(g_count - 1, -1, -1):
            cap[g] = cap[g + 1] + hi[g]
            floor[g] = floor[g + 1] + lo[g]

        out: list[tuple[int, Groups]] = []

        def place(g: int, left: int, col: int, value: int, acc: list):
            if g == g_count:
                out.append((value, tuple(acc)))
                return
            size, ones = groups[g]
            first = max(lo[g], left - cap[g + 1])
            last = min(hi[g], left - floor[g + 1])
            for m in range(first, last + 1):
                if m == 0:
                    nxt = [(size, ones)]
                elif m == size:
                    nxt = [(size, ones + 1)]
                else:
                    nxt = [(size - m, ones), (m, ones + 1)]
                bits = ((1 << m) - 1) << (n - col - size)
                place(g + 1, left - m, col + size, value | bits, acc + nxt)

        place(0, k, 0, 0, [])
        # ascending m vectors already give ascending row values; sort defensively
        out.sort()
        hit = ([v for v, _ in out], out)
        self._cands[key] = hit
        return hit

    def count(self, groups: Groups, prev: int, rows_left: int) -> int:
        """Number of ways to complete ``rows_left`` more rows, each >= ``prev``."""
        if rows_left == 0:
            return 1
        key = (groups, prev, rows_left)
        hit = self._counts.get(key)
        if hit is not None:
            return hit
        values, succ = self.candidates(groups, rows_left - 1)
        start = bisect_left(values, prev)
        if rows_left == 1:
            total = len(values) - start
        else:
            total = 0
            for value, nxt in succ[start:]:
                total += self.count(nxt, value, rows_left - 1)
        self._counts[key] = total
        return total

    def walk(self, groups: Groups, prev: int, rows_left: int, prefix: RowTuple) -> Iterator[RowTuple]:
        if rows_left == 0:
            yield prefix
            return
        values, succ = self.candidates(groups, rows_left - 1)
        for value, nxt in succ[bisect_left(values, prev):]:
            if self.count(nxt, value, rows_left - 1):
                yield from self.walk(nxt, value, rows_left - 1, prefix + (value,))


def groups_of(prefix: Sequence[int], n: int) -> Groups | None:
    """Group state after the given rows, or ``None`` if column prefixes are not sorted."""
    cols = [0] * n
    for x in prefix:
        for j in range(n):
            cols[j] = (cols[j] << 1) | ((x >> (n - 1 - j)) & 1)
    groups: list[list[int]] = []
    for j, p in enumerate(cols):
        if j and p < cols[j - 1]:
            return None
        if j and p == cols[j - 1]:
            groups[-1][0] += 1
        else:
            groups.append([1, popcount(p)])
    return tuple((s, c) for s, c in groups)


@lru_cache(maxsize=8)
def _search(n: int, k: int) -> _Search:
    return _Search(n, k)


def _roots(n: int, k: int, force_first_row: bool) -> list[RowTuple]:
    """Feasible prefixes of up to two rows, in ascending order."""
    s = _search(n, k)
    depth = min(2, n)
    if force_first_row:
        first = (1 << k) - 1
        level = [((first,), groups_of((first,), n))]
    else:
        start: Groups = ((n, 0),)
        values, succ = s.candidates(start, n - 1)
        level = [((v,), g) for v, g in succ]
    while level and len(level[0][0]) < depth:
        nxt_level = []
        for prefix, groups in level:
            rows_after = n - len(prefix) - 1
            values, succ = s.candidates(groups, rows_after)
            for v, g in succ[bisect_left(values, prefix[-1]):]:
                nxt_level.append((prefix + (v,), g))
        level = nxt_level
    return [p for p, g in level if s.count(g, p[-1], n - len(p))]


def _block_count(n: int, k: int, prefix: RowTuple) -> int:
    groups = groups_of(prefix, n)
    return _search(n, k).count(groups, prefix[-1], n - len(prefix))


def _block_list(n: int, k: int, prefix: RowTuple) -> list[RowTuple]:
    groups = groups_of(prefix, n)
    return list(_search(n, k).walk(groups, prefix[-1], n - len(prefix), prefix))


def _check(n: int, k: int, override: bool) -> Dims:
    d = Dims(n, k)
    if n > DESK_N_MAX and not override:
        raise CapacityError(
            f"n={n} exceeds desk-scale limit {DESK_N_MAX} (use override to force)", DESK_N_MAX
        )
    return d


def _run_blocks(fn, n: int, k: int, roots: list[RowTuple], workers: int) -> list:
    if workers == 1 or len(roots) < 2:
        return [fn(n, k, r) for r in roots]
    with ProcessPoolExecutor(max_workers=min(workers, len(roots))) as pool:
        return list(pool.map(fn, [n] * len(roots), [k] * len(roots), roots))


def list_canonical(
    n: int,
    k: int,
    workers: int = 1,
    *,
    force_first_row: bool = True,
    override: bool = False,
) -> Iterator[RowTuple]:
    """Yield every canonical member of Lambda(n, k) in ascending lexicographic order.

    ``force_first_row=False`` drops the shortcut that fixes row 1 to ``2**k - 1``
    and searches it like any other row; output must not change.
    """
    _check(n, k, override)
    if workers < 1:
        raise DomainError("workers must be >= 1")
    return _stream(n, k, workers, _roots(n, k, force_first_row))


def _stream(n: int, k: int, workers: int, roots: list[RowTuple]) -> Iterator[RowTuple]:
    if workers == 1:
        s = _search(n, k)
        for r in roots:
            yield from s.walk(groups_of(r, n), r[-1], n - len(r), r)
        return
    for block in _run_blocks(_block_list, n, k, roots, workers):
        yield from block


def count_canonical(
    n: int,
    k: int,
    workers: int = 1,
    *,
    force_first_row: bool = True,
    override: bool = False,
) -> int:
    _check(n, k, override)
    roots = _roots(n, k, force_first_row)
    return sum(_run_blocks(_block_count, n, k, roots, workers))


def run(cfg: EnumConfig) -> Iterator[RowTuple] | int:
    """Dispatch on ``cfg.emit``: stream the tuples or just count them."""
    d = cfg.dims
    if cfg.emit:
        return list_canonical(d.n, d.k, cfg.workers, force_first_row=cfg.force_first_row)
    return count_canonical(d.n, d.k, cfg.workers, force_first_row=cfg.force_first_row)


def count_lambda(n: int, k: int) -> int:
    """Number of n x n 0/1 matrices with k ones in every row and column.

    Row-by-row DP over the multiset of residual column demands: the state
    ``c`` has ``c[d]`` = number of columns still needing ``d`` ones.
    """
    Dims(n, k)
    if n > LAMBDA_N_MAX:
        raise CapacityError(f"count_lambda supports n <= {LAMBDA_N_MAX}, got n={n}", LAMBDA_N_MAX)
    start = tuple(n if d == k else 0 for d in range(k + 1))
    layer = {start: 1}
    for row in range(n):
        rows_after = n - row - 1
        nxt: dict[tuple[int, ...], int] = {}
        for state, ways in layer.items():
            for take, mult in _distributions(state, k):
                new = list(state)
                for d in range(1, k + 1):
                    new[d] -= take[d]
                    new[d - 1] += take[d]
                if any(new[d] for d in range(rows_after + 1, k + 1)):
                    continue
                key = tuple(new)
                nxt[key] = nxt.get(key, 0) + ways * mult
        layer = nxt
    return layer.get(tuple(n if d == 0 else 0 for d in range(k + 1)), 0)


def _distributions(state: tuple[int, ...], k: int):
    """Ways to place ``k`` ones over demand classes d >= 1, with multiplicities."""
    top = len(state) - 1
    take = [0] * (top + 1)

    def rec(d: int, left: int, mult: int):
        if d == 0:
            if left == 0:
                yield tuple(take), mult
            return
        for a in range(min(left, state[d]) + 1):
            take[d] = a
            yield from rec(d - 1, left - a, mult * math.comb(state[d], a))
        take[d] = 0

    yield from rec(top, k, 1)


@dataclass
class SequenceEntry:
    n: int
    k: int
    canonical_count: int
    lambda_count: int
    orbit_count: int | None = None
    elapsed_ms: float = 0.0


@dataclass
class SequenceTable:
    entries: list[SequenceEntry] = field(default_factory=list)

    def column(self, name: str) -> list:
        return [getattr(e, name) for e in self.entries]

    def to_json(self, timings: bool = True) -> str:
        rows = []
        for e in self.entries:
            row = asdict(e)
            if e.orbit_count is None:
                del row["orbit_count"]
            if not timings:
                del row["elapsed_ms"]
            else:
                row["elapsed_ms"] = round(e.elapsed_ms, 3)
            rows.append(row)
        return json.dumps(rows, indent=2)

    def render(self, timings: bool = False) -> str:
        headers = ["n", "k", "canonical", "lambda"]
        with_orbits = any(e.orbit_count is not None for e in self.entries)
        if with_orbits:
            headers.append("orbits")
        if timings:
            headers.append("ms")
        body = []
        for e in self.entries:
            row = [str(e.n), str(e.k), str(e.canonical_count), str(e.lambda_count)]
            if with_orbits:
                row.append("-" if e.orbit_count is None else str(e.orbit_count))
            if timings:
                row.append(f"{e.elapsed_ms:.1f}")
            body.append(row)
        widths = [max(len(r[i]) for r in [headers] + body) for i in range(len(headers))]
        lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in [headers] + body]
        return "\n".join(lines)

    def bfile(self) -> str:
        return "".join(f"{e.n} {e.canonical_count}\n" for e in self.entries)


def sequence(
    k: int,
    n_max: int,
    workers: int = 1,
    *,
    orbits: bool = False,
    override: bool = False,
) -> SequenceTable:
    """Canonical counts for n = k..n_max, with lambda and optional orbit counts."""
    if k > n_max:
        raise DomainError(f"k={k} exceeds n_max={n_max}")
    from .canonical import ORACLE_N_MAX
    from .oracle import orbit_partition

    table = SequenceTable()
    for n in range(max(k, 1), n_max + 1):
        t0 = time.perf_counter()
        c = count_canonical(n, k, workers, override=override)
        elapsed = (time.perf_counter() - t0) * 1000
        lam = count_lambda(n, k) if n <= LAMBDA_N_MAX else None
        o = len(orbit_partition(n, k).classes) if orbits and n <= ORACLE_N_MAX else None
        table.entries.append(SequenceEntry(n, k, c, lam, o, elapsed))
    return table
