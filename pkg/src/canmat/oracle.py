"""Exhaustive ground truth for the row/column permutation equivalence.

Everything here walks the full set of members, so it is restricted to small
orders.  The canonical counts from :mod:`canmat.enumeration` are audited
against the true number of orbits; agreement is measured, never assumed.
"""
from __future__ import annotations

import json
from collections import Counter, deque
from dataclasses import dataclass, field
from itertools import permutations
from typing import Sequence

from .bitcore import CapacityError, Dims, RowTuple, apply_perms, popcount
from .canonical import ORACLE_N_MAX, is_canonical, neighbors
from .enumeration import count_canonical

# with the override flag, n = 7 is admitted for these weights only
OVERRIDE_N = 7
OVERRIDE_K = (1, 2)


def _check(n: int, k: int, override: bool) -> Dims:
    d = Dims(n, k)
    if n <= ORACLE_N_MAX:
        return d
    if override and n == OVERRIDE_N and k in OVERRIDE_K:
        return d
    raise CapacityError(f"oracle limited to n <= {ORACLE_N_MAX}, got n={n}", ORACLE_N_MAX)


def enumerate_lambda(n: int, k: int, *, override: bool = False) -> list[RowTuple]:
    """All members of Lambda(n, k) in ascending lexicographic order."""
    _check(n, k, override)
    rows = [x for x in range(1 << n) if popcount(x) == k]
    bits = [[(x >> (n - 1 - j)) & 1 for j in range(n)] for x in rows]
    sums = [0] * n
    chosen: list[int] = []
    out: list[RowTuple] = []

    def rec(i: int):
        if i == n:
            out.append(tuple(chosen))
            return
        left = n - i - 1
        for x, b in zip(rows, bits):
            ok = True
            for j in range(n):
                s = sums[j] + b[j]
                if s > k or k - s > left:
                    ok = False
                    break
            if not ok:
                continue
            for j in range(n):
                sums[j] += b[j]
            chosen.append(x)
            rec(i + 1)
            chosen.pop()
            for j in range(n):
                sums[j] -= b[j]

    rec(0)
    return out


@dataclass
class OrbitClass:
    representative: RowTuple
    size: int
    canonical_members: list[RowTuple]


@dataclass
class OrbitPartition:
    dims: Dims
    classes: list[OrbitClass] = field(default_factory=list)

    def total(self) -> int:
        return sum(c.size for c in self.classes)

    def class_of(self) -> dict[RowTuple, int]:
        """Map every canonical member to the index of its class."""
        return {t: i for i, c in enumerate(self.classes) for t in c.canonical_members}


def orbit_partition(n: int, k: int, *, override: bool = False) -> OrbitPartition:
    """Split Lambda(n, k) into orbits by closure under adjacent row and column swaps."""
    d = _check(n, k, override)
    members = enumerate_lambda(n, k, override=override)
    seen: set[RowTuple] = set()
    part = OrbitPartition(d)
    for t in members:
        if t in seen:
            continue
        # members come in ascending order, so the first unseen one is its class minimum
        seen.add(t)
        queue = deque([t])
        size = 0
        canon = []
        while queue:
            u = queue.popleft()
            size += 1
            if is_canonical(u):
                canon.append(u)
            for v in neighbors(u):
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        part.classes.append(OrbitClass(t, size, sorted(canon)))
    return part


def witness(t: Sequence[int], u: Sequence[int]) -> tuple[list[int], list[int]] | None:
    """Permutations ``(rows, cols)`` with ``apply_perms(t, rows, cols) == u``, or None.

    Tries every column permutation; the row permutation is then forced up to
    ties between equal rows.
    """
    t, u = tuple(t), tuple(u)
    n = len(t)
    identity = list(range(n))
    for cols in permutations(range(n)):
        moved = apply_perms(t, identity, cols)
        if sorted(moved) != sorted(u):
            continue
        slots: dict[int, list[int]] = {}
        for i, x in enumerate(moved):
            slots.setdefault(x, []).append(i)
        rows = [slots[x].pop(0) for x in u]
        return rows, list(cols)
    return None


@dataclass
class ComparisonReport:
    dims: Dims
    canonical_count: int
    orbit_count: int
    histogram: dict[int, int]

    @property
    def agree(self) -> bool:
        return self.canonical_count == self.orbit_count

    def problems(self) -> list[str]:
        """Internal inconsistencies; empty when the report is coherent."""
        found = []
        total = sum(per * classes for per, classes in self.histogram.items())
        if total != self.canonical_count:
            found.append(f"histogram accounts for {total} canonical elements, expected {self.canonical_count}")
        if self.histogram.get(0):
            found.append(f"{self.histogram[0]} classes contain no canonical element")
        if sum(self.histogram.values()) != self.orbit_count:
            found.append("histogram class total differs from orbit count")
        return found

    def to_dict(self) -> dict:
        return {
            "n": self.dims.n,
            "k": self.dims.k,
            "canonical_count": self.canonical_count,
            "orbit_count": self.orbit_count,
            "agree": self.agree,
            "histogram": [
                {"canonical_per_class": per, "classes": self.histogram[per]}
                for per in sorted(self.histogram)
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: dict) -> "ComparisonReport":
        return cls(
            Dims(data["n"], data["k"]),
            data["canonical_count"],
            data["orbit_count"],
            {h["canonical_per_class"]: h["classes"] for h in data["histogram"]},
        )

    def render(self) -> str:
        d = self.dims
        lines = [
            f"n={d.n} k={d.k}",
            f"C={self.canonical_count} O={self.orbit_count} agree={'true' if self.agree else 'false'}",
            "canonical_per_class  classes",
        ]
        for per in sorted(self.histogram):
            lines.append(f"{per:>19}  {self.histogram[per]:>7}")
        if not self.agree:
            lines.append(
                f"DISAGREE: {self.canonical_count} canonical elements "
                f"spread over {self.orbit_count} orbits"
            )
        return "\n".join(lines)


def compare(n: int, k: int, workers: int = 1, *, override: bool = False) -> ComparisonReport:
    part = orbit_partition(n, k, override=override)
    c = count_canonical(n, k, workers)
    hist = Counter(len(cls.canonical_members) for cls in part.classes)
    return ComparisonReport(part.dims, c, len(part.classes), dict(hist))
