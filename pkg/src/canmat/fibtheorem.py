"""Canonical counts of Lambda(k+2, k) against the Fibonacci numbers.

Canonical members of Lambda(k+2, k) split on the entry at row 2, column 2:

* ``CASE_I`` (entry 0): the lower-right k x k block is a canonical member of
  Lambda(k, k-2), bordered by two zero-then-ones rows and columns.
* ``CASE_II`` (entry 1): clearing that entry and dropping row 1 and column 1
  leaves a canonical member of Lambda(k+1, k-1).

The two embeddings below build these matrices and :func:`reduce` undoes
them.  Each result is post-checked for membership and canonicity.
"""
from __future__ import annotations

import enum
import json
from dataclasses import asdict, dataclass
from typing import Sequence

from .bitcore import DomainError, RowTuple, is_member
from .canonical import is_canonical
from .enumeration import count_canonical, list_canonical

FIB_MAX = 90
RECURRENCE_K_MAX = 8


class CaseTag(enum.Enum):
    CASE_I = "CASE_I"
    CASE_II = "CASE_II"


def fib(m: int) -> list[int]:
    """``[f_0, ..., f_m]`` with ``f_0 = f_1 = 1``."""
    if m < 0:
        raise DomainError("m must be >= 0")
    if m > FIB_MAX:
        raise OverflowError(f"fib limited to m <= {FIB_MAX} (64-bit range)")
    values = [1, 1]
    while len(values) <= m:
        values.append(values[-1] + values[-2])
    return values[: m + 1]


def _require(t: Sequence[int], n: int, k: int) -> None:
    if len(t) != n or not is_member(t, n, k):
        raise DomainError(f"{tuple(t)} is not a member of Lambda({n},{k})")
    if not is_canonical(t):
        raise DomainError(f"{tuple(t)} is not canonical")


def _post(a: RowTuple, k: int) -> RowTuple:
    n = k + 2
    if not (is_member(a, n, k) and is_canonical(a)):
        raise AssertionError(f"embedding produced {a}, not a canonical member of Lambda({n},{k})")
    return a


def embed_case_i(b: Sequence[int], k: int) -> RowTuple:
    """Border a canonical ``B`` in Lambda(k, k-2) up to Lambda(k+2, k) with entry (2,2) = 0."""
    if k < 2:
        raise DomainError("case I needs k >= 2")
    _require(b, k, k - 2)
    top = (1 << k) - 1
    lead = 3 << k
    return _post((top, top) + tuple(lead | x for x in b), k)


def embed_case_ii(b: Sequence[int], k: int) -> RowTuple:
    """Set entry (1,1) of a canonical ``B`` in Lambda(k+1, k-1), then prepend a row and column."""
    if k < 2:
        raise DomainError("case II needs k >= 2")
    _require(b, k + 1, k - 1)
    rows = list(b)
    rows[0] |= 1 << k
    lead = 1 << (k + 1)
    a = ((1 << k) - 1, rows[0]) + tuple(lead | x for x in rows[1:])
    return _post(a, k)


def reduce(a: Sequence[int]) -> tuple[CaseTag, RowTuple]:
    n = len(a)
    k = n - 2
    if k < 2:
        raise DomainError("reduce needs order >= 4")
    _require(a, n, k)
    if (a[1] >> (n - 2)) & 1:
        low = (1 << (k + 1)) - 1
        rows = [a[1] ^ (1 << k)] + list(a[2:])
        b = tuple(x & low for x in rows)
        tag = CaseTag.CASE_II
        ok = is_member(b, k + 1, k - 1) and is_canonical(b)
    else:
        low = (1 << k) - 1
        b = tuple(x & low for x in a[2:])
        tag = CaseTag.CASE_I
        ok = is_member(b, k, k - 2) and is_canonical(b)
    if not ok:
        raise AssertionError(f"reducing {tuple(a)} gave {b}, which is not canonical")
    return tag, b


@dataclass
class RecurrenceRow:
    k: int
    fib_k: int
    canonical: int
    recurrence_sum: int | None
    partition_ok: bool | None

    @property
    def passed(self) -> bool:
        return (
            self.fib_k == self.canonical
            and self.recurrence_sum in (None, self.canonical)
            and self.partition_ok is not False
        )


def partition_check(k: int, workers: int = 1) -> bool:
    """Embedded images of both cases cover the canonical members of Lambda(k+2, k) exactly once,
    and :func:`reduce` sends each image back to its source."""
    target = set(list_canonical(k + 2, k, workers))
    pairs = [(embed_case_i(b, k), CaseTag.CASE_I, b) for b in list_canonical(k, k - 2, workers)]
    pairs += [(embed_case_ii(b, k), CaseTag.CASE_II, b) for b in list_canonical(k + 1, k - 1, workers)]
    images = [a for a, _, _ in pairs]
    if len(images) != len(set(images)) or set(images) != target:
        return False
    return all(reduce(a) == (tag, b) for a, tag, b in pairs)


def verify_recurrence(k_max: int, workers: int = 1, partition_k_max: int | None = None) -> list[RecurrenceRow]:
    """One row per k = 0..k_max; failures show up as rows with ``passed == False``."""
    if not 0 <= k_max <= RECURRENCE_K_MAX:
        raise DomainError(f"k_max must be in 0..{RECURRENCE_K_MAX}")
    if partition_k_max is None:
        partition_k_max = k_max
    f = fib(k_max)
    rows = []
    for k in range(k_max + 1):
        c = count_canonical(k + 2, k, workers)
        rec = None
        part = None
        if k >= 2:
            rec = count_canonical(k, k - 2, workers) + count_canonical(k + 1, k - 1, workers)
            if k <= partition_k_max:
                try:
                    part = partition_check(k, workers)
                except AssertionError:
                    part = False
        rows.append(RecurrenceRow(k, f[k], c, rec, part))
    return rows


def render_rows(rows: list[RecurrenceRow]) -> str:
    headers = ["k", "f_k", "C(k+2,k)", "C(k,k-2)+C(k+1,k-1)", "partition_ok", "status"]
    body = [
        [
            str(r.k),
            str(r.fib_k),
            str(r.canonical),
            "-" if r.recurrence_sum is None else str(r.recurrence_sum),
            "-" if r.partition_ok is None else str(r.partition_ok).lower(),
            "pass" if r.passed else "FAIL",
        ]
        for r in rows
    ]
    widths = [max(len(x[i]) for x in [headers] + body) for i in range(len(headers))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(x, widths)) for x in [headers] + body)


def rows_to_json(rows: list[RecurrenceRow]) -> str:
    return json.dumps([dict(asdict(r), passed=r.passed) for r in rows], indent=2)
