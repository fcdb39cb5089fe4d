"""Square 0/1 matrices encoded as tuples of row integers.

A matrix ``A = (a_ij)`` of order ``n`` is stored as the tuple ``(x_1, ..., x_n)``
where ``x_i = sum_j a_ij * 2**(n - j)``, i.e. column 1 is the most significant
bit of every row.  Rows and columns are 1-based in all rendered output; the
Python sequences used internally are 0-based as usual.

A ``RowTuple`` is just ``tuple[int, ...]``; its order is ``len(t)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

N_MAX = 64

RowTuple = tuple[int, ...]


class CapacityError(ValueError):
    """An input exceeds a configured size limit."""

    def __init__(self, message: str, limit: int | None = None):
        super().__init__(message)
        self.limit = limit


class DomainError(ValueError):
    """An input violates the precondition of an operation."""


@dataclass(frozen=True)
class Dims:
    n: int
    k: int

    def __post_init__(self):
        if not 1 <= self.n <= N_MAX:
            raise CapacityError(f"order n={self.n} outside 1..{N_MAX}", N_MAX)
        if not 0 <= self.k <= self.n:
            raise DomainError(f"weight k={self.k} outside 0..{self.n}")


@dataclass(frozen=True)
class BitMatrix:
    bits: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.bits)
        for row in self.bits:
            if len(row) != n:
                raise DomainError("matrix is not square")
            if any(b not in (0, 1) for b in row):
                raise DomainError("matrix entries must be 0 or 1")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int] | str]) -> "BitMatrix":
        """Build from nested sequences or strings such as ``"0011"``."""
        return cls(tuple(tuple(int(b) for b in row) for row in rows))

    @property
    def n(self) -> int:
        return len(self.bits)

    def transpose(self) -> "BitMatrix":
        return BitMatrix(tuple(zip(*self.bits)))

    def render(self) -> str:
        return "\n".join("".join(str(b) for b in row) for row in self.bits)


def _check_tuple(t: Sequence[int]) -> int:
    n = len(t)
    if n > N_MAX:
        raise CapacityError(f"order n={n} exceeds N_MAX={N_MAX}", N_MAX)
    top = 1 << n
    for x in t:
        if not 0 <= x < top:
            raise DomainError(f"row value {x} outside 0..{top - 1} for n={n}")
    return n


def popcount(x: int) -> int:
    return bin(x).count("1")


def encode(m: BitMatrix) -> RowTuple:
    n = m.n
    if n > N_MAX:
        raise CapacityError(f"order n={n} exceeds N_MAX={N_MAX}", N_MAX)
    return tuple(int("".join(map(str, row)), 2) for row in m.bits)


def decode(t: Sequence[int]) -> BitMatrix:
    n = _check_tuple(t)
    return BitMatrix(tuple(tuple((x >> (n - 1 - j)) & 1 for j in range(n)) for x in t))


def transpose_tuple(t: Sequence[int]) -> RowTuple:
    """Row tuple of the transposed matrix; entry j reads column j top-down, row 1 as MSB."""
    n = _check_tuple(t)
    cols = [0] * n
    for x in t:
        for j in range(n):
            cols[j] = (cols[j] << 1) | ((x >> (n - 1 - j)) & 1)
    return tuple(cols)


def column_sums(t: Sequence[int]) -> list[int]:
    n = len(t)
    return [sum((x >> (n - 1 - j)) & 1 for x in t) for j in range(n)]


def is_member(t: Sequence[int], n: int, k: int) -> bool:
    """True iff ``t`` is an order-``n`` matrix with ``k`` ones in every row and column."""
    if len(t) != n:
        raise DomainError(f"tuple has order {len(t)}, expected {n}")
    _check_tuple(t)
    if any(popcount(x) != k for x in t):
        return False
    return all(popcount(y) == k for y in transpose_tuple(t))


def complement(t: Sequence[int]) -> RowTuple:
    n = _check_tuple(t)
    full = (1 << n) - 1
    return tuple(full ^ x for x in t)


def _check_perm(p: Sequence[int], n: int, what: str) -> None:
    if len(p) != n or sorted(p) != list(range(n)):
        raise DomainError(f"{what} is not a permutation of 0..{n - 1}")


def apply_perms(t: Sequence[int], row_perm: Sequence[int], col_perm: Sequence[int]) -> RowTuple:
    """Reorder rows and columns: result row ``i`` is input row ``row_perm[i]``,
    result column ``j`` is input column ``col_perm[j]`` (0-based)."""
    n = _check_tuple(t)
    _check_perm(row_perm, n, "row permutation")
    _check_perm(col_perm, n, "column permutation")
    shifts = [n - 1 - c for c in col_perm]
    out = []
    for i in row_perm:
        x = t[i]
        y = 0
        for s in shifts:
            y = (y << 1) | ((x >> s) & 1)
        out.append(y)
    return tuple(out)


def format_tuple(t: Sequence[int], brackets: bool = False) -> str:
    body = ",".join(str(x) for x in t)
    return f"⟨{body}⟩" if brackets else body


def parse_tuple(text: str) -> RowTuple:
    body = text.strip().strip("⟨⟩<>()[]")
    return tuple(int(part) for part in body.split(",") if part.strip())
