"""Exact linear algebra over GF(2) on bit-packed rows.

Rows are stored as Python ints (bit j = column j), so row operations are
single word-level XORs.  Everything returned is canonical: bases come out
of a reduced echelon computation with pivot columns ascending, which makes
all downstream chart generators reproducible bit-for-bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple


class DimensionMismatch(ValueError):
    """Operands have incompatible shapes."""


@dataclass(frozen=True)
class F2Vector:
    len: int
    bits: int

    def __post_init__(self):
        if self.len < 0 or self.bits < 0 or self.bits >> self.len:
            raise ValueError("bit storage inconsistent with declared length")

    @classmethod
    def from_entries(cls, entries: Sequence[int]) -> "F2Vector":
        bits = 0
        for j, e in enumerate(entries):
            if e & 1:
                bits |= 1 << j
        return cls(len(entries), bits)

    def entries(self) -> List[int]:
        return [(self.bits >> j) & 1 for j in range(self.len)]

    def __getitem__(self, j: int) -> int:
        if not 0 <= j < self.len:
            raise IndexError(j)
        return (self.bits >> j) & 1

    def is_zero(self) -> bool:
        return self.bits == 0

    def __add__(self, other: "F2Vector") -> "F2Vector":
        if self.len != other.len:
            raise DimensionMismatch("vector lengths differ")
        return F2Vector(self.len, self.bits ^ other.bits)


@dataclass(frozen=True)
class F2Matrix:
    rows: int
    cols: int
    bits: Tuple[int, ...]  # one int per row, bit j = entry in column j

    def __post_init__(self):
        if len(self.bits) != self.rows:
            raise ValueError("bit storage inconsistent with row count")
        for r in self.bits:
            if r < 0 or r >> self.cols:
                raise ValueError("row bits exceed column count")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "F2Matrix":
        if cols is None:
            cols = len(rows[0]) if rows else 0
        packed = []
        for row in rows:
            if len(row) != cols:
                raise DimensionMismatch("ragged row")
            word = 0
            for j, e in enumerate(row):
                if e & 1:
                    word |= 1 << j
            packed.append(word)
        return cls(len(packed), cols, tuple(packed))

    @classmethod
    def from_row_bits(cls, bits: Iterable[int], cols: int) -> "F2Matrix":
        packed = tuple(bits)
        return cls(len(packed), cols, packed)

    @classmethod
    def zero(cls, rows: int, cols: int) -> "F2Matrix":
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def identity(cls, n: int) -> "F2Matrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    def entry(self, i: int, j: int) -> int:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError((i, j))
        return (self.bits[i] >> j) & 1

    def transpose(self) -> "F2Matrix":
        out = [0] * self.cols
        for i, word in enumerate(self.bits):
            while word:
                low = word & -word
                out[low.bit_length() - 1] |= 1 << i
                word ^= low
        return F2Matrix(self.cols, self.rows, tuple(out))

    def mul_vector(self, v: F2Vector) -> F2Vector:
        if v.len != self.cols:
            raise DimensionMismatch("matrix cols != vector length")
        bits = 0
        for i, word in enumerate(self.bits):
            if (word & v.bits).bit_count() & 1:
                bits |= 1 << i
        return F2Vector(self.rows, bits)

    def __mul__(self, other: "F2Matrix") -> "F2Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch("inner dimensions differ")
        out = []
        for word in self.bits:
            acc = 0
            w = word
            while w:
                low = w & -w
                acc ^= other.bits[low.bit_length() - 1]
                w ^= low
            out.append(acc)
        return F2Matrix(self.rows, other.cols, tuple(out))


def _rref_bits(rows: List[int], cols: int) -> Tuple[List[int], List[int]]:
    """In-place RREF of packed rows; returns (nonzero reduced rows, pivot cols)."""
    work = list(rows)
    pivots: List[int] = []
    head = 0
    for col in range(cols):
        mask = 1 << col
        pivot = None
        for r in range(head, len(work)):
            if work[r] & mask:
                pivot = r
                break
        if pivot is None:
            continue
        work[head], work[pivot] = work[pivot], work[head]
        for r in range(len(work)):
            if r != head and work[r] & mask:
                work[r] ^= work[head]
        pivots.append(col)
        head += 1
        if head == len(work):
            break
    return work[:head], pivots


def rank(m: F2Matrix) -> int:
    reduced, _ = _rref_bits(list(m.bits), m.cols)
    return len(reduced)


def row_space_basis(m: F2Matrix) -> List[F2Vector]:
    """Canonical (RREF) basis of the row space."""
    reduced, _ = _rref_bits(list(m.bits), m.cols)
    return [F2Vector(m.cols, r) for r in reduced]


def kernel_basis(m: F2Matrix) -> List[F2Vector]:
    """Canonical basis of {v : M v = 0}, in reduced echelon form.

    The basis vectors, written as rows, form the unique RREF basis of the
    kernel subspace, with pivot columns ascending.
    """
    # Eliminate on the transpose with identity tags: tag rows that reduce
    # to zero span the kernel.
    t = m.transpose()
    n = m.cols
    augmented = [t.bits[i] | (1 << (m.rows + i)) for i in range(n)]
    reduced, _ = _rref_bits(augmented, m.rows + n)
    mask = (1 << m.rows) - 1
    tags = [r >> m.rows for r in reduced if (r & mask) == 0]
    tags, _ = _rref_bits(tags, n)
    return [F2Vector(n, t_) for t_ in tags]


def solve(m: F2Matrix, b: F2Vector) -> Optional[F2Vector]:
    """Canonical solution of M x = b (zeros in non-pivot coordinates), or None."""
    if b.len != m.rows:
        raise DimensionMismatch("rhs length != row count")
    augmented = [m.bits[i] | ((b[i]) << m.cols) for i in range(m.rows)]
    reduced, pivots = _rref_bits(augmented, m.cols + 1)
    x = 0
    for row, col in zip(reduced, pivots):
        if col == m.cols:
            return None  # pivot in the rhs column: inconsistent
        if row >> m.cols:
            x |= 1 << col
    return F2Vector(m.cols, x)


def image_contains(m: F2Matrix, b: F2Vector) -> bool:
    return solve(m, b) is not None


__all__ = [
    "DimensionMismatch",
    "F2Matrix",
    "F2Vector",
    "image_contains",
    "kernel_basis",
    "rank",
    "row_space_basis",
    "solve",
]
