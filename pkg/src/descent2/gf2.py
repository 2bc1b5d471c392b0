"""Dense bit-packed linear algebra over GF(2).

Rows are Python ints used as bitsets (bit i = column i).  Matrices here stay
small (a few hundred columns at most), so everything is plain Gaussian
elimination on int rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple


def _popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass(frozen=True)
class F2Matrix:
    """An ``rows x cols`` matrix over GF(2), one int bitset per row."""

    rows: int
    cols: int
    bits: Tuple[int, ...]

    def __post_init__(self):
        if len(self.bits) != self.rows:
            raise ValueError("row count mismatch")
        mask = (1 << self.cols) - 1
        for r in self.bits:
            if r & ~mask:
                raise ValueError("row has bits beyond column count")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: int | None = None) -> "F2Matrix":
        packed = []
        width = cols
        for row in rows:
            if width is None:
                width = len(row)
            if len(row) != width:
                raise ValueError("ragged rows")
            packed.append(sum((1 << i) for i, v in enumerate(row) if v & 1))
        if width is None:
            raise ValueError("cannot infer width of empty matrix; pass cols")
        return cls(len(packed), width, tuple(packed))

    @classmethod
    def from_bitrows(cls, bitrows: Sequence[int], cols: int) -> "F2Matrix":
        return cls(len(bitrows), cols, tuple(bitrows))

    @classmethod
    def identity(cls, n: int) -> "F2Matrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "F2Matrix":
        return cls(rows, cols, (0,) * rows)

    def row(self, i: int) -> List[int]:
        return [(self.bits[i] >> j) & 1 for j in range(self.cols)]

    def entry(self, i: int, j: int) -> int:
        return (self.bits[i] >> j) & 1

    def transpose(self) -> "F2Matrix":
        cols = []
        for j in range(self.cols):
            c = 0
            for i in range(self.rows):
                c |= ((self.bits[i] >> j) & 1) << i
            cols.append(c)
        return F2Matrix(self.cols, self.rows, tuple(cols))

    def stack(self, other: "F2Matrix") -> "F2Matrix":
        if self.cols != other.cols:
            raise ValueError("column mismatch")
        return F2Matrix(self.rows + other.rows, self.cols, self.bits + other.bits)

    def augment(self, other: "F2Matrix") -> "F2Matrix":
        if self.rows != other.rows:
            raise ValueError("row mismatch")
        merged = tuple(self.bits[i] | (other.bits[i] << self.cols) for i in range(self.rows))
        return F2Matrix(self.rows, self.cols + other.cols, merged)

    def mat_vec(self, vec: int) -> int:
        """Multiply by a column vector given as a bitset; returns a bitset."""
        out = 0
        for i, r in enumerate(self.bits):
            out |= (_popcount(r & vec) & 1) << i
        return out

    def mat_mul(self, other: "F2Matrix") -> "F2Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        ot = other.transpose()
        out = []
        for r in self.bits:
            row = 0
            for j, c in enumerate(ot.bits):
                row |= (_popcount(r & c) & 1) << j
            out.append(row)
        return F2Matrix(self.rows, other.cols, tuple(out))


def rref(m: F2Matrix) -> Tuple[F2Matrix, List[int]]:
    """Reduced row echelon form; returns (rref matrix, pivot column list)."""
    work = list(m.bits)
    pivots: List[int] = []
    r = 0
    for col in range(m.cols):
        sel = None
        for i in range(r, len(work)):
            if (work[i] >> col) & 1:
                sel = i
                break
        if sel is None:
            continue
        work[r], work[sel] = work[sel], work[r]
        for i in range(len(work)):
            if i != r and ((work[i] >> col) & 1):
                work[i] ^= work[r]
        pivots.append(col)
        r += 1
        if r == len(work):
            break
    return F2Matrix(m.rows, m.cols, tuple(work)), pivots


def rank(m: F2Matrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: F2Matrix) -> List[int]:
    """Basis of the right kernel {v : M v = 0}, vectors as bitsets of length cols."""
    red, pivots = rref(m)
    pivot_set = set(pivots)
    free_cols = [j for j in range(m.cols) if j not in pivot_set]
    basis = []
    for fc in free_cols:
        v = 1 << fc
        for i, pc in enumerate(pivots):
            if (red.bits[i] >> fc) & 1:
                v |= 1 << pc
        basis.append(v)
    return basis


def solve(m: F2Matrix, rhs: int) -> int | None:
    """One solution of M x = rhs (rhs a bitset over rows), or None."""
    aug = m.augment(F2Matrix(m.rows, 1, tuple((rhs >> i) & 1 for i in range(m.rows))))
    red, pivots = rref(aug)
    if m.cols in pivots:
        return None
    x = 0
    for i, pc in enumerate(pivots):
        if (red.bits[i] >> m.cols) & 1:
            x |= 1 << pc
    return x


def row_space_contains(m: F2Matrix, vec: int) -> bool:
    base = rank(m)
    return rank(m.stack(F2Matrix(1, m.cols, (vec,)))) == base


def f2_rank_kernel(m: F2Matrix) -> Tuple[int, List[int]]:
    """Rank and right-kernel basis in one call."""
    red, pivots = rref(m)
    pivot_set = set(pivots)
    free_cols = [j for j in range(m.cols) if j not in pivot_set]
    basis = []
    for fc in free_cols:
        v = 1 << fc
        for i, pc in enumerate(pivots):
            if (red.bits[i] >> fc) & 1:
                v |= 1 << pc
        basis.append(v)
    return len(pivots), basis
