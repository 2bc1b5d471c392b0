"""Linear algebra over capped-precision Q2 scalars.

Gaussian elimination with minimal-valuation pivoting; any rank decision that
rests on an entry which is merely zero-to-poor-precision raises
:class:`PrecisionError` rather than guessing.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from .gf2 import F2Matrix, f2_rank_kernel
from .qp2 import EXACT, PrecisionError, Qp2

Row = List[Qp2]


def _pivot_index(entries: Sequence[Qp2]) -> Optional[int]:
    best, best_v = None, None
    for idx, x in enumerate(entries):
        if x.u == 0:
            continue
        if best_v is None or x.v < best_v:
            best, best_v = idx, x.v
    return best


def solve_square(rows: List[Row], rhs: Row, zero_floor: int = 8) -> Row:
    """Solve A x = b for square A; raises unless A is certifiably invertible."""
    n = len(rows)
    a = [row[:] + [rhs[i]] for i, row in enumerate(rows)]
    for col in range(n):
        piv_row, piv_v = None, None
        for r in range(col, n):
            x = a[r][col]
            if x.u != 0 and (piv_v is None or x.v < piv_v):
                piv_row, piv_v = r, x.v
        if piv_row is None:
            floors = [a[r][col].v for r in range(col, n)]
            if min(floors, default=EXACT) < zero_floor:
                raise PrecisionError("pivot column zero only to low precision")
            raise PrecisionError("matrix not invertible to working precision")
        a[col], a[piv_row] = a[piv_row], a[col]
        inv = a[col][col].inverse()
        for r in range(n):
            if r != col and a[r][col].u != 0:
                factor = a[r][col] * inv
                for c in range(col, n + 1):
                    a[r][c] = a[r][c] - factor * a[col][c]
    return [a[i][n] * a[i][i].inverse() for i in range(n)]


def invert_matrix(rows: List[Row]) -> List[Row]:
    """Matrix inverse by Gauss-Jordan with min-valuation pivoting."""
    n = len(rows)
    one = Qp2.from_int(1, 4096)
    zero = Qp2.zero()
    a = [rows[i][:] + [one if j == i else zero for j in range(n)] for i in range(n)]
    for col in range(n):
        piv_row, piv_v = None, None
        for r in range(col, n):
            x = a[r][col]
            if x.u != 0 and (piv_v is None or x.v < piv_v):
                piv_row, piv_v = r, x.v
        if piv_row is None:
            raise PrecisionError("matrix not certifiably invertible")
        a[col], a[piv_row] = a[piv_row], a[col]
        inv = a[col][col].inverse()
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col].u != 0:
                f = a[r][col]
                a[r] = [a[r][c] - f * a[col][c] for c in range(2 * n)]
    return [row[n:] for row in a]


def mat_vec(rows: List[Row], vec: Row) -> Row:
    out = []
    for row in rows:
        acc = Qp2.zero()
        for a, b in zip(row, vec):
            if a.u != 0 and b.u != 0:
                acc = acc + a * b
            else:
                acc = acc + a * b  # keep zero-precision bookkeeping
        out.append(acc)
    return out


def determinant(rows: List[Row]) -> Qp2:
    n = len(rows)
    a = [row[:] for row in rows]
    det = Qp2.from_int(1, 4096)
    for col in range(n):
        piv_row, piv_v = None, None
        for r in range(col, n):
            x = a[r][col]
            if x.u != 0 and (piv_v is None or x.v < piv_v):
                piv_row, piv_v = r, x.v
        if piv_row is None:
            floor = min(a[r][col].v for r in range(col, n))
            return Qp2.zero(min(floor, EXACT))
        if piv_row != col:
            a[col], a[piv_row] = a[piv_row], a[col]
            det = -det
        det = det * a[col][col]
        inv = a[col][col].inverse()
        for r in range(col + 1, n):
            if a[r][col].u != 0:
                f = a[r][col] * inv
                for c in range(col, n):
                    a[r][c] = a[r][c] - f * a[col][c]
    return det


class SpanSolver:
    """Incremental row reduction with span-membership and exact coordinates.

    Each stored echelon row carries the combination of originally inserted
    vectors that produced it, so :meth:`coordinates` can express a member of
    the span over the inserted vectors.
    """

    def __init__(self, dim: int, zero_floor: int = 8) -> None:
        self.dim = dim
        self.zero_floor = zero_floor
        self.rows: List[Row] = []
        self.tails: List[Row] = []
        self.pivots: List[int] = []
        self.count = 0

    def _pad(self, tail: Row) -> Row:
        return tail + [Qp2.zero()] * (self.count - len(tail))

    def _reduce(self, vec: Row, tail: Row) -> Tuple[Row, Row]:
        vec = vec[:]
        tail = self._pad(tail)
        for row, rtail, p in zip(self.rows, self.tails, self.pivots):
            x = vec[p]
            if x.u != 0:
                f = x * row[p].inverse()
                for i in range(self.dim):
                    vec[i] = vec[i] - f * row[i]
                rt = self._pad(rtail)
                for i in range(self.count):
                    tail[i] = tail[i] - f * rt[i]
        return vec, tail

    def _certify_zero(self, vec: Row) -> bool:
        uncertain = False
        for x in vec:
            if x.u != 0:
                return False
            if x.v < self.zero_floor:
                uncertain = True
        if uncertain:
            raise PrecisionError("residual vanishes only to low precision")
        return True

    def insert(self, vec: Row) -> bool:
        """Insert a vector; returns True if it enlarged the span."""
        self.count += 1
        tail = [Qp2.zero()] * (self.count - 1) + [Qp2.from_int(1, 4096)]
        red, rtail = self._reduce(vec, tail)
        p = _pivot_index(red)
        if p is None:
            self._certify_zero(red)
            return False
        self.rows.append(red)
        self.tails.append(rtail)
        self.pivots.append(p)
        return True

    def rank(self) -> int:
        return len(self.rows)

    def coordinates(self, vec: Row) -> Optional[Row]:
        """Coordinates of vec over the inserted vectors, or None if outside."""
        red, rtail = self._reduce(vec, [Qp2.zero()] * self.count)
        if _pivot_index(red) is not None:
            return None
        self._certify_zero(red)
        return [-c for c in rtail]

    def contains(self, vec: Row) -> bool:
        return self.coordinates(vec) is not None


def saturate_lattice(vectors: List[Row]) -> List[Row]:
    """Basis of span_Q2(vectors) ∩ Z2^n for integral input vectors.

    Repeatedly halves unimodular-kernel combinations until the mod-2
    reductions of the basis vectors are independent, which certifies
    2-saturation inside Z2^n.
    """

    def primitive(v: Row) -> Row:
        m = min((x.v for x in v if x.u != 0), default=None)
        if m is None:
            raise PrecisionError("zero vector in lattice saturation")
        return [x.shift(-m) for x in v] if m > 0 else v

    basis = [primitive(v[:]) for v in vectors]
    n = len(basis[0])
    while True:
        # matrix over F2 whose columns are the basis vectors mod 2
        rows_bits = []
        for i in range(n):
            b = 0
            for r, v in enumerate(basis):
                if v[i].u != 0 and v[i].v == 0:
                    b |= (v[i].u & 1) << r
            rows_bits.append(b)
        _, comb_kernel = f2_rank_kernel(F2Matrix.from_bitrows(rows_bits, len(basis)))
        if not comb_kernel:
            return basis
        c = comb_kernel[0]
        idxs = [i for i in range(len(basis)) if (c >> i) & 1]
        acc = None
        for i in idxs:
            acc = basis[i][:] if acc is None else [a + b for a, b in zip(acc, basis[i])]
        acc = [x.shift(-1) for x in acc]
        for x in acc:
            if x.u != 0 and x.v < 0:
                raise PrecisionError("saturation produced a non-integral vector")
        basis[idxs[-1]] = primitive(acc)
