"""Exact dense linear algebra over the scalar fields.

Rank and kernels over the rationals go through fraction-free (Bareiss)
elimination on denominator-cleared integer rows, which keeps intermediate
entries polynomially bounded; prime fields and quadratic extensions use
plain Gauss elimination.  Everything returns exact values; matrices are
immutable after construction.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .fields import RationalField


class Matrix:
    """Immutable rectangular matrix over a fixed field."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field, rows, ncols: int | None = None):
        rows = [tuple(field.of(x) for x in row) for row in rows]
        if rows:
            ncols = len(rows[0])
            if any(len(r) != ncols for r in rows):
                raise ValueError("ragged rows")
        elif ncols is None:
            ncols = 0
        self.field = field
        self.nrows = len(rows)
        self.ncols = ncols
        self.rows = tuple(rows)

    @classmethod
    def identity(cls, field, n: int) -> "Matrix":
        one, zero = field.one, field.zero
        return cls(field, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, field, nrows: int, ncols: int) -> "Matrix":
        zero = field.zero
        m = cls(field, [[zero] * ncols for _ in range(nrows)])
        if nrows == 0:
            m = cls(field, [], ncols=ncols)
        return m

    @classmethod
    def from_cols(cls, field, cols, nrows: int | None = None) -> "Matrix":
        cols = [tuple(c) for c in cols]
        if cols:
            nrows = len(cols[0])
            return cls(field, [[cols[j][i] for j in range(len(cols))] for i in range(nrows)])
        if nrows is None:
            raise ValueError("empty column list needs an explicit nrows")
        return cls(field, [()] * nrows, ncols=0)

    def entry(self, i: int, j: int):
        return self.rows[i][j]

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def row(self, i: int) -> tuple:
        return self.rows[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def cols(self) -> list[tuple]:
        return [self.col(j) for j in range(self.ncols)]

    def transpose(self) -> "Matrix":
        return Matrix(self.field, [self.col(j) for j in range(self.ncols)], ncols=self.nrows)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.field, self.nrows, self.ncols, self.rows))

    def __add__(self, other: "Matrix") -> "Matrix":
        self._shape_check(other)
        return Matrix(
            self.field,
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)],
            ncols=self.ncols,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._shape_check(other)
        return Matrix(
            self.field,
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)],
            ncols=self.ncols,
        )

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, [[-a for a in r] for r in self.rows], ncols=self.ncols)

    def scale(self, c) -> "Matrix":
        c = self.field.of(c)
        return Matrix(self.field, [[c * a for a in r] for r in self.rows], ncols=self.ncols)

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            return self.scale(other)
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.nrows}x{self.ncols} * {other.nrows}x{other.ncols}")
        ocols = other.cols()
        rows = [
            [_dot(r, c, self.field) for c in ocols]
            for r in self.rows
        ]
        return Matrix(self.field, rows, ncols=other.ncols)

    def __rmul__(self, other):
        return self.scale(other)

    def apply(self, vec) -> tuple:
        """Matrix times column vector (given as an iterable)."""
        vec = tuple(self.field.of(x) for x in vec)
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        return tuple(_dot(r, vec, self.field) for r in self.rows)

    def hstack(self, other: "Matrix") -> "Matrix":
        if other.nrows != self.nrows:
            raise ValueError("row count mismatch in hstack")
        return Matrix(
            self.field,
            [r1 + r2 for r1, r2 in zip(self.rows, other.rows)],
            ncols=self.ncols + other.ncols,
        )

    def vstack(self, other: "Matrix") -> "Matrix":
        if other.ncols != self.ncols:
            raise ValueError("column count mismatch in vstack")
        return Matrix(self.field, list(self.rows) + list(other.rows), ncols=self.ncols)

    def _shape_check(self, other: "Matrix"):
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise ValueError("shape mismatch")
        if self.field != other.field:
            raise ValueError("field mismatch")

    # -- elimination ----------------------------------------------------

    def _echelon(self):
        """Row echelon data: (rows, pivot column list, divide).

        Over QQ the rows come back integer valued (Bareiss) and ``divide``
        is exact Fraction division; over other fields plain elimination is
        used.  Only the row space matters to callers.
        """
        if isinstance(self.field, RationalField):
            int_rows = [_clear_denominators(r) for r in self.rows]
            ech, pivots = _bareiss_echelon(int_rows, self.ncols)
            return ech, pivots, lambda a, b: Fraction(a, b) if isinstance(a, int) else a / b
        ech, pivots = _field_echelon([list(r) for r in self.rows], self.ncols)
        return ech, pivots, lambda a, b: a / b

    def rank(self) -> int:
        return len(self._echelon()[1])

    def kernel_basis(self) -> "Matrix":
        """Columns form a basis of the right null space.

        rank + (number of returned columns) == ncols, always.
        """
        ech, pivots, div = self._echelon()
        free = [c for c in range(self.ncols) if c not in set(pivots)]
        zero, one = self.field.zero, self.field.one
        cols = []
        for f in free:
            x = [zero] * self.ncols
            x[f] = one
            # back-substitute pivot coordinates, bottom row first
            for r in range(len(pivots) - 1, -1, -1):
                pc = pivots[r]
                s = zero
                for c in range(pc + 1, self.ncols):
                    if x[c] != zero:
                        s = s + self.field.of(div(ech[r][c], ech[r][pc])) * x[c]
                x[pc] = -s
            cols.append(tuple(x))
        return Matrix.from_cols(self.field, cols, nrows=self.ncols)

    def det(self):
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        n = self.nrows
        if n == 0:
            return self.field.one
        if isinstance(self.field, RationalField):
            scale = Fraction(1)
            int_rows = []
            for r in self.rows:
                lcm = 1
                for x in r:
                    lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
                scale *= lcm
                int_rows.append([int(x * lcm) for x in r])
            d, sign = _bareiss_det(int_rows)
            return Fraction(sign * d) / scale
        rows = [list(r) for r in self.rows]
        det = self.field.one
        for c in range(n):
            piv = None
            for i in range(c, n):
                if rows[i][c]:
                    piv = i
                    break
            if piv is None:
                return self.field.zero
            if piv != c:
                rows[c], rows[piv] = rows[piv], rows[c]
                det = -det
            det = det * rows[c][c]
            inv = self.field.one / rows[c][c]
            for i in range(c + 1, n):
                if rows[i][c]:
                    f = rows[i][c] * inv
                    for j in range(c, n):
                        rows[i][j] = rows[i][j] - f * rows[c][j]
        return det

    def inverse(self) -> "Matrix":
        if self.nrows != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        n = self.nrows
        aug = [list(r) + [self.field.one if i == j else self.field.zero for j in range(n)]
               for i, r in enumerate(self.rows)]
        for c in range(n):
            piv = None
            for i in range(c, n):
                if aug[i][c]:
                    piv = i
                    break
            if piv is None:
                raise ValueError("matrix is singular")
            aug[c], aug[piv] = aug[piv], aug[c]
            inv = self.field.one / aug[c][c]
            aug[c] = [x * inv for x in aug[c]]
            for i in range(n):
                if i != c and aug[i][c]:
                    f = aug[i][c]
                    aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
        return Matrix(self.field, [r[n:] for r in aug], ncols=n)

    def is_zero(self) -> bool:
        return all(not x for r in self.rows for x in r)

    def __repr__(self) -> str:
        if self.nrows == 0 or self.ncols == 0:
            return f"Matrix({self.field!r}, {self.nrows}x{self.ncols})"
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"Matrix({self.field!r}, [{body}])"


def _dot(u, v, field):
    s = field.zero
    for a, b in zip(u, v):
        s = s + a * b
    return s


def _clear_denominators(row) -> list[int]:
    lcm = 1
    for x in row:
        lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    return [int(x * lcm) for x in row]


def _bareiss_echelon(rows, ncols):
    """Fraction-free row echelon form of integer rows; exact divisions only."""
    rows = [list(r) for r in rows]
    m = len(rows)
    pivots = []
    r = 0
    prev = 1
    for c in range(ncols):
        piv = None
        for i in range(r, m):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        pc = rows[r][c]
        for i in range(r + 1, m):
            ric = rows[i][c]
            for j in range(c, ncols):
                rows[i][j] = (pc * rows[i][j] - ric * rows[r][j]) // prev
        prev = pc
        pivots.append(c)
        r += 1
        if r == m:
            break
    return rows[:r], pivots


def _bareiss_det(rows) -> tuple[int, int]:
    """(|minor chain value|, sign) of a square integer matrix via Bareiss."""
    n = len(rows)
    sign = 1
    prev = 1
    for c in range(n - 1):
        piv = None
        for i in range(c, n):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            return 0, 1
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            sign = -sign
        pc = rows[c][c]
        for i in range(c + 1, n):
            ric = rows[i][c]
            for j in range(c, n):
                rows[i][j] = (pc * rows[i][j] - ric * rows[c][j]) // prev
        prev = pc
    return rows[n - 1][n - 1], sign


def _field_echelon(rows, ncols):
    m = len(rows)
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, m):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(r + 1, m):
            if rows[i][c]:
                f = rows[i][c] / rows[r][c]
                for j in range(c, ncols):
                    rows[i][j] = rows[i][j] - f * rows[r][j]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return rows[:r], pivots


# -- subspaces (column spans) -------------------------------------------


def column_space_basis(m: Matrix) -> Matrix:
    """The original columns of m sitting at the pivot positions."""
    _, pivots, _ = m._echelon()
    return Matrix.from_cols(m.field, [m.col(j) for j in pivots], nrows=m.nrows)


def span_contains(space: Matrix, vec) -> bool:
    v = Matrix.from_cols(space.field, [tuple(space.field.of(x) for x in vec)])
    if v.nrows != space.nrows:
        raise ValueError("ambient mismatch")
    return space.hstack(v).rank() == space.rank()


def span_equal(a: Matrix, b: Matrix) -> bool:
    if a.nrows != b.nrows:
        raise ValueError("ambient mismatch")
    ra, rb = a.rank(), b.rank()
    return ra == rb == a.hstack(b).rank()


def sum_basis(a: Matrix, b: Matrix) -> Matrix:
    if a.nrows != b.nrows:
        raise ValueError("ambient mismatch")
    return column_space_basis(a.hstack(b))


def intersect_subspaces(a: Matrix, b: Matrix) -> Matrix:
    """Basis of (column span of a) intersect (column span of b).

    Solves a.x = b.y: kernel vectors (x; y) of [a | -b] are mapped through
    a, then pruned to an independent set.  dim satisfies
    dim(a) + dim(b) - dim(a + b).
    """
    if a.field != b.field:
        raise ValueError("field mismatch")
    if a.nrows != b.nrows:
        raise ValueError("ambient mismatch")
    if a.ncols == 0 or b.ncols == 0:
        return Matrix.from_cols(a.field, [], nrows=a.nrows)
    ker = a.hstack(-b).kernel_basis()
    cand = []
    for j in range(ker.ncols):
        x = ker.col(j)[: a.ncols]
        cand.append(a.apply(x))
    return column_space_basis(Matrix.from_cols(a.field, cand, nrows=a.nrows))
