"""Exact rational matrices: parsing, dense storage, fraction-free rank."""

from fractions import Fraction
from math import lcm


def parse_rational(text):
    """Parse "p/q" or "p" into a Fraction.  Rejects anything else."""
    s = text.strip()
    if "/" in s:
        num, _, den = s.partition("/")
        if not _is_int(num) or not _is_int(den):
            raise ValueError(f"not a rational literal: {text!r}")
        d = int(den)
        if d == 0:
            raise ValueError(f"zero denominator: {text!r}")
        return Fraction(int(num), d)
    if not _is_int(s):
        raise ValueError(f"not a rational literal: {text!r}")
    return Fraction(int(s))


def _is_int(s):
    s = s.strip()
    if s and s[0] in "+-":
        s = s[1:]
    return s.isdigit()


def format_rational(q):
    """Render a Fraction as "p/q", or "p" when the denominator is 1."""
    return str(Fraction(q))


class _DenseMatrix:
    """Row-major dense matrix.  Values are immutable after construction."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries):
        entries = tuple(entries)
        if len(entries) != rows * cols:
            raise ValueError(
                f"need {rows * cols} entries for a {rows}x{cols} matrix, got {len(entries)}"
            )
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, rows_data):
        rows = len(rows_data)
        cols = len(rows_data[0]) if rows else 0
        for r in rows_data:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(rows, cols, [x for r in rows_data for x in r])

    def at(self, i, j):
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError((i, j))
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def row_list(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self):
        return type(self)(
            self.cols,
            self.rows,
            [self.at(i, j) for j in range(self.cols) for i in range(self.rows)],
        )

    def column_submatrix(self, cols):
        """Matrix restricted to the given column indices, in the given order."""
        cols = list(cols)
        return type(self)(
            self.rows, len(cols), [self.at(i, j) for i in range(self.rows) for j in cols]
        )

    def __eq__(self, other):
        return (
            type(self) is type(other)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((type(self).__name__, self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in self.row(i)) for i in range(self.rows))
        return f"{type(self).__name__}({self.rows}x{self.cols}: {body})"


class RatMatrix(_DenseMatrix):
    """Dense matrix over Fraction."""

    def __init__(self, rows, cols, entries):
        super().__init__(rows, cols, [Fraction(x) for x in entries])

    @classmethod
    def identity(cls, n):
        return cls(n, n, [Fraction(int(i == j)) for i in range(n) for j in range(n)])


class IntMatrix(_DenseMatrix):
    """Dense matrix over arbitrary-precision integers."""

    def __init__(self, rows, cols, entries):
        ints = []
        for x in entries:
            if not isinstance(x, int):
                raise ValueError(f"integer entry expected, got {x!r}")
            ints.append(x)
        super().__init__(rows, cols, ints)

    @classmethod
    def identity(cls, n):
        return cls(n, n, [int(i == j) for i in range(n) for j in range(n)])

    @classmethod
    def diagonal(cls, diag):
        n = len(diag)
        return cls(n, n, [diag[i] if i == j else 0 for i in range(n) for j in range(n)])


def rational_rank(m):
    """Rank of a RatMatrix over Q, by fraction-free (Bareiss) elimination.

    A matrix with zero rows or zero columns has rank 0.
    """
    if m.rows == 0 or m.cols == 0:
        return 0
    # Clear denominators row by row; rank is invariant under row scaling.
    work = []
    for i in range(m.rows):
        row = m.row(i)
        scale = lcm(*(abs(x.denominator) for x in row)) if row else 1
        work.append([int(x * scale) for x in row])
    rank = 0
    prev = 1
    col = 0
    nrows, ncols = m.rows, m.cols
    while rank < nrows and col < ncols:
        pivot_row = next((r for r in range(rank, nrows) if work[r][col] != 0), None)
        if pivot_row is None:
            col += 1
            continue
        work[rank], work[pivot_row] = work[pivot_row], work[rank]
        piv = work[rank][col]
        for r in range(rank + 1, nrows):
            factor = work[r][col]
            for c in range(col, ncols):
                work[r][c] = (piv * work[r][c] - factor * work[rank][c]) // prev
        prev = piv
        rank += 1
        col += 1
    return rank
