"""Dense linear algebra over the two-element field.

Rows are bit-packed into Python integers (bit j of a row int is the entry
in column j), so row operations are single word-level XORs.  All
operations allocate fresh outputs; matrices are safe to share between
workers.

Empty matrices follow the conventions rank = 0, det(0x0) = 1, and
inverse(0x0) = 0x0, so the 2-Selmer rank of 1 and 2 falls out of the
general formula.
"""

from __future__ import annotations

from typing import Sequence


class ShapeError(ValueError):
    """Operand shapes are incompatible."""


class SingularMatrixError(ValueError):
    """Matrix inversion attempted on a singular matrix."""

    def __init__(self, msg: str, rank: int):
        super().__init__(msg)
        self.rank = rank


class SchurNotApplicableError(ValueError):
    """Neither diagonal block is invertible; fall back to a direct determinant."""


class F2Matrix:
    """A rows x cols matrix over GF(2) with bit-packed integer rows."""

    __slots__ = ("rows", "cols", "bits")

    def __init__(self, rows: int, cols: int, bits: Sequence[int] | None = None):
        if rows < 0 or cols < 0:
            raise ShapeError(f"negative dimensions {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        if bits is None:
            self.bits = [0] * rows
        else:
            if len(bits) != rows:
                raise ShapeError(f"expected {rows} row words, got {len(bits)}")
            mask = (1 << cols) - 1
            self.bits = [b & mask for b in bits]

    # -- constructors ------------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> F2Matrix:
        return cls(rows, cols)

    @classmethod
    def identity(cls, t: int) -> F2Matrix:
        return cls(t, t, [1 << i for i in range(t)])

    @classmethod
    def ones(cls, rows: int, cols: int) -> F2Matrix:
        full = (1 << cols) - 1
        return cls(rows, cols, [full] * rows)

    @classmethod
    def from_rows(cls, entries: Sequence[Sequence[int]]) -> F2Matrix:
        rows = len(entries)
        cols = len(entries[0]) if rows else 0
        bits = []
        for row in entries:
            if len(row) != cols:
                raise ShapeError("ragged row lengths")
            word = 0
            for j, v in enumerate(row):
                if v % 2:
                    word |= 1 << j
            bits.append(word)
        return cls(rows, cols, bits)

    # -- basics ------------------------------------------------------------

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def get(self, i: int, j: int) -> int:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"({i}, {j}) out of range for {self.rows}x{self.cols}")
        return (self.bits[i] >> j) & 1

    def copy(self) -> F2Matrix:
        return F2Matrix(self.rows, self.cols, self.bits)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, F2Matrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.bits == other.bits
        )

    def to_bitstrings(self) -> list[str]:
        """Debug serialization: one '0'/'1' string per row, column 0 first."""
        return [
            "".join("1" if (word >> j) & 1 else "0" for j in range(self.cols))
            for word in self.bits
        ]

    def __str__(self) -> str:
        return "\n".join(self.to_bitstrings())

    def __repr__(self) -> str:
        return f"F2Matrix({self.rows}x{self.cols})"

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: F2Matrix) -> F2Matrix:
        if self.rows != other.rows or self.cols != other.cols:
            raise ShapeError(
                f"cannot add {self.rows}x{self.cols} and {other.rows}x{other.cols}"
            )
        return F2Matrix(self.rows, self.cols, [a ^ b for a, b in zip(self.bits, other.bits)])

    def __matmul__(self, other: F2Matrix) -> F2Matrix:
        if self.cols != other.rows:
            raise ShapeError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        out = []
        for word in self.bits:
            acc = 0
            x = word
            while x:
                k = (x & -x).bit_length() - 1
                acc ^= other.bits[k]
                x &= x - 1
            out.append(acc)
        return F2Matrix(self.rows, other.cols, out)

    def transpose(self) -> F2Matrix:
        bits = []
        for j in range(self.cols):
            col = 1 << j
            acc = 0
            for i in range(self.rows):
                if self.bits[i] & col:
                    acc |= 1 << i
            bits.append(acc)
        return F2Matrix(self.cols, self.rows, bits)

    # -- elimination --------------------------------------------------------

    def rank(self) -> int:
        """Rank over GF(2) by in-place Gaussian elimination on a copy;
        pivot = first nonzero entry in column scan order."""
        work = list(self.bits)
        pivot_row = 0
        for col in range(self.cols):
            if pivot_row == len(work):
                break
            bit = 1 << col
            pivot = next((r for r in range(pivot_row, len(work)) if work[r] & bit), None)
            if pivot is None:
                continue
            work[pivot_row], work[pivot] = work[pivot], work[pivot_row]
            prow = work[pivot_row]
            for r in range(pivot_row + 1, len(work)):
                if work[r] & bit:
                    work[r] ^= prow
            pivot_row += 1
        return pivot_row

    def det(self) -> int:
        """Determinant over GF(2): 1 iff full rank.  det of the 0x0 matrix is 1."""
        if not self.is_square:
            raise ShapeError(f"determinant needs a square matrix, got {self.rows}x{self.cols}")
        return 1 if self.rank() == self.rows else 0

    def inverse(self) -> F2Matrix:
        """Inverse by Gauss-Jordan on the augmented matrix.

        Raises SingularMatrixError carrying the attained rank when no
        inverse exists.
        """
        if not self.is_square:
            raise ShapeError(f"inverse needs a square matrix, got {self.rows}x{self.cols}")
        t = self.rows
        work = [self.bits[i] | (1 << (t + i)) for i in range(t)]
        for col in range(t):
            bit = 1 << col
            pivot = next((r for r in range(col, t) if work[r] & bit), None)
            if pivot is None:
                raise SingularMatrixError(
                    f"matrix of rank {self.rank()} < {t} is not invertible", self.rank()
                )
            work[col], work[pivot] = work[pivot], work[col]
            prow = work[col]
            for r in range(t):
                if r != col and work[r] & bit:
                    work[r] ^= prow
        return F2Matrix(t, t, [w >> t for w in work])


BlockGrid = Sequence[Sequence[F2Matrix]]


def block_compose(layout: BlockGrid) -> F2Matrix:
    """Assemble a flat matrix from a grid of blocks.

    Blocks in the same grid row must share a row count and blocks in the
    same grid column a column count.
    """
    if not layout or not layout[0]:
        raise ShapeError("block layout must be non-empty")
    ncols_grid = len(layout[0])
    if any(len(row) != ncols_grid for row in layout):
        raise ShapeError("block layout must be rectangular")
    heights = [row[0].rows for row in layout]
    widths = [blk.cols for blk in layout[0]]
    for i, row in enumerate(layout):
        for j, blk in enumerate(row):
            if blk.rows != heights[i] or blk.cols != widths[j]:
                raise ShapeError(
                    f"block ({i}, {j}) is {blk.rows}x{blk.cols}, "
                    f"expected {heights[i]}x{widths[j]}"
                )
    offsets = [0]
    for w in widths:
        offsets.append(offsets[-1] + w)
    bits = []
    for i, row in enumerate(layout):
        for r in range(heights[i]):
            word = 0
            for j, blk in enumerate(row):
                word |= blk.bits[r] << offsets[j]
            bits.append(word)
    return F2Matrix(sum(heights), offsets[-1], bits)


def schur_det(A: F2Matrix, B: F2Matrix, C: F2Matrix, D: F2Matrix) -> int:
    """Determinant of [[A, B], [C, D]] through a Schur complement.

    Uses det(A) * det(D + C A^-1 B) when A is invertible, otherwise
    det(D) * det(A + B D^-1 C); raises SchurNotApplicableError when both
    diagonal blocks are singular (the caller should fall back to a
    determinant of the composed matrix).  Addition is subtraction here.
    """
    if not A.is_square or not D.is_square:
        raise ShapeError("A and D must be square")
    if A.rows != B.rows or D.rows != C.rows or A.cols != C.cols or D.cols != B.cols:
        raise ShapeError("block shapes are inconsistent")
    try:
        a_inv = A.inverse()
    except SingularMatrixError:
        try:
            d_inv = D.inverse()
        except SingularMatrixError:
            raise SchurNotApplicableError(
                "both diagonal blocks are singular"
            ) from None
        return D.det() * (A + B @ d_inv @ C).det()
    return A.det() * (D + C @ a_inv @ B).det()
