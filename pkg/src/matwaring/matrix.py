"""Dense integer matrices with exact arithmetic.

``IntMat`` is immutable and hashable.  Entries are Python ints, so nothing
ever overflows.  Most of the library works with square matrices, but the
block helpers need rectangular pieces, so the class allows any shape and
``dim`` insists on squareness where it matters.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import BadInput


class IntMat:
    __slots__ = ("rows", "nrows", "ncols", "_hash")

    def __init__(self, rows: Iterable[Iterable[int]]):
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        if not rows or not rows[0]:
            raise BadInput("matrix must have at least one row and column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise BadInput("ragged matrix rows")
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = width
        self._hash = None

    # construction ---------------------------------------------------------

    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None) -> "IntMat":
        ncols = nrows if ncols is None else ncols
        return cls([[0] * ncols for _ in range(nrows)])

    @classmethod
    def identity(cls, n: int) -> "IntMat":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, values: Sequence[int]) -> "IntMat":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[int]]) -> "IntMat":
        return cls(zip(*cols))

    # shape ------------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    @property
    def dim(self) -> int:
        if not self.is_square:
            raise BadInput(f"expected a square matrix, got {self.nrows}x{self.ncols}")
        return self.nrows

    # access -----------------------------------------------------------------

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.rows[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.rows)

    def entries(self) -> list[int]:
        return [x for r in self.rows for x in r]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> "IntMat":
        return IntMat(r[c0:c1] for r in self.rows[r0:r1])

    def with_entry(self, i: int, j: int, value: int) -> "IntMat":
        rows = self.tolist()
        rows[i][j] = value
        return IntMat(rows)

    # arithmetic -------------------------------------------------------------

    def _same_shape(self, other: "IntMat") -> None:
        if self.shape != other.shape:
            raise BadInput(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "IntMat") -> "IntMat":
        self._same_shape(other)
        return IntMat([a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows))

    def __sub__(self, other: "IntMat") -> "IntMat":
        self._same_shape(other)
        return IntMat([a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows))

    def __neg__(self) -> "IntMat":
        return IntMat([-a for a in r] for r in self.rows)

    def __mul__(self, k: int) -> "IntMat":
        if not isinstance(k, int):
            return NotImplemented
        return IntMat([k * a for a in r] for r in self.rows)

    __rmul__ = __mul__

    def __matmul__(self, other: "IntMat") -> "IntMat":
        if self.ncols != other.nrows:
            raise BadInput(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows))
        return IntMat(
            [sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows
        )

    def __pow__(self, k: int) -> "IntMat":
        if k < 0:
            raise BadInput("negative matrix powers are not supported")
        result = IntMat.identity(self.dim)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def square(self) -> "IntMat":
        return self @ self

    def matvec(self, v: Sequence[int]) -> list[int]:
        if len(v) != self.ncols:
            raise BadInput("vector length mismatch")
        return [sum(a * b for a, b in zip(r, v)) for r in self.rows]

    def transpose(self) -> "IntMat":
        return IntMat(zip(*self.rows))

    T = property(transpose)

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(self.dim))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    def max_abs(self) -> int:
        return max(abs(x) for r in self.rows for x in r)

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        n = self.dim
        a = self.tolist()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def inverse_fraction(self) -> list[list[Fraction]]:
        """Exact rational inverse by Gauss-Jordan; raises on singular input."""
        n = self.dim
        aug = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
               for i, r in enumerate(self.rows)]
        for k in range(n):
            piv = next((i for i in range(k, n) if aug[i][k] != 0), None)
            if piv is None:
                raise BadInput("singular matrix")
            aug[k], aug[piv] = aug[piv], aug[k]
            inv = 1 / aug[k][k]
            aug[k] = [x * inv for x in aug[k]]
            for i in range(n):
                if i != k and aug[i][k] != 0:
                    f = aug[i][k]
                    aug[i] = [x - f * y for x, y in zip(aug[i], aug[k])]
        return [r[n:] for r in aug]

    # protocol ---------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IntMat) and self.rows == other.rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __repr__(self) -> str:
        return f"IntMat({self.tolist()!r})"

    def __iter__(self):
        return iter(self.rows)
