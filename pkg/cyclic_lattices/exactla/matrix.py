from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

from sympy import Matrix

from ..core.exceptions import InvariantViolation

Vector = Tuple[int, ...]


@dataclass(frozen=True)
class IntMatrix:
    """
    Immutable matrix of arbitrary-precision integers.

    Vectors are columns and matrices act on the left, so the image of a map
    is spanned by the columns of its matrix.
    """
    rows: int
    cols: int
    entries: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise InvariantViolation(f"Negative matrix dimensions {self.rows}x{self.cols}")
        if len(self.entries) != self.rows:
            raise InvariantViolation(
                f"Matrix declares {self.rows} rows but carries {len(self.entries)}"
            )
        for row in self.entries:
            if len(row) != self.cols:
                raise InvariantViolation(
                    f"Matrix declares {self.cols} columns but a row has {len(row)}"
                )
            for value in row:
                if not isinstance(value, int) or isinstance(value, bool):
                    raise InvariantViolation(f"Matrix entry {value!r} is not an integer")

    # Construction

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int = None) -> "IntMatrix":
        data = tuple(tuple(row) for row in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(len(data), cols, data)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], height: int) -> "IntMatrix":
        columns = [tuple(column) for column in columns]
        data = tuple(tuple(column[i] for column in columns) for i in range(height))
        return cls(height, len(columns), data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def diagonal(cls, values: Sequence[int]) -> "IntMatrix":
        n = len(values)
        return cls(n, n, tuple(tuple(values[i] if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def column_vector(cls, values: Sequence[int]) -> "IntMatrix":
        return cls(len(values), 1, tuple((int(value),) for value in values))

    # Access

    def __getitem__(self, index: Tuple[int, int]) -> int:
        i, j = index
        return self.entries[i][j]

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> List[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def to_list(self) -> List[List[int]]:
        return [list(row) for row in self.entries]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    # Algebra

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise InvariantViolation(f"Cannot multiply {self.shape} by {other.shape}")
        other_columns = other.columns()
        data = tuple(
            tuple(sum(a * b for a, b in zip(row, column)) for column in other_columns)
            for row in self.entries
        )
        return IntMatrix(self.rows, other.cols, data)

    def apply(self, vector: Sequence[int]) -> Vector:
        if len(vector) != self.cols:
            raise InvariantViolation(f"Cannot apply {self.shape} matrix to a vector of length {len(vector)}")
        return tuple(sum(a * b for a, b in zip(row, vector)) for row in self.entries)

    def _combine(self, other: "IntMatrix", sign: int) -> "IntMatrix":
        if self.shape != other.shape:
            raise InvariantViolation(f"Shape mismatch {self.shape} vs {other.shape}")
        data = tuple(
            tuple(a + sign * b for a, b in zip(row, other_row))
            for row, other_row in zip(self.entries, other.entries)
        )
        return IntMatrix(self.rows, self.cols, data)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        return self._combine(other, 1)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self._combine(other, -1)

    def __neg__(self) -> "IntMatrix":
        return self.scale(-1)

    def scale(self, factor: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(tuple(factor * a for a in row) for row in self.entries))

    def __rmul__(self, factor: int) -> "IntMatrix":
        return self.scale(factor)

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else ((),) * self.cols)

    def power(self, k: int) -> "IntMatrix":
        if not self.is_square:
            raise InvariantViolation("Only square matrices have powers")
        if k < 0:
            return self.inverse_unimodular().power(-k)
        result = IntMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def polynomial(self, coefficients: Sequence[int]) -> "IntMatrix":
        """Evaluate sum(c_i * A^i) by Horner's rule (coefficients ascending)"""
        result = IntMatrix.zeros(self.rows, self.cols)
        identity = IntMatrix.identity(self.rows)
        for coefficient in reversed(coefficients):
            result = result @ self + identity.scale(coefficient)
        return result

    def is_zero(self) -> bool:
        return all(value == 0 for row in self.entries for value in row)

    def is_identity(self) -> bool:
        return self.is_square and self == IntMatrix.identity(self.rows)

    def commutes_with(self, other: "IntMatrix") -> bool:
        return self @ other == other @ self

    # Assembly

    def submatrix(self, row_indices: Iterable[int], col_indices: Iterable[int]) -> "IntMatrix":
        row_indices = list(row_indices)
        col_indices = list(col_indices)
        data = tuple(tuple(self.entries[i][j] for j in col_indices) for i in row_indices)
        return IntMatrix(len(row_indices), len(col_indices), data)

    def column_slice(self, start: int, stop: int = None) -> "IntMatrix":
        stop = self.cols if stop is None else stop
        return self.submatrix(range(self.rows), range(start, stop))

    def row_slice(self, start: int, stop: int = None) -> "IntMatrix":
        stop = self.rows if stop is None else stop
        return self.submatrix(range(start, stop), range(self.cols))

    @staticmethod
    def hstack(*blocks: "IntMatrix", rows: int = None) -> "IntMatrix":
        if not blocks:
            return IntMatrix.zeros(rows or 0, 0)
        height = blocks[0].rows
        if any(block.rows != height for block in blocks):
            raise InvariantViolation("hstack needs blocks with equal row counts")
        data = tuple(sum((block.entries[i] for block in blocks), ()) for i in range(height))
        return IntMatrix(height, sum(block.cols for block in blocks), data)

    @staticmethod
    def vstack(*blocks: "IntMatrix", cols: int = None) -> "IntMatrix":
        if not blocks:
            return IntMatrix.zeros(0, cols or 0)
        width = blocks[0].cols
        if any(block.cols != width for block in blocks):
            raise InvariantViolation("vstack needs blocks with equal column counts")
        data = sum((block.entries for block in blocks), ())
        return IntMatrix(sum(block.rows for block in blocks), width, data)

    @staticmethod
    def block_diagonal(*blocks: "IntMatrix") -> "IntMatrix":
        rows = sum(block.rows for block in blocks)
        cols = sum(block.cols for block in blocks)
        data = []
        offset = 0
        for block in blocks:
            for row in block.entries:
                data.append((0,) * offset + row + (0,) * (cols - offset - block.cols))
            offset += block.cols
        return IntMatrix(rows, cols, tuple(data))

    def kron(self, other: "IntMatrix") -> "IntMatrix":
        data = tuple(
            tuple(a * b for a in row for b in other_row)
            for row in self.entries
            for other_row in other.entries
        )
        return IntMatrix(self.rows * other.rows, self.cols * other.cols, data)

    # Invariants

    def det(self) -> int:
        """Determinant by sympy's fraction-free Bareiss elimination"""
        if not self.is_square:
            raise InvariantViolation("Determinant of a non-square matrix")
        if not self.rows:
            return 1
        return int(Matrix(self.to_list()).det(method="bareiss"))

    def rank(self) -> int:
        from .normal_forms import smith
        return smith(self).rank

    def inverse_unimodular(self) -> "IntMatrix":
        """Inverse over Z; fails unless det is +1 or -1"""
        from .normal_forms import smith
        decomposition = smith(self)
        if not self.is_square or any(
            decomposition.D[i, i] != 1 for i in range(self.rows)
        ):
            raise InvariantViolation("Matrix is not invertible over the integers")
        # U A V = I  =>  A^-1 = V U
        return decomposition.V @ decomposition.U

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(str(v) for v in row) + "]" for row in self.entries) + "]"
