"""Smith and Hermite forms, kernels, integer solving and quotient structure"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from sympy import Matrix, zeros
from sympy.matrices.normalforms import hermite_normal_form as sympy_hermite_normal_form

from ..core.exceptions import CoordinateError, InvariantViolation, NotNilpotent, NotTorsion
from .abelian import AbelianInvariants
from .matrix import IntMatrix, Vector

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SmithDecomposition:
    """U * A * V = D with U, V unimodular and D diagonal with d_1 | d_2 | ..."""
    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> Tuple[int, ...]:
        return tuple(self.D[i, i] for i in range(min(self.D.rows, self.D.cols)))

    @property
    def rank(self) -> int:
        return sum(1 for value in self.diagonal if value != 0)


def _pick_pivot(d: List[List[int]], t: int) -> Optional[Tuple[int, int]]:
    # smallest nonzero absolute value, ties by lowest (row, column)
    best = None
    for i in range(t, len(d)):
        row = d[i]
        for j in range(t, len(row)):
            value = row[j]
            if value and (best is None or abs(value) < best[0]):
                best = (abs(value), i, j)
                if best[0] == 1:
                    return i, j
    return None if best is None else (best[1], best[2])


@lru_cache(maxsize=4096)
def smith(a: IntMatrix) -> SmithDecomposition:
    """Smith normal form with unimodular transforms"""
    m, n = a.rows, a.cols
    d = a.to_list()
    u = IntMatrix.identity(m).to_list()
    v = IntMatrix.identity(n).to_list()

    def swap_rows(i, k):
        d[i], d[k] = d[k], d[i]
        u[i], u[k] = u[k], u[i]

    def swap_cols(j, k):
        for row in d:
            row[j], row[k] = row[k], row[j]
        for row in v:
            row[j], row[k] = row[k], row[j]

    def add_row(target, source, factor):
        # row_target += factor * row_source
        d[target] = [x + factor * y for x, y in zip(d[target], d[source])]
        u[target] = [x + factor * y for x, y in zip(u[target], u[source])]

    def add_col(target, source, factor):
        for row in d:
            row[target] += factor * row[source]
        for row in v:
            row[target] += factor * row[source]

    t = 0
    while t < min(m, n):
        pivot = _pick_pivot(d, t)
        if pivot is None:
            break
        while True:
            i, j = pivot
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            p = d[t][t]
            dirty = False
            for i in range(t + 1, m):
                if d[i][t]:
                    add_row(i, t, -(d[i][t] // p))
                    dirty = dirty or d[i][t] != 0
            for j in range(t + 1, n):
                if d[t][j]:
                    add_col(j, t, -(d[t][j] // p))
                    dirty = dirty or d[t][j] != 0
            if not dirty:
                offender = next(
                    (i for i in range(t + 1, m) for j in range(t + 1, n) if d[i][j] % p),
                    None,
                )
                if offender is None:
                    break
                add_row(t, offender, 1)
            pivot = _pick_pivot_cross(d, t)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
        t += 1

    return SmithDecomposition(
        U=IntMatrix.from_rows(u, cols=m),
        D=IntMatrix.from_rows(d, cols=n),
        V=IntMatrix.from_rows(v, cols=n),
    )


def _pick_pivot_cross(d: List[List[int]], t: int) -> Tuple[int, int]:
    # smallest nonzero entry of row t and column t, ties by lowest index
    best = (abs(d[t][t]), t, t) if d[t][t] else None
    for i in range(t + 1, len(d)):
        value = d[i][t]
        if value and (best is None or abs(value) < best[0]):
            best = (abs(value), i, t)
    for j in range(t + 1, len(d[t])):
        value = d[t][j]
        if value and (best is None or abs(value) < best[0]):
            best = (abs(value), t, j)
    return best[1], best[2]


def hermite_normal_form(a: IntMatrix) -> IntMatrix:
    """
    Column-style Hermite normal form of the column lattice of a, zero columns dropped.

    Pivots are positive and sit lowest in the rightmost columns; entries to
    the right of a pivot are reduced into [0, pivot).
    """
    if not a.rows or not a.cols:
        return IntMatrix.zeros(a.rows, 0)
    # at least as many columns as rows, so every row gets a pivot attempt
    padded = Matrix(a.to_list()).row_join(zeros(a.rows, a.rows))
    form = sympy_hermite_normal_form(padded)
    columns = [tuple(int(value) for value in form.col(j)) for j in range(form.cols)]
    return IntMatrix.from_columns(columns, height=a.rows)


def canonical_basis(columns: IntMatrix) -> IntMatrix:
    """Canonical column basis of the lattice spanned by the given columns"""
    return hermite_normal_form(columns) if columns.cols else columns


def kernel_basis(a: IntMatrix) -> IntMatrix:
    """Saturated Z-basis of {x : a x = 0}, as columns in canonical form"""
    decomposition = smith(a)
    raw = decomposition.V.column_slice(decomposition.rank)
    basis = canonical_basis(raw)
    logger.debug(f"Kernel of a {a.rows}x{a.cols} matrix has rank {basis.cols}")
    return basis


def solve_integer(a: IntMatrix, b: Sequence[int]) -> Optional[Vector]:
    """Return x with a x = b over the integers, or None when no solution exists"""
    if len(b) != a.rows:
        raise InvariantViolation(f"Right-hand side of length {len(b)} for a {a.rows}-row system")
    decomposition = smith(a)
    c = decomposition.U.apply(b)
    y = [0] * a.cols
    for i, value in enumerate(c):
        diagonal = decomposition.D[i, i] if i < a.cols else 0
        if diagonal == 0:
            if value != 0:
                return None
        elif value % diagonal:
            return None
        else:
            y[i] = value // diagonal
    return decomposition.V.apply(y)


def solve_matrix(a: IntMatrix, b: IntMatrix) -> Optional[IntMatrix]:
    """Return X with a X = b, or None when some column has no integer solution"""
    solutions = []
    for column in b.columns():
        x = solve_integer(a, column)
        if x is None:
            return None
        solutions.append(x)
    return IntMatrix.from_columns(solutions, height=a.cols)


def coordinates(basis: IntMatrix, vectors: IntMatrix) -> IntMatrix:
    """Express columns of vectors in the given basis; CoordinateError if impossible"""
    solution = solve_matrix(basis, vectors)
    if solution is None:
        raise CoordinateError("A generator does not lie in the ambient lattice")
    return solution


def presentation_invariants(relations: IntMatrix) -> AbelianInvariants:
    """Invariants of Z^rows / (column span of relations)"""
    diagonal = list(smith(relations).diagonal)
    diagonal += [0] * (relations.rows - len(diagonal))
    return AbelianInvariants.from_diagonal(diagonal)


def quotient_invariants(ambient_basis: IntMatrix, sub_generators: IntMatrix) -> AbelianInvariants:
    """
    Structure of (lattice spanned by ambient_basis) / (lattice spanned by sub_generators).

    Sub-generators are first expressed in ambient coordinates; a generator
    outside the ambient lattice raises CoordinateError.
    """
    if smith(ambient_basis).rank != ambient_basis.cols:
        raise CoordinateError("Ambient basis columns are not linearly independent")
    relations = coordinates(ambient_basis, sub_generators)
    return presentation_invariants(relations)


@dataclass(frozen=True)
class Cokernel:
    """
    Z^n / sat(col a) realized by projection (rows r..n of U), with a section,
    plus the torsion of Z^n / col a.
    """
    projection: IntMatrix
    section: IntMatrix
    torsion: AbelianInvariants


def cokernel(a: IntMatrix) -> Cokernel:
    decomposition = smith(a)
    r = decomposition.rank
    return Cokernel(
        projection=decomposition.U.row_slice(r),
        section=decomposition.U.inverse_unimodular().column_slice(r),
        torsion=AbelianInvariants.from_diagonal(decomposition.diagonal[:r]),
    )


@dataclass(frozen=True)
class ModulePresentation:
    """Finitely generated abelian group Z^generators / (column span of relations)"""
    generators: int
    relations: IntMatrix

    def __post_init__(self):
        if self.relations.rows != self.generators:
            raise InvariantViolation("Relation matrix height must equal the number of generators")

    def invariants(self) -> AbelianInvariants:
        return presentation_invariants(self.relations)

    def image_invariants(self, op: IntMatrix) -> AbelianInvariants:
        """Invariants of Z^k / (op Z^k + relations), i.e. of M / op M"""
        return presentation_invariants(IntMatrix.hstack(op, self.relations))

    def preserves(self, op: IntMatrix) -> bool:
        """Whether op maps the relation lattice into itself"""
        if not self.relations.cols:
            return True
        return solve_matrix(self.relations, op @ self.relations) is not None


def nilpotent_block_sizes(module: ModulePresentation, nil_op: IntMatrix, p: int) -> Tuple[int, ...]:
    """
    Lengths of the cyclic strings of a finite p-group under a nilpotent operator.

    The number of strings of length >= j is log_p|N^(j-1) M| - log_p|N^j M|.
    Sizes are returned in descending order.
    """
    invariants = module.invariants()
    if not invariants.is_finite:
        raise NotTorsion(f"Module {invariants} has positive free rank")
    total = invariants.p_length(p)
    if not module.preserves(nil_op):
        raise InvariantViolation("Operator does not preserve the relation lattice")

    image_lengths = [total]
    power = IntMatrix.identity(module.generators)
    while image_lengths[-1] > 0:
        power = power @ nil_op
        cokernel_length = module.image_invariants(power).p_length(p)
        image_length = total - cokernel_length
        if image_length >= image_lengths[-1]:
            raise NotNilpotent("Operator powers stop shrinking before reaching zero")
        image_lengths.append(image_length)

    at_least = [image_lengths[j - 1] - image_lengths[j] for j in range(1, len(image_lengths))]
    sizes: List[int] = []
    for j, count in enumerate(at_least, start=1):
        exactly = count - (at_least[j] if j < len(at_least) else 0)
        sizes.extend([j] * exactly)
    return tuple(sorted(sizes, reverse=True))
