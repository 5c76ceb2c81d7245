from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Tuple

from sympy import Poly, ZZ, symbols
from sympy.ntheory import mobius as sympy_mobius

from ..core.exceptions import InvariantViolation, NotMonic
from ..exactla.matrix import IntMatrix
from .cyclic import divisors_of, euler_phi

X = symbols("X")


def _ascending(poly: Poly) -> Tuple[int, ...]:
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


def int_poly(coefficients: Sequence[int]) -> Poly:
    """Integer polynomial from ascending coefficients"""
    return Poly(list(reversed([int(c) for c in coefficients])) or [0], X, domain=ZZ)


@dataclass(frozen=True)
class CyclotomicPoly:
    """Phi_m with integer coefficients, ascending (coefficients[i] multiplies X^i)"""
    index: int
    coefficients: Tuple[int, ...]

    def __post_init__(self):
        if self.degree != euler_phi(self.index):
            raise InvariantViolation(f"Phi_{self.index} must have degree phi({self.index})")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def as_poly(self) -> Poly:
        return int_poly(self.coefficients)

    def evaluate(self, x: int) -> int:
        return sum(c * x ** i for i, c in enumerate(self.coefficients))

    def of_matrix(self, a: IntMatrix) -> IntMatrix:
        return a.polynomial(self.coefficients)

    def __str__(self) -> str:
        return str(self.as_poly().as_expr())


@lru_cache(maxsize=None)
def cyclotomic(m: int) -> CyclotomicPoly:
    """Phi_m by exact division of X^m - 1 by Phi_d for the proper divisors d"""
    if m < 1:
        raise InvariantViolation(f"Cyclotomic index must be positive, got {m}")
    quotient = Poly(X ** m - 1, X, domain=ZZ)
    for d in divisors_of(m)[:-1]:
        quotient = quotient.exquo(cyclotomic(d).as_poly())
    return CyclotomicPoly(m, _ascending(quotient))


def mobius(k: int) -> int:
    if k < 1:
        raise InvariantViolation(f"Mobius function needs a positive argument, got {k}")
    return int(sympy_mobius(k))


def companion(coefficients: Sequence[int]) -> IntMatrix:
    """
    Multiplication by X on Z[X]/(f) in the basis 1, X, ..., X^(k-1).

    f is given by ascending coefficients and must be monic.
    """
    coefficients = list(coefficients)
    if not coefficients or coefficients[-1] != 1:
        raise NotMonic(f"Companion matrix needs a monic polynomial, got {coefficients}")
    k = len(coefficients) - 1
    rows = [[0] * k for _ in range(k)]
    for i in range(k - 1):
        rows[i + 1][i] = 1
    for i in range(k):
        rows[i][k - 1] = -coefficients[i]
    return IntMatrix.from_rows(rows, cols=k)


def cyclotomic_companion(m: int) -> IntMatrix:
    return companion(cyclotomic(m).coefficients)
