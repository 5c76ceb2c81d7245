"""Dedekind's p-maximality criterion for monogenic orders Z[X]/(f)"""

import logging
from dataclasses import dataclass
from typing import Sequence, Tuple

from sympy import Poly, discriminant, isprime, primefactors

from ..core.exceptions import InvariantViolation, NotMonic
from ..groupring.cyclic import prime_divisors
from ..groupring.cyclotomic import X, cyclotomic, int_poly

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PolyModP:
    """Polynomial over GF(p) with ascending coefficients in 0..p-1, no trailing zeros"""
    prime: int
    coefficients: Tuple[int, ...]

    def __post_init__(self):
        if self.coefficients and self.coefficients[-1] == 0:
            raise InvariantViolation("Leading coefficient of a nonzero polynomial must be nonzero")
        if any(not 0 <= c < self.prime for c in self.coefficients):
            raise InvariantViolation(f"Coefficients must be reduced mod {self.prime}")

    @classmethod
    def from_integers(cls, coefficients: Sequence[int], p: int) -> "PolyModP":
        reduced = [int(c) % p for c in coefficients]
        while reduced and reduced[-1] == 0:
            reduced.pop()
        return cls(p, tuple(reduced))

    @classmethod
    def from_poly(cls, poly: Poly, p: int) -> "PolyModP":
        return cls.from_integers(reversed(poly.all_coeffs()), p)

    def as_poly(self) -> Poly:
        return Poly(list(reversed(self.coefficients)) or [0], X, modulus=self.prime, symmetric=False)

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_one(self) -> bool:
        return self.coefficients == (1,)

    def __str__(self) -> str:
        return str(self.as_poly().as_expr())


def _p_th_root(f: Poly, p: int) -> Poly:
    # f' = 0 means f = sum a_i X^(ip), and a^p = a in GF(p)
    ascending = list(reversed(f.all_coeffs()))
    return Poly(list(reversed(ascending[::p])), X, modulus=p, symmetric=False)


def _radical(f: Poly, p: int) -> Poly:
    if f.degree() <= 0:
        return Poly(1, X, modulus=p, symmetric=False)
    derivative = f.diff(X)
    if derivative.is_zero:
        return _radical(_p_th_root(f, p), p)
    common = f.gcd(derivative)
    coprime_part = f.quo(common)
    return coprime_part.lcm(_radical(common, p)).monic()


def radical_mod_p(f: PolyModP) -> PolyModP:
    """Product of the distinct monic irreducible factors of f"""
    if f.is_zero:
        raise InvariantViolation("The zero polynomial has no radical")
    return PolyModP.from_poly(_radical(f.as_poly(), f.prime), f.prime)


@dataclass(frozen=True)
class CriterionResult:
    prime: int
    maximal: bool
    radical: PolyModP
    cofactor: PolyModP
    quotient: PolyModP
    common: PolyModP


def dedekind_criterion(f: Sequence[int], p: int) -> CriterionResult:
    """
    Whether Z[X]/(f) is maximal at p, for f monic with ascending coefficients.

    With g = rad(f mod p), h = (f mod p)/g lifted to coefficients in 0..p-1
    and F = (g h - f)/p, the order is p-maximal iff gcd(g, h, F) = 1 mod p.
    """
    coefficients = [int(c) for c in f]
    if not coefficients or coefficients[-1] != 1:
        raise NotMonic(f"Dedekind's criterion needs a monic polynomial, got {coefficients}")
    if not isprime(p):
        raise InvariantViolation(f"{p} is not prime")
    reduced = PolyModP.from_integers(coefficients, p)
    g = radical_mod_p(reduced)
    h = PolyModP.from_poly(reduced.as_poly().exquo(g.as_poly()), p)

    lifted = int_poly(g.coefficients) * int_poly(h.coefficients) - int_poly(coefficients)
    excess = [int(c) for c in reversed(lifted.all_coeffs())]
    if any(c % p for c in excess):
        raise InvariantViolation("Lifted factorization does not agree with f mod p")
    quotient = PolyModP.from_integers([c // p for c in excess], p)

    common = g.as_poly().gcd(h.as_poly())
    if not quotient.is_zero:
        common = common.gcd(quotient.as_poly())
    common = PolyModP.from_poly(common.monic(), p)
    return CriterionResult(p, common.is_one, g, h, quotient, common)


@dataclass(frozen=True)
class MaximalityReport:
    n: int
    checks: Tuple[CriterionResult, ...]
    discriminant_primes: Tuple[int, ...]
    note: str

    @property
    def holds(self) -> bool:
        return all(check.maximal for check in self.checks)

    @property
    def discriminant_primes_divide_n(self) -> bool:
        return all(self.n % q == 0 for q in self.discriminant_primes)


def verify_theorem_3_3(n: int) -> MaximalityReport:
    """Check that Z[X]/(Phi_n) is p-maximal at every p | n"""
    if n < 1:
        raise InvariantViolation(f"Cyclotomic index must be positive, got {n}")
    phi = cyclotomic(n)
    disc = int(discriminant(phi.as_poly())) if phi.degree > 1 else 1
    disc_primes = tuple(int(q) for q in primefactors(disc))
    checks = tuple(dedekind_criterion(phi.coefficients, p) for p in prime_divisors(n))
    note = (
        f"primes not dividing {n} are skipped: they do not divide disc(Phi_{n}) = {disc}, "
        "so Z[X]/(Phi_n) is already maximal there"
    )
    report = MaximalityReport(n, checks, disc_primes, note)
    if not report.holds:
        logger.warning(f"Z[X]/(Phi_{n}) fails p-maximality at {[c.prime for c in checks if not c.maximal]}")
    return report
