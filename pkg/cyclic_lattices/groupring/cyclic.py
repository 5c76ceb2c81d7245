from dataclasses import dataclass
from typing import List

from sympy import divisors, primefactors, totient

from ..core.exceptions import BadDivisor, InvariantViolation


def euler_phi(m: int) -> int:
    return int(totient(m))


def divisors_of(n: int) -> List[int]:
    return [int(d) for d in divisors(n)]


def prime_divisors(n: int) -> List[int]:
    return [int(p) for p in primefactors(n)]


@dataclass(frozen=True)
class CyclicGroup:
    """Cyclic group of order n generated by sigma"""
    order: int

    def __post_init__(self):
        if self.order < 1:
            raise InvariantViolation(f"Group order must be positive, got {self.order}")

    def subgroup(self, d: int) -> "Subgroup":
        if d < 1 or self.order % d:
            raise BadDivisor(f"{d} does not divide the group order {self.order}")
        return Subgroup(self, d)

    @property
    def full(self) -> "Subgroup":
        return Subgroup(self, self.order)

    @property
    def trivial(self) -> "Subgroup":
        return Subgroup(self, 1)

    def __str__(self) -> str:
        return f"C_{self.order}"


@dataclass(frozen=True)
class Subgroup:
    """The subgroup <sigma^(n/d)> of order d; identity is the divisor d"""
    parent: CyclicGroup
    order: int

    def __post_init__(self):
        if self.order < 1 or self.parent.order % self.order:
            raise BadDivisor(f"{self.order} does not divide the group order {self.parent.order}")

    @property
    def generator_exponent(self) -> int:
        return self.parent.order // self.order

    @property
    def index(self) -> int:
        return self.generator_exponent

    def contains(self, other: "Subgroup") -> bool:
        return other.parent == self.parent and self.order % other.order == 0

    def as_group(self) -> CyclicGroup:
        return CyclicGroup(self.order)

    def __str__(self) -> str:
        return f"<sigma^{self.generator_exponent}> (order {self.order})"


def subgroups(g: CyclicGroup) -> List[Subgroup]:
    """One subgroup per divisor of the order, ascending"""
    return [Subgroup(g, d) for d in divisors_of(g.order)]
