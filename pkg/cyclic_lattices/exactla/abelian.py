from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

from sympy import factorint

from ..core.exceptions import InvariantViolation


@dataclass(frozen=True)
class AbelianInvariants:
    """
    Canonical form Z^free_rank + Z/t_1 + ... + Z/t_k with t_1 | t_2 | ... | t_k
    and every t_i >= 2.
    """
    free_rank: int = 0
    torsion: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise InvariantViolation("Free rank must be non-negative")
        for factor in self.torsion:
            if factor < 2:
                raise InvariantViolation(f"Invariant factor {factor} must be at least 2")
        for smaller, larger in zip(self.torsion, self.torsion[1:]):
            if larger % smaller:
                raise InvariantViolation(f"Invariant factors {self.torsion} break the divisibility chain")

    @classmethod
    def from_diagonal(cls, values: Iterable[int]) -> "AbelianInvariants":
        """Normalize the cyclic decomposition Z/v_1 + Z/v_2 + ... (v_i = 0 gives Z)"""
        free_rank = 0
        prime_powers = defaultdict(list)
        for value in values:
            value = abs(value)
            if value == 0:
                free_rank += 1
                continue
            for prime, exponent in factorint(value).items():
                prime_powers[prime].append(prime ** exponent)
        length = max((len(powers) for powers in prime_powers.values()), default=0)
        factors = [1] * length
        for powers in prime_powers.values():
            # largest power goes to the last invariant factor
            for offset, power in enumerate(sorted(powers, reverse=True)):
                factors[length - 1 - offset] *= power
        return cls(free_rank, tuple(factors))

    @classmethod
    def trivial(cls) -> "AbelianInvariants":
        return cls(0, ())

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def order(self) -> Optional[int]:
        """Group order, or None when the group is infinite"""
        if self.free_rank:
            return None
        result = 1
        for factor in self.torsion:
            result *= factor
        return result

    def p_part(self, p: int) -> "AbelianInvariants":
        """Localize at p: keep the free rank and the p-primary torsion"""
        factors = []
        for factor in self.torsion:
            power = 1
            while factor % p == 0:
                factor //= p
                power *= p
            if power > 1:
                factors.append(power)
        return AbelianInvariants(self.free_rank, tuple(factors))

    def p_length(self, p: int) -> int:
        """log_p of the order of a finite p-group"""
        order = self.order
        if order is None:
            raise InvariantViolation("Length of an infinite group")
        length = 0
        while order % p == 0:
            order //= p
            length += 1
        if order != 1:
            raise InvariantViolation(f"Group of order {self.order} is not a {p}-group")
        return length

    def __add__(self, other: "AbelianInvariants") -> "AbelianInvariants":
        return AbelianInvariants.from_diagonal(
            (0,) * (self.free_rank + other.free_rank) + self.torsion + other.torsion
        )

    def __str__(self) -> str:
        parts = [f"Z/{factor}" for factor in self.torsion]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"
