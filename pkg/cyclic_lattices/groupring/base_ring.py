import enum
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from sympy import isprime

from ..core.exceptions import InvariantViolation
from ..exactla.matrix import IntMatrix
from .cyclic import CyclicGroup, euler_phi, prime_divisors
from .cyclotomic import cyclotomic, cyclotomic_companion

logger = logging.getLogger(__name__)


class RingKind(str, enum.Enum):
    INTEGERS = "Z"
    LOCALIZED = "Z_loc"
    CYCLOTOMIC = "cyclotomic"


@dataclass(frozen=True)
class BaseRing:
    """
    R in {Z, Z_(p), Z[zeta_m]}. Cyclotomic rings are stored on the power basis
    1, zeta, ..., zeta^(phi(m)-1) with Phi_m-reduction.
    """
    kind: RingKind
    p: Optional[int] = None
    m: Optional[int] = None

    def __post_init__(self):
        if self.kind == RingKind.LOCALIZED:
            if self.p is None or not isprime(self.p):
                raise InvariantViolation(f"Localization needs a prime, got {self.p}")
        elif self.kind == RingKind.CYCLOTOMIC:
            if self.m is None or self.m < 1:
                raise InvariantViolation(f"Cyclotomic ring needs a positive index, got {self.m}")

    @classmethod
    def integers(cls) -> "BaseRing":
        return cls(RingKind.INTEGERS)

    @classmethod
    def localized(cls, p: int) -> "BaseRing":
        return cls(RingKind.LOCALIZED, p=p)

    @classmethod
    def cyclotomic(cls, m: int) -> "BaseRing":
        return cls(RingKind.CYCLOTOMIC, m=m)

    @classmethod
    def gaussian(cls) -> "BaseRing":
        return cls(RingKind.CYCLOTOMIC, m=4)

    @property
    def is_cyclotomic(self) -> bool:
        return self.kind == RingKind.CYCLOTOMIC

    @property
    def degree(self) -> int:
        """Z-rank of R"""
        return euler_phi(self.m) if self.is_cyclotomic else 1

    @property
    def conductor(self) -> int:
        """Smallest c with Z[zeta_m] = Z[zeta_c]"""
        if not self.is_cyclotomic:
            return 1
        return self.m // 2 if self.m % 4 == 2 else self.m

    def zeta_matrix(self) -> IntMatrix:
        """Regular action of zeta on the power basis"""
        if not self.is_cyclotomic:
            raise InvariantViolation(f"{self} carries no zeta")
        return cyclotomic_companion(self.m)

    def multiply(self, a: Sequence[int], b: Sequence[int]) -> Tuple[int, ...]:
        """Product of two power-basis coordinate vectors"""
        k = self.degree
        if len(a) != k or len(b) != k:
            raise InvariantViolation(f"Coordinate vectors must have length {k}")
        if not self.is_cyclotomic:
            return (a[0] * b[0],)
        product = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                product[i + j] += x * y
        modulus = cyclotomic(self.m).coefficients
        for top in range(len(product) - 1, k - 1, -1):
            c = product[top]
            if c:
                for i in range(k + 1):
                    product[top - k + i] -= c * modulus[i]
        return tuple(product[:k])

    def __str__(self) -> str:
        if self.kind == RingKind.INTEGERS:
            return "Z"
        if self.kind == RingKind.LOCALIZED:
            return f"Z_({self.p})"
        return f"Z[zeta_{self.m}]"


@dataclass(frozen=True)
class PrimeHypotheses:
    """Hypotheses (ii) and (iii) at one prime divisor of the group order"""
    prime: int
    non_invertible: bool
    unramified: bool
    ramification_index: int
    note: str = ""

    @property
    def holds(self) -> bool:
        return self.non_invertible and self.unramified


@dataclass(frozen=True)
class HypothesesReport:
    ring: BaseRing
    group_order: int
    characteristic_zero: bool
    primes: Tuple[PrimeHypotheses, ...]

    @property
    def holds(self) -> bool:
        return self.characteristic_zero and all(entry.holds for entry in self.primes)

    @property
    def failures(self) -> List[PrimeHypotheses]:
        return [entry for entry in self.primes if not entry.holds]


def _ramification_index(ring: BaseRing, p: int) -> int:
    # in Z[zeta_c], p is totally ramified in the p-power part: e = phi(p^v)
    c = ring.conductor
    power = 1
    while c % p == 0:
        c //= p
        power *= p
    return euler_phi(power)


def validate_hypotheses(r: BaseRing, g: CyclicGroup) -> HypothesesReport:
    """Check that every prime p | n is non-invertible and unramified in r"""
    entries = []
    for p in prime_divisors(g.order):
        if r.kind == RingKind.INTEGERS:
            entries.append(PrimeHypotheses(p, True, True, 1))
        elif r.kind == RingKind.LOCALIZED:
            invertible = p != r.p
            note = f"{p} is a unit in {r}" if invertible else ""
            entries.append(PrimeHypotheses(p, not invertible, True, 1, note))
        else:
            e = _ramification_index(r, p)
            note = f"{p} ramifies in {r} with index {e}" if e > 1 else ""
            entries.append(PrimeHypotheses(p, True, e == 1, e, note))
    report = HypothesesReport(r, g.order, True, tuple(entries))
    if not report.holds:
        logger.info(f"Hypotheses fail for {r} and C_{g.order} at primes {[e.prime for e in report.failures]}")
    return report
