"""
Non-invertible flabby lattice over Z[zeta_p] C_p.

M = R u with sigma u = zeta u. A flabby resolution of M^0, dualized, gives
0 -> E -> P -> M -> 0. Since H^-1(P) = 0 and H^0(M) = 0, the Tate sequence
collapses to 0 -> H^-1(M) -> H^0(E) -> H^0(P) -> 0. An invertible E would
have H^0(E) made of blocks R/(1 - zeta)^e, e the ramification index, so its
length would be a multiple of e; H^-1(M) = R/(1 - zeta) breaks that.
"""

import enum
import logging
from dataclasses import dataclass

from sympy import isprime

from ..cohomology.tate import TateModule, tate_minus_one, tate_zero
from ..core.config import settings
from ..core.exceptions import UnsupportedPrime
from ..groupring.base_ring import HypothesesReport, validate_hypotheses
from ..lattice.constructors import gaussian_twist, zeta_twist
from ..lattice.lattice import ExactSequence, dual
from .resolution import CoverStrategy, flabby_resolution

logger = logging.getLogger(__name__)


class Verdict(str, enum.Enum):
    NOT_INVERTIBLE = "not_invertible"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class CounterexampleReport:
    prime: int
    gaussian: bool
    ramification_index: int
    hypotheses: HypothesesReport
    sequence: ExactSequence
    minus_one_m: TateModule
    zero_p: TateModule
    zero_e: TateModule
    length_minus_one_m: int
    length_zero_p: int
    length_zero_e: int
    length_identity: bool
    p_blocks_uniform: bool
    verdict: Verdict


def counterexample_4_3(p: int, gaussian: bool = False) -> CounterexampleReport:
    if gaussian:
        m = gaussian_twist()
        prime, e = 2, 2
    else:
        if p == 2 or not isprime(p) or p > settings.MAX_EXAMPLE_PRIME:
            raise UnsupportedPrime(f"Expected an odd prime up to {settings.MAX_EXAMPLE_PRIME}, got {p}")
        m = zeta_twist(p, over_cyclotomic=True)
        prime, e = p, p - 1

    hypotheses = validate_hypotheses(m.base, m.group)
    resolution = flabby_resolution(dual(m), CoverStrategy.GREEDY)
    sequence = resolution.dual()
    sequence.require_exact()
    permutation, flabby = sequence.middle, sequence.inner

    full = m.group.full
    minus_one_m = tate_minus_one(m, full, zeta_blocks=True)
    zero_p = tate_zero(permutation, full, zeta_blocks=True)
    zero_e = tate_zero(flabby, full, zeta_blocks=True)
    lengths = [module.length(prime) for module in (minus_one_m, zero_p, zero_e)]

    length_identity = lengths[2] == lengths[0] + lengths[1]
    p_blocks_uniform = all(size == e for size in zero_p.zeta_blocks)
    verdict = Verdict.NOT_INVERTIBLE if length_identity and lengths[2] % e else Verdict.INCONCLUSIVE
    logger.info(f"H^0(E) has length {lengths[2]} against ramification index {e}: {verdict.value}")
    return CounterexampleReport(
        prime=prime,
        gaussian=gaussian,
        ramification_index=e,
        hypotheses=hypotheses,
        sequence=sequence,
        minus_one_m=minus_one_m,
        zero_p=zero_p,
        zero_e=zero_e,
        length_minus_one_m=lengths[0],
        length_zero_p=lengths[1],
        length_zero_e=lengths[2],
        length_identity=length_identity,
        p_blocks_uniform=p_blocks_uniform,
        verdict=verdict,
    )
