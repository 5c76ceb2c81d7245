"""
Decomposition data along the factors Phi_d of X^n - 1.

For each d | n the torsion-free part (M / Phi_d(sigma) M)_0 is a
Z[zeta_d]-lattice; its rank and Steinitz class are recorded, together with
the groups M / (sigma^d - 1) M entering the Mobius formula.
"""

import enum
import logging
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from ..core.config import settings
from ..core.exceptions import InvariantViolation
from ..exactla.abelian import AbelianInvariants
from ..exactla.matrix import IntMatrix
from ..exactla.normal_forms import cokernel, presentation_invariants
from ..groupring.base_ring import RingKind
from ..groupring.cyclic import divisors_of, euler_phi
from ..groupring.cyclotomic import cyclotomic, mobius
from ..lattice.filtrations import phi_matrix, phi_quotient
from ..lattice.lattice import GroupLattice

logger = logging.getLogger(__name__)


class SteinitzClass(str, enum.Enum):
    TRIVIAL = "trivial"
    UNSUPPORTED = "unsupported"


@dataclass(frozen=True)
class SteinitzDatum:
    index: int
    rank: int
    steinitz: SteinitzClass

    def __str__(self) -> str:
        if self.steinitz == SteinitzClass.TRIVIAL:
            return f"trivial (rank {self.rank} over Z[zeta_{self.index}])"
        return f"unsupported({self.index})"


@dataclass(frozen=True)
class PhiComponent:
    index: int
    lattice: GroupLattice
    rank: int
    torsion: AbelianInvariants
    steinitz: SteinitzDatum


@dataclass(frozen=True)
class MobiusTerm:
    """M / (sigma^d - 1) M with its coefficient mu(n/d)"""
    index: int
    coefficient: int
    invariants: AbelianInvariants


@dataclass(frozen=True)
class PhiDecomposition:
    components: Tuple[PhiComponent, ...]
    mobius_terms: Tuple[MobiusTerm, ...]
    rank_identity: bool
    # rank((M/Phi_e M)_0) against sum over d | e of mu(e/d) rank(M/(sigma^d-1)M), per e
    mobius_ranks: Dict[int, Tuple[int, int]]

    @property
    def mobius_identity(self) -> bool:
        return all(left == right for left, right in self.mobius_ranks.values())


def steinitz_class(module: GroupLattice, d: int) -> SteinitzDatum:
    """Steinitz class of a lattice on which Phi_d(sigma) vanishes"""
    if not cyclotomic(d).of_matrix(module.sigma_action).is_zero():
        raise InvariantViolation(f"Phi_{d}(sigma) does not vanish on the module")
    rank = module.z_rank // euler_phi(d)
    if module.base.is_cyclotomic:
        logger.warning(f"No Steinitz classes over {module.base}; reporting unsupported({d})")
        return SteinitzDatum(d, rank, SteinitzClass.UNSUPPORTED)
    if module.base.kind == RingKind.LOCALIZED or d in settings.STEINITZ_ALLOWLIST:
        return SteinitzDatum(d, rank, SteinitzClass.TRIVIAL)
    logger.warning(f"Z[zeta_{d}] is off the class-number-one allowlist; reporting unsupported({d})")
    return SteinitzDatum(d, rank, SteinitzClass.UNSUPPORTED)


def phi_decompose(m: GroupLattice) -> PhiDecomposition:
    n = m.group.order
    components = []
    mobius_terms = []
    free_ranks = {}
    for d in divisors_of(n):
        quotient = phi_quotient(m, d)
        datum = steinitz_class(quotient.torsion_free, d)
        components.append(PhiComponent(d, quotient.torsion_free, datum.rank, quotient.torsion, datum))
        shift = m.sigma_action.power(d) - IntMatrix.identity(m.z_rank)
        invariants = presentation_invariants(shift)
        mobius_terms.append(MobiusTerm(d, mobius(n // d), invariants))
        free_ranks[d] = invariants.free_rank

    total = sum(euler_phi(c.index) * c.rank for c in components)
    mobius_ranks = {}
    for c in components:
        expected = sum(mobius(c.index // d) * free_ranks[d] for d in divisors_of(c.index))
        mobius_ranks[c.index] = (c.lattice.z_rank, expected)
    result = PhiDecomposition(tuple(components), tuple(mobius_terms), total == m.z_rank, mobius_ranks)
    if not result.rank_identity or not result.mobius_identity:
        logger.error(f"Rank bookkeeping fails for {m}: {total} vs {m.z_rank}, {mobius_ranks}")
        raise InvariantViolation("Phi decomposition ranks do not add up")
    return result


@dataclass(frozen=True)
class OmegaEmbedding:
    """M -> product over d | n of (M / Phi_d M)_0, stacked"""
    projection: IntMatrix
    injective: bool
    index: Optional[int]


def omega_components(m: GroupLattice) -> OmegaEmbedding:
    blocks = [cokernel(phi_matrix(m, d)).projection for d in divisors_of(m.group.order)]
    stacked = IntMatrix.vstack(*blocks, cols=m.z_rank)
    injective = stacked.rank() == m.z_rank
    index = abs(stacked.det()) if injective and stacked.is_square else None
    return OmegaEmbedding(stacked, injective, index)
