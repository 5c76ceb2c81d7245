import logging
from dataclasses import dataclass
from typing import Optional

from ..cohomology.tate import TateModule, tate_profile
from ..core.exceptions import InvariantViolation
from ..groupring.cyclic import Subgroup
from ..lattice.lattice import GroupLattice

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Witness:
    subgroup: Subgroup
    group: TateModule


@dataclass(frozen=True)
class Classification:
    is_flabby: bool
    is_coflabby: bool
    flabby_witness: Optional[Witness] = None
    coflabby_witness: Optional[Witness] = None

    def __post_init__(self):
        if self.is_flabby != (self.flabby_witness is None):
            raise InvariantViolation("A flabby witness is present exactly when the lattice is not flabby")
        if self.is_coflabby != (self.coflabby_witness is None):
            raise InvariantViolation("A coflabby witness is present exactly when the lattice is not coflabby")


def classify(m: GroupLattice) -> Classification:
    """Flabby means H^-1 vanishes at every subgroup, coflabby means H^1 does"""
    flabby_witness = None
    coflabby_witness = None
    for h, entry in tate_profile(m).items():
        if flabby_witness is None and not entry.minus_one.is_zero:
            flabby_witness = Witness(h, entry.minus_one)
        if coflabby_witness is None and not entry.one.is_zero:
            coflabby_witness = Witness(h, entry.one)
    result = Classification(
        is_flabby=flabby_witness is None,
        is_coflabby=coflabby_witness is None,
        flabby_witness=flabby_witness,
        coflabby_witness=coflabby_witness,
    )
    if result.is_flabby != result.is_coflabby:
        logger.error(f"Flabby and coflabby disagree for {m}")
        raise InvariantViolation("Flabby and coflabby must agree over a cyclic group")
    logger.info(f"{m} is {'flabby' if result.is_flabby else 'not flabby'}")
    return result
