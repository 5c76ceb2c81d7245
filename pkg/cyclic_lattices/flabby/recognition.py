import logging
from dataclasses import dataclass
from typing import Optional, Union

from ..cohomology.tate import TateModule, tate_minus_one, tate_zero
from ..core.exceptions import WrongGroup
from ..exactla.abelian import AbelianInvariants
from ..groupring.base_ring import BaseRing, RingKind
from ..lattice.filtrations import fixed_sublattice
from ..lattice.lattice import GroupLattice

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PermutationDecomposition:
    """M is Z^a + (Z C_p)^c after localizing at p"""
    a: int
    c: int


@dataclass(frozen=True)
class NotPermutation:
    reason: str
    witness: Optional[TateModule] = None


def permutation_recognize_cp(m: GroupLattice, p: int) -> Union[PermutationDecomposition, NotPermutation]:
    if m.group.order != p:
        raise WrongGroup(f"Permutation recognition needs C_{p}, got {m.group}")
    if m.base.is_cyclotomic or (m.base.kind == RingKind.LOCALIZED and m.base.p != p):
        raise WrongGroup(f"Permutation recognition works over Z_({p}), got {m.base}")
    local = GroupLattice(BaseRing.localized(p), m.group, m.z_rank, m.sigma_action)
    full = local.group.full

    minus_one = tate_minus_one(local, full)
    if not minus_one.is_zero:
        return NotPermutation(f"H^-1(C_{p}) = {minus_one} is not zero", minus_one)

    fixed_rank = fixed_sublattice(local, full).cols
    if (local.z_rank - fixed_rank) % (p - 1):
        return NotPermutation(f"rank {local.z_rank} and fixed rank {fixed_rank} fit no permutation lattice")
    c = (local.z_rank - fixed_rank) // (p - 1)
    a = fixed_rank - c
    if a < 0:
        return NotPermutation(f"fixed rank {fixed_rank} is smaller than the {c} free summands")

    zero = tate_zero(local, full)
    if zero.invariants != AbelianInvariants(0, (p,) * a):
        return NotPermutation(f"H^0(C_{p}) = {zero} differs from (Z/{p})^{a}", zero)
    logger.info(f"{m} is Z^{a} + (Z C_{p})^{c} at {p}")
    return PermutationDecomposition(a, c)
