"""
Tate cohomology of cyclic subgroups acting on lattices.

For h = <tau> cyclic of order d the complete resolution is 2-periodic, so
every group is a subquotient of M cut out by tau - 1 and the norm
N = 1 + tau + ... + tau^(d-1):

    H^-1(h, M) = ker N / (tau - 1) M
    H^0(h, M)  = M^h / N M
    H^1(h, M)  = Z^1 / B^1, isomorphic to H^-1 for cyclic h
"""

import logging
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

from ..core.config import settings
from ..core.exceptions import InvariantViolation
from ..exactla.abelian import AbelianInvariants
from ..exactla.matrix import IntMatrix
from ..exactla.normal_forms import (
    ModulePresentation,
    coordinates,
    kernel_basis,
    nilpotent_block_sizes,
    quotient_invariants,
)
from ..groupring.base_ring import RingKind
from ..groupring.cyclic import Subgroup, prime_divisors, subgroups
from ..lattice.filtrations import fixed_sublattice
from ..lattice.lattice import GroupLattice

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TateModule:
    invariants: AbelianInvariants
    # string lengths of the residual (1 - zeta)-action, descending
    zeta_blocks: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if not self.invariants.is_finite:
            raise InvariantViolation(f"Tate group {self.invariants} must be finite")

    @property
    def is_zero(self) -> bool:
        return self.invariants.is_trivial

    def length(self, p: int) -> int:
        return self.invariants.p_length(p)

    def __str__(self) -> str:
        text = str(self.invariants)
        if self.zeta_blocks is not None:
            text += f" blocks {list(self.zeta_blocks)}"
        return text


@dataclass(frozen=True)
class TateProfileEntry:
    minus_one: TateModule
    zero: TateModule
    one: TateModule


def norm_matrix(m: GroupLattice, h: Subgroup) -> IntMatrix:
    """N = sum of T^i for i < d, with T the action of the generator of h"""
    generator = m.subgroup_generator(h)
    total = IntMatrix.zeros(m.z_rank, m.z_rank)
    power = IntMatrix.identity(m.z_rank)
    for _ in range(h.order):
        total = total + power
        power = power @ generator
    return total


def group_ring_action(m: GroupLattice, h: Subgroup, coefficients: Sequence[int]) -> IntMatrix:
    """Action of sum(c_i tau^i) for tau the generator of h"""
    return m.subgroup_generator(h).polynomial(coefficients)


def _localize(m: GroupLattice, invariants: AbelianInvariants) -> AbelianInvariants:
    if m.base.kind == RingKind.LOCALIZED:
        return invariants.p_part(m.base.p)
    return invariants


def _residue_prime(m: GroupLattice) -> int:
    primes = prime_divisors(m.base.m)
    if len(primes) != 1:
        raise InvariantViolation(f"zeta blocks need a prime-power cyclotomic index, got {m.base.m}")
    return primes[0]


def _tate_module(m: GroupLattice, ambient: IntMatrix, relations: IntMatrix, with_blocks: bool) -> TateModule:
    """ambient / relations, with the (1 - zeta) string lengths when requested"""
    relation_coordinates = coordinates(ambient, relations)
    presentation = ModulePresentation(ambient.cols, relation_coordinates)
    invariants = _localize(m, presentation.invariants())
    blocks = None
    if with_blocks:
        if m.zeta_action is None:
            raise InvariantViolation("zeta blocks need a cyclotomic base ring")
        zeta = coordinates(ambient, m.zeta_action @ ambient)
        nil_op = IntMatrix.identity(ambient.cols) - zeta
        blocks = nilpotent_block_sizes(presentation, nil_op, _residue_prime(m))
    return TateModule(invariants, blocks)


def tate_minus_one(m: GroupLattice, h: Subgroup, zeta_blocks: bool = False) -> TateModule:
    """ker N modulo (T - 1) M"""
    shift = m.subgroup_generator(h) - IntMatrix.identity(m.z_rank)
    return _tate_module(m, kernel_basis(norm_matrix(m, h)), shift, zeta_blocks)


def tate_zero(m: GroupLattice, h: Subgroup, zeta_blocks: bool = False) -> TateModule:
    """M^h modulo N M"""
    return _tate_module(m, fixed_sublattice(m, h), norm_matrix(m, h), zeta_blocks)


def cohomology_via_resolution(m: GroupLattice, h: Subgroup, degree: int) -> AbelianInvariants:
    """
    H^degree(h, M) from the periodic free resolution
    ... -> Z[h] -(N)-> Z[h] -(tau-1)-> Z[h] -> Z,
    whose cochains are M -(tau-1)-> M -(N)-> M -(tau-1)-> ...
    """
    if degree < 0:
        raise InvariantViolation(f"Ordinary cohomology has no degree {degree}")
    shift = group_ring_action(m, h, [-1, 1])
    norm = group_ring_action(m, h, [1] * h.order)

    def differential(q: int) -> IntMatrix:
        return shift if q % 2 == 0 else norm

    cocycles = kernel_basis(differential(degree))
    coboundaries = differential(degree - 1) if degree else IntMatrix.zeros(m.z_rank, 0)
    return _localize(m, quotient_invariants(cocycles, coboundaries))


def crossed_homomorphisms(m: GroupLattice, h: Subgroup) -> Tuple[IntMatrix, IntMatrix]:
    """
    Z^1 and B^1 inside M^d, a cochain f being stacked as f(1), f(T), ..., f(T^(d-1)).

    Z^1 is cut out by f(1) = 0 and f(T^(i+1)) = f(T^i) + T^i f(T) for every
    i mod d, which force f(T^(i+j)) = f(T^i) + T^i f(T^j) for every pair.
    B^1 is spanned by the cochains g -> g x - x.
    """
    d, r = h.order, m.z_rank
    identity = IntMatrix.identity(r)
    powers = [identity]
    for _ in range(d - 1):
        powers.append(powers[-1] @ m.subgroup_generator(h))

    def condition(terms: Dict[int, IntMatrix]) -> IntMatrix:
        return IntMatrix.hstack(*[terms.get(k, IntMatrix.zeros(r, r)) for k in range(d)])

    conditions = [condition({0: identity})]
    for i in range(d):
        terms: Dict[int, IntMatrix] = {}
        for k, block in (((i + 1) % d, identity), (i, -identity), (1 % d, -powers[i])):
            terms[k] = terms[k] + block if k in terms else block
        conditions.append(condition(terms))
    cocycles = kernel_basis(IntMatrix.vstack(*conditions, cols=d * r))
    coboundaries = IntMatrix.vstack(*[power - identity for power in powers], cols=r)
    return cocycles, coboundaries


def h_one(m: GroupLattice, h: Subgroup) -> TateModule:
    """H^1(h, M) = Z^1 / B^1 on cochains over all of h"""
    cocycles, coboundaries = crossed_homomorphisms(m, h)
    result = _localize(m, quotient_invariants(cocycles, coboundaries))
    if settings.CROSS_CHECK_COHOMOLOGY:
        periodic = cohomology_via_resolution(m, h, 1)
        if periodic != result:
            logger.error(f"H^1 mismatch at {h}: cocycles give {result}, resolution gives {periodic}")
            raise InvariantViolation(f"H^1 computations disagree at {h}")
    return TateModule(result)


def tate_profile(m: GroupLattice) -> Dict[Subgroup, TateProfileEntry]:
    """Tate groups in degrees -1, 0 and 1 for every subgroup, ascending by order"""
    profile = {}
    for h in subgroups(m.group):
        profile[h] = TateProfileEntry(
            minus_one=tate_minus_one(m, h),
            zero=tate_zero(m, h),
            one=h_one(m, h),
        )
    logger.debug(f"Computed Tate profile of {m} over {len(profile)} subgroups")
    return profile
