"""Fixed points and the filtration by cyclotomic factors Phi_d(sigma)"""

import logging
from typing import NamedTuple

from ..core.exceptions import BadDivisor
from ..exactla.abelian import AbelianInvariants
from ..exactla.matrix import IntMatrix
from ..exactla.normal_forms import cokernel, kernel_basis
from ..groupring.cyclic import Subgroup
from ..groupring.cyclotomic import cyclotomic
from .lattice import ExactSequence, GroupLattice, quotient_lattice, sublattice

logger = logging.getLogger(__name__)


def fixed_sublattice(m: GroupLattice, h: Subgroup) -> IntMatrix:
    """Saturated basis of M^h, the kernel of sigma^(n/d) - 1"""
    generator = m.subgroup_generator(h)
    return kernel_basis(generator - IntMatrix.identity(m.z_rank))


def phi_matrix(m: GroupLattice, d: int) -> IntMatrix:
    if m.group.order % d:
        raise BadDivisor(f"{d} does not divide the group order {m.group.order}")
    return cyclotomic(d).of_matrix(m.sigma_action)


class PhiQuotient(NamedTuple):
    torsion_free: GroupLattice
    torsion: AbelianInvariants


def phi_quotient(m: GroupLattice, d: int) -> PhiQuotient:
    """
    M / Phi_d(sigma) M split into its torsion invariants and the torsion-free
    part (M / Phi_d(sigma) M)_0, on which Phi_d(sigma) vanishes.
    """
    quotient = cokernel(phi_matrix(m, d))
    sigma = quotient.projection @ m.sigma_action @ quotient.section
    zeta = (
        quotient.projection @ m.zeta_action @ quotient.section
        if m.zeta_action is not None
        else None
    )
    logger.debug(f"M/Phi_{d}M has free rank {sigma.rows} and torsion {quotient.torsion}")
    return PhiQuotient(m.with_actions(sigma, zeta), quotient.torsion)


def kernel_sublattice(m: GroupLattice, d: int) -> GroupLattice:
    """M' = {u in M : Phi_d(sigma) u = 0}"""
    return sublattice(m, kernel_basis(phi_matrix(m, d)))[0]


def phi_cokernel(m: GroupLattice, d: int) -> GroupLattice:
    """M'' = M / M', torsion-free since M' is saturated"""
    return quotient_lattice(m, kernel_basis(phi_matrix(m, d)))[0]


def phi_sequence(m: GroupLattice, d: int) -> ExactSequence:
    """0 -> M' -> M -> M'' -> 0 for the factor Phi_d"""
    basis = kernel_basis(phi_matrix(m, d))
    inner, inclusion = sublattice(m, basis)
    outer, projection = quotient_lattice(m, basis)
    sequence = ExactSequence(inner, m, outer, inclusion, projection)
    sequence.require_exact()
    return sequence
