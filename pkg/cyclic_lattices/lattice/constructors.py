import logging
from typing import NamedTuple, Optional, Sequence, Tuple

from ..core.exceptions import BadDivisor
from ..exactla.matrix import IntMatrix
from ..groupring.base_ring import BaseRing
from ..groupring.cyclic import CyclicGroup, euler_phi
from ..groupring.cyclotomic import companion, cyclotomic, int_poly
from .lattice import ExactSequence, GroupLattice, LatticeMap, direct_sum_all, quotient_lattice

logger = logging.getLogger(__name__)


def cyclic_permutation(e: int) -> IntMatrix:
    """e-cycle sending basis vector i to i+1 mod e"""
    rows = [[0] * e for _ in range(e)]
    for i in range(e):
        rows[(i + 1) % e][i] = 1
    return IntMatrix.from_rows(rows, cols=e)


def tensor_with_base(base: BaseRing, g: CyclicGroup, sigma: IntMatrix) -> GroupLattice:
    """Tensor a Z-form of the sigma action with the regular representation of the base"""
    if not base.is_cyclotomic:
        return GroupLattice(base, g, sigma.rows, sigma)
    k = base.degree
    zeta = IntMatrix.identity(sigma.rows).kron(base.zeta_matrix())
    return GroupLattice(base, g, sigma.rows * k, sigma.kron(IntMatrix.identity(k)), zeta)


def _lift(base: BaseRing, a: IntMatrix) -> IntMatrix:
    return a.kron(IntMatrix.identity(base.degree))


def permutation_lattice(base: BaseRing, g: CyclicGroup, orbit_sizes: Sequence[int]) -> GroupLattice:
    """
    Direct sum of R[pi/pi'] over the listed orbit sizes |pi/pi'|.

    An orbit of size e is acted on by sigma as an e-cycle, so [n] gives the
    regular lattice and [1] the trivial one.
    """
    blocks = []
    for e in orbit_sizes:
        if e < 1 or g.order % e:
            raise BadDivisor(f"Orbit size {e} does not divide the group order {g.order}")
        blocks.append(tensor_with_base(base, g, cyclic_permutation(e)))
    return direct_sum_all(base, g, blocks)


def regular_lattice(base: BaseRing, g: CyclicGroup) -> GroupLattice:
    return permutation_lattice(base, g, [g.order])


def trivial_lattice(base: BaseRing, g: CyclicGroup) -> GroupLattice:
    return permutation_lattice(base, g, [1])


def sign_lattice(base: BaseRing = None) -> GroupLattice:
    """Rank one over C_2 with sigma acting by -1"""
    return tensor_with_base(base or BaseRing.integers(), CyclicGroup(2), IntMatrix.from_rows([[-1]]))


def augmentation_ideal(base: BaseRing, g: CyclicGroup) -> GroupLattice:
    """
    Kernel of the augmentation R[pi] -> R on the basis sigma^i - sigma^(i-1),
    1 <= i < n, where sigma acts by the companion matrix of 1 + X + ... + X^(n-1).
    """
    n = g.order
    if n == 1:
        return tensor_with_base(base, g, IntMatrix.zeros(0, 0))
    return tensor_with_base(base, g, companion([1] * n))


def augmentation_sequence(base: BaseRing, g: CyclicGroup) -> ExactSequence:
    """0 -> I_{R pi} -> R pi -> R -> 0"""
    n = g.order
    ideal = augmentation_ideal(base, g)
    regular = regular_lattice(base, g)
    trivial = trivial_lattice(base, g)
    inclusion = IntMatrix.from_columns(
        [tuple(int(j == i) - int(j == i - 1) for j in range(n)) for i in range(1, n)],
        height=n,
    )
    augmentation = IntMatrix.from_rows([[1] * n])
    sequence = ExactSequence(
        inner=ideal,
        middle=regular,
        outer=trivial,
        inject=LatticeMap(ideal, regular, _lift(base, inclusion)),
        surject=LatticeMap(regular, trivial, _lift(base, augmentation)),
    )
    sequence.require_exact()
    return sequence


def zeta_twist(p: int, over_cyclotomic: bool = False) -> GroupLattice:
    """
    M = Z[zeta_p] u with sigma u = zeta u over C_p.

    Without over_cyclotomic the Z[zeta_p]-structure is forgotten and M is the
    Z-lattice with sigma acting by companion(Phi_p).
    """
    g = CyclicGroup(p)
    sigma = companion(cyclotomic(p).coefficients)
    if not over_cyclotomic:
        return GroupLattice(BaseRing.integers(), g, sigma.rows, sigma)
    return GroupLattice(BaseRing.cyclotomic(p), g, sigma.rows, sigma, sigma)


def gaussian_twist() -> GroupLattice:
    """M = Z[i] u over C_2 with sigma u = -u"""
    base = BaseRing.gaussian()
    return tensor_with_base(base, CyclicGroup(2), IntMatrix.from_rows([[-1]]))


class CyclotomicSequence(NamedTuple):
    sequence: ExactSequence
    # orbit sizes when the cokernel is presented as a permutation lattice
    cokernel_orbits: Optional[Tuple[int, ...]]

    @property
    def cokernel_is_permutation(self) -> bool:
        return self.cokernel_orbits is not None


def cyclotomic_sequence(base: BaseRing, g: CyclicGroup) -> CyclotomicSequence:
    """
    0 -> R pi / Phi_n(sigma) -> R pi -> R pi / Psi(sigma) -> 0 with
    Psi = (X^n - 1) / Phi_n, the first map being multiplication by Psi(sigma).

    When n = p^a, Psi = X^(n/p) - 1 and the cokernel is the permutation
    lattice R[pi / <sigma^(n/p)>].
    """
    n = g.order
    phi = cyclotomic(n)
    psi_poly = int_poly([-1] + [0] * (n - 1) + [1]).exquo(phi.as_poly())
    psi = [int(c) for c in reversed(psi_poly.all_coeffs())]

    inner = tensor_with_base(base, g, companion(phi.coefficients))
    regular = regular_lattice(base, g)
    width = euler_phi(n)
    # column j is X^j Psi(X); degrees stay below n so nothing wraps
    multiplication = IntMatrix.from_columns(
        [tuple([0] * j + psi + [0] * (n - len(psi) - j)) for j in range(width)],
        height=n,
    )
    inject = LatticeMap(inner, regular, _lift(base, multiplication))

    q = n - width
    orbits = None
    if psi_poly == int_poly([-1] + [0] * (q - 1) + [1]):
        orbits = (q,)
        outer = permutation_lattice(base, g, orbits)
        folding = IntMatrix.from_rows([[int(j % q == i) for j in range(n)] for i in range(q)], cols=n)
        surject = LatticeMap(regular, outer, _lift(base, folding))
    else:
        outer, surject = quotient_lattice(regular, inject.matrix)
        logger.info(f"Cokernel of the Phi_{n} sequence is not a permutation lattice")

    sequence = ExactSequence(inner, regular, outer, inject, surject)
    sequence.require_exact()
    return CyclotomicSequence(sequence, orbits)
