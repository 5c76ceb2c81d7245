import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

from ..core.exceptions import InvariantViolation, MismatchedBase
from ..exactla.matrix import IntMatrix
from ..exactla.normal_forms import cokernel, kernel_basis, smith, solve_matrix
from ..groupring.base_ring import BaseRing
from ..groupring.cyclic import CyclicGroup, Subgroup
from ..groupring.cyclotomic import cyclotomic

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GroupLattice:
    """
    An R[pi]-lattice: a free Z-module of rank z_rank with commuting actions of
    sigma and, over a cyclotomic base, of zeta.
    """
    base: BaseRing
    group: CyclicGroup
    z_rank: int
    sigma_action: IntMatrix
    zeta_action: Optional[IntMatrix] = None

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        n = self.group.order
        if self.sigma_action.shape != (self.z_rank, self.z_rank):
            raise InvariantViolation(
                f"sigma action has shape {self.sigma_action.shape}, expected rank {self.z_rank}"
            )
        if not self.sigma_action.power(n).is_identity():
            raise InvariantViolation(f"sigma^{n} is not the identity")
        if self.base.is_cyclotomic != (self.zeta_action is not None):
            raise InvariantViolation("A zeta action is required exactly over a cyclotomic base")
        if self.zeta_action is not None:
            if self.zeta_action.shape != (self.z_rank, self.z_rank):
                raise InvariantViolation(f"zeta action has shape {self.zeta_action.shape}")
            if self.z_rank % self.base.degree:
                raise InvariantViolation(
                    f"Z-rank {self.z_rank} is not a multiple of phi({self.base.m}) = {self.base.degree}"
                )
            if not cyclotomic(self.base.m).of_matrix(self.zeta_action).is_zero():
                raise InvariantViolation(f"Phi_{self.base.m}(zeta) does not vanish")
            if not self.zeta_action.commutes_with(self.sigma_action):
                raise InvariantViolation("zeta and sigma actions do not commute")

    @property
    def rank(self) -> int:
        """Rank over the base ring"""
        return self.z_rank // self.base.degree

    def actions(self) -> List[IntMatrix]:
        return [self.sigma_action] + ([self.zeta_action] if self.zeta_action is not None else [])

    def subgroup_generator(self, h: Subgroup) -> IntMatrix:
        """Action of sigma^(n/d), the generator of h"""
        if h.parent != self.group:
            raise MismatchedBase(f"Subgroup of {h.parent} used with a lattice over {self.group}")
        return self.sigma_action.power(h.generator_exponent)

    def with_actions(self, sigma: IntMatrix, zeta: Optional[IntMatrix], group: CyclicGroup = None) -> "GroupLattice":
        return GroupLattice(self.base, group or self.group, sigma.rows, sigma, zeta)

    def conjugate(self, change: IntMatrix) -> "GroupLattice":
        """Same lattice in the basis given by the columns of a unimodular matrix"""
        inverse = change.inverse_unimodular()
        zeta = inverse @ self.zeta_action @ change if self.zeta_action is not None else None
        return self.with_actions(inverse @ self.sigma_action @ change, zeta)

    def __str__(self) -> str:
        return f"{self.base}[C_{self.group.order}]-lattice of Z-rank {self.z_rank}"


@dataclass(frozen=True)
class LatticeMap:
    """A Z-linear map intertwining the sigma (and zeta) actions"""
    source: GroupLattice
    target: GroupLattice
    matrix: IntMatrix

    def __post_init__(self):
        if self.matrix.shape != (self.target.z_rank, self.source.z_rank):
            raise InvariantViolation(
                f"Map matrix has shape {self.matrix.shape}, expected "
                f"{(self.target.z_rank, self.source.z_rank)}"
            )
        for source_action, target_action in zip(self.source.actions(), self.target.actions()):
            if self.matrix @ source_action != target_action @ self.matrix:
                raise InvariantViolation("Map does not intertwine the group actions")

    def is_injective(self) -> bool:
        return smith(self.matrix).rank == self.source.z_rank

    def is_surjective(self) -> bool:
        decomposition = smith(self.matrix)
        return decomposition.rank == self.target.z_rank and all(
            value == 1 for value in decomposition.diagonal[: decomposition.rank]
        )

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def compose(self, inner: "LatticeMap") -> "LatticeMap":
        """self after inner"""
        return LatticeMap(inner.source, self.target, self.matrix @ inner.matrix)

    def dual(self) -> "LatticeMap":
        return LatticeMap(dual(self.target), dual(self.source), self.matrix.T)


@dataclass(frozen=True)
class ExactnessWitness:
    injective: bool
    surjective: bool
    composite_zero: bool
    kernel_in_image: bool
    rank_balance: bool

    @property
    def is_exact(self) -> bool:
        return all((self.injective, self.surjective, self.composite_zero, self.kernel_in_image, self.rank_balance))


@dataclass(frozen=True)
class ExactSequence:
    """0 -> inner -> middle -> outer -> 0"""
    inner: GroupLattice
    middle: GroupLattice
    outer: GroupLattice
    inject: LatticeMap
    surject: LatticeMap

    def verify(self) -> ExactnessWitness:
        if self.inject.source != self.inner or self.inject.target != self.middle:
            raise InvariantViolation("Injection does not run from inner to middle")
        if self.surject.source != self.middle or self.surject.target != self.outer:
            raise InvariantViolation("Surjection does not run from middle to outer")
        kernel = kernel_basis(self.surject.matrix)
        return ExactnessWitness(
            injective=self.inject.is_injective(),
            surjective=self.surject.is_surjective(),
            composite_zero=self.surject.compose(self.inject).is_zero(),
            kernel_in_image=solve_matrix(self.inject.matrix, kernel) is not None,
            rank_balance=self.inner.z_rank + self.outer.z_rank == self.middle.z_rank,
        )

    def require_exact(self) -> ExactnessWitness:
        witness = self.verify()
        if not witness.is_exact:
            logger.error(f"Sequence failed exactness checks: {witness}")
            raise InvariantViolation(f"Sequence is not exact: {witness}")
        return witness

    def dual(self) -> "ExactSequence":
        return ExactSequence(
            inner=dual(self.outer),
            middle=dual(self.middle),
            outer=dual(self.inner),
            inject=self.surject.dual(),
            surject=self.inject.dual(),
        )


def zero_lattice(base: BaseRing, group: CyclicGroup) -> GroupLattice:
    empty = IntMatrix.zeros(0, 0)
    return GroupLattice(base, group, 0, empty, empty if base.is_cyclotomic else None)


def dual(m: GroupLattice) -> GroupLattice:
    """Hom(M, R): sigma acts by the inverse transpose, zeta by the transpose"""
    sigma = m.sigma_action.power(m.group.order - 1).T
    zeta = m.zeta_action.T if m.zeta_action is not None else None
    return m.with_actions(sigma, zeta)


def direct_sum(a: GroupLattice, b: GroupLattice) -> GroupLattice:
    if a.base != b.base or a.group != b.group:
        raise MismatchedBase(f"Cannot add {a} and {b}")
    zeta = (
        IntMatrix.block_diagonal(a.zeta_action, b.zeta_action)
        if a.zeta_action is not None
        else None
    )
    return a.with_actions(IntMatrix.block_diagonal(a.sigma_action, b.sigma_action), zeta)


def direct_sum_all(base: BaseRing, group: CyclicGroup, parts: List[GroupLattice]) -> GroupLattice:
    result = zero_lattice(base, group)
    for part in parts:
        result = direct_sum(result, part)
    return result


def restrict(m: GroupLattice, h: Subgroup) -> GroupLattice:
    """The same module viewed over h, with sigma replaced by sigma^(n/d)"""
    return m.with_actions(m.subgroup_generator(h), m.zeta_action, group=h.as_group())


def descend(m: GroupLattice, k: int) -> GroupLattice:
    """View a lattice on which sigma^k acts trivially as a lattice over pi / <sigma^k>"""
    if m.group.order % k:
        raise InvariantViolation(f"{k} does not divide the group order {m.group.order}")
    if not m.sigma_action.power(k).is_identity():
        raise InvariantViolation(f"sigma^{k} does not act trivially")
    return m.with_actions(m.sigma_action, m.zeta_action, group=CyclicGroup(k))


def _induced(basis: IntMatrix, action: IntMatrix) -> IntMatrix:
    induced = solve_matrix(basis, action @ basis)
    if induced is None:
        raise InvariantViolation("Sublattice is not invariant under the action")
    return induced


def sublattice(m: GroupLattice, basis: IntMatrix) -> Tuple[GroupLattice, LatticeMap]:
    """Invariant sublattice spanned by independent columns, with its inclusion"""
    sigma = _induced(basis, m.sigma_action)
    zeta = _induced(basis, m.zeta_action) if m.zeta_action is not None else None
    inner = m.with_actions(sigma, zeta)
    return inner, LatticeMap(inner, m, basis)


def quotient_lattice(m: GroupLattice, basis: IntMatrix) -> Tuple[GroupLattice, LatticeMap]:
    """M / saturation(span of basis), torsion-free, with its projection"""
    quotient = cokernel(basis)
    projection, section = quotient.projection, quotient.section
    sigma = projection @ m.sigma_action @ section
    zeta = projection @ m.zeta_action @ section if m.zeta_action is not None else None
    outer = m.with_actions(sigma, zeta)
    return outer, LatticeMap(m, outer, projection)
