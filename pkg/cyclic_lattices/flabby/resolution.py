"""
Flabby resolutions 0 -> M -> P -> E -> 0 built by dualizing a coflabby cover.

A permutation lattice Q maps onto M^0 so that Q^h -> (M^0)^h is onto for
every subgroup h. The kernel C is then coflabby, and dualizing
0 -> C -> Q -> M^0 -> 0 gives 0 -> M -> Q^0 -> C^0 -> 0 with C^0 flabby.
"""

import enum
import logging
from dataclasses import dataclass
from math import gcd
from typing import List, Tuple, Union

from ..core.config import settings
from ..core.exceptions import InvariantViolation
from ..exactla.matrix import IntMatrix, Vector
from ..exactla.normal_forms import kernel_basis, solve_integer, solve_matrix
from ..groupring.base_ring import BaseRing
from ..groupring.cyclic import subgroups
from ..lattice.constructors import permutation_lattice
from ..lattice.filtrations import fixed_sublattice
from ..lattice.lattice import ExactSequence, GroupLattice, LatticeMap, dual, sublattice
from .classify import classify

logger = logging.getLogger(__name__)


class CoverStrategy(str, enum.Enum):
    FIXED_BASIS = "fixed_basis"
    GREEDY = "greedy"


@dataclass(frozen=True)
class Resolution(ExactSequence):
    """Flabby resolution with the orbit sizes of its permutation middle term"""
    orbit_sizes: Tuple[int, ...] = ()
    strategy: CoverStrategy = CoverStrategy.FIXED_BASIS


@dataclass(frozen=True)
class SplitWitness:
    section: LatticeMap
    retraction: LatticeMap


@dataclass(frozen=True)
class NoSplit:
    reason: str


def _zeta_powers(m: GroupLattice, v: Vector) -> List[Vector]:
    """v, zeta v, ..., zeta^(deg-1) v (just v over Z)"""
    vectors = [tuple(v)]
    for _ in range(m.base.degree - 1):
        vectors.append(m.zeta_action.apply(vectors[-1]))
    return vectors


def _block_images(m: GroupLattice, e: int, v: Vector) -> IntMatrix:
    """Images of the Z-basis e_j (x) zeta^k of R[pi/pi'] under e_j -> sigma^j v"""
    columns = []
    current = tuple(v)
    for _ in range(e):
        columns.extend(_zeta_powers(m, current))
        current = m.sigma_action.apply(current)
    return IntMatrix.from_columns(columns, height=m.z_rank)


def _orbit_sum_images(m: GroupLattice, e: int, v: Vector, h_exponent: int) -> List[Vector]:
    """
    Images of the h-fixed points of one block R[pi/pi']: h = <sigma^h_exponent>
    moves coset j to j + h_exponent mod e, and its fixed points are spanned by
    orbit sums.
    """
    step = gcd(h_exponent, e)
    powers = [tuple(v)]
    for _ in range(e - 1):
        powers.append(m.sigma_action.apply(powers[-1]))
    images = []
    for start in range(step):
        total = [0] * m.z_rank
        for j in range(start, e, step):
            total = [a + b for a, b in zip(total, powers[j])]
        images.extend(_zeta_powers(m, total))
    return images


def _in_span(span: IntMatrix, v: Vector) -> bool:
    return span.cols > 0 and solve_integer(span, v) is not None


def _fixed_basis_cover(m: GroupLattice) -> List[Tuple[int, Vector]]:
    # subgroups ascending, a block per Z-basis vector (per R-generator over Z[zeta])
    cover = []
    for h in subgroups(m.group):
        span = IntMatrix.hstack(rows=m.z_rank)
        for v in fixed_sublattice(m, h).columns():
            if m.base.is_cyclotomic and _in_span(span, v):
                continue
            cover.append((h.index, v))
            span = IntMatrix.hstack(span, IntMatrix.from_columns(_zeta_powers(m, v), height=m.z_rank))
    return cover


def _greedy_cover(m: GroupLattice) -> List[Tuple[int, Vector]]:
    # subgroups descending, a block only for a fixed vector the cover misses
    cover = []
    for h in reversed(subgroups(m.group)):
        images = []
        for e, v in cover:
            images.extend(_orbit_sum_images(m, e, v, h.generator_exponent))
        span = IntMatrix.from_columns(images, height=m.z_rank)
        for v in fixed_sublattice(m, h).columns():
            if _in_span(span, v):
                continue
            cover.append((h.index, v))
            extra = IntMatrix.from_columns(_orbit_sum_images(m, h.index, v, h.generator_exponent), height=m.z_rank)
            span = IntMatrix.hstack(span, extra)
    return cover


def self_duality(base: BaseRing) -> IntMatrix:
    """
    Unimodular H with H^-1 zeta^T H = zeta: the functional "coefficient of
    zeta^(k-1)" generates Hom_Z(R, Z) as an R-module, and H sends r to r times it.
    """
    k = base.degree
    if not base.is_cyclotomic:
        return IntMatrix.identity(1)
    zeta = base.zeta_matrix()
    powers = [IntMatrix.identity(k)]
    for _ in range(2 * k - 2):
        powers.append(powers[-1] @ zeta)
    return IntMatrix.from_rows([[powers[i + j][k - 1, 0] for j in range(k)] for i in range(k)], cols=k)


def dual_sequence(sequence: ExactSequence) -> ExactSequence:
    """0 -> outer^0 -> middle^0 -> inner^0 -> 0"""
    return sequence.dual()


def _verify(resolution: Resolution) -> None:
    resolution.require_exact()
    expected = permutation_lattice(resolution.middle.base, resolution.middle.group, resolution.orbit_sizes)
    if resolution.middle != expected:
        raise InvariantViolation("Middle term differs from its permutation record")
    if not classify(resolution.outer).is_flabby:
        raise InvariantViolation("Outer term of a flabby resolution is not flabby")


def flabby_resolution(m: GroupLattice, strategy: CoverStrategy = None) -> Resolution:
    """0 -> M -> P -> E -> 0 with P permutation and E flabby"""
    strategy = CoverStrategy(strategy or settings.RESOLUTION_COVER)
    coflabby_target = dual(m)
    cover = _greedy_cover(coflabby_target) if strategy == CoverStrategy.GREEDY else _fixed_basis_cover(coflabby_target)
    orbit_sizes = tuple(e for e, _ in cover)

    cover_lattice = permutation_lattice(m.base, m.group, orbit_sizes)
    cover_map = IntMatrix.hstack(
        *[_block_images(coflabby_target, e, v) for e, v in cover], rows=coflabby_target.z_rank
    )
    onto = LatticeMap(cover_lattice, coflabby_target, cover_map)
    coflabby_kernel, inclusion = sublattice(cover_lattice, kernel_basis(cover_map))
    dualized = ExactSequence(coflabby_kernel, cover_lattice, coflabby_target, inclusion, onto).dual()

    # present Q^0 on the permutation basis again
    h = self_duality(m.base)
    change = IntMatrix.identity(sum(orbit_sizes)).kron(h)
    change_inverse = IntMatrix.identity(sum(orbit_sizes)).kron(h.inverse_unimodular())
    outer = dualized.outer
    resolution = Resolution(
        inner=m,
        middle=cover_lattice,
        outer=outer,
        inject=LatticeMap(m, cover_lattice, change_inverse @ dualized.inject.matrix),
        surject=LatticeMap(cover_lattice, outer, dualized.surject.matrix @ change),
        orbit_sizes=orbit_sizes,
        strategy=strategy,
    )
    try:
        _verify(resolution)
    except InvariantViolation as e:
        logger.error(f"Flabby resolution of {m} failed verification: {e}")
        raise
    logger.info(f"Resolved {m} through a permutation lattice with orbits {list(orbit_sizes)}")
    return resolution


def _section_basis(resolution: Resolution) -> List[IntMatrix]:
    """
    Z-basis of intertwiners E -> P as Z[sigma]-maps: for a block Z[pi/pi'] of
    orbit size e they are x -> sum_j lambda(sigma^-j x) e_j with lambda a
    pi'-invariant functional, one family per coordinate of the base ring.
    """
    outer, middle = resolution.outer, resolution.middle
    degree = middle.base.degree
    inverse = outer.sigma_action.power(outer.group.order - 1)
    basis = []
    offset = 0
    for e in resolution.orbit_sizes:
        invariant = outer.sigma_action.power(e).T - IntMatrix.identity(outer.z_rank)
        twisted = [IntMatrix.identity(outer.z_rank)]
        for _ in range(e - 1):
            twisted.append(twisted[-1] @ inverse)
        for functional in kernel_basis(invariant).columns():
            rows = [twist.T.apply(functional) for twist in twisted]
            for k in range(degree):
                section = [[0] * outer.z_rank for _ in range(middle.z_rank)]
                for j, row in enumerate(rows):
                    section[offset + j * degree + k] = list(row)
                basis.append(IntMatrix.from_rows(section, cols=outer.z_rank))
        offset += e * degree
    return basis


def _flatten(a: IntMatrix) -> Vector:
    return tuple(value for row in a.entries for value in row)


def split_check(resolution: Resolution) -> Union[SplitWitness, NoSplit]:
    """Search for an intertwining section of P -> E by one integer solve"""
    outer, middle, inner = resolution.outer, resolution.middle, resolution.inner
    basis = _section_basis(resolution)
    target = list(_flatten(IntMatrix.identity(outer.z_rank)))
    equations = [list(_flatten(resolution.surject.matrix @ s)) for s in basis]
    if outer.zeta_action is not None:
        target += [0] * (middle.z_rank * outer.z_rank)
        for i, s in enumerate(basis):
            equations[i] += list(_flatten(s @ outer.zeta_action - middle.zeta_action @ s))
    system = IntMatrix.from_columns(equations, height=len(target))
    solution = solve_integer(system, target)
    if solution is None:
        logger.info(f"No intertwining section found for the resolution of {inner}")
        return NoSplit("surjection admits no intertwining section")

    section = IntMatrix.zeros(middle.z_rank, outer.z_rank)
    for coefficient, s in zip(solution, basis):
        if coefficient:
            section = section + s.scale(coefficient)
    complement = IntMatrix.identity(middle.z_rank) - section @ resolution.surject.matrix
    retraction = solve_matrix(resolution.inject.matrix, complement)
    if retraction is None:
        raise InvariantViolation("Complement of the section does not land in the image of M")
    return SplitWitness(
        section=LatticeMap(outer, middle, section),
        retraction=LatticeMap(middle, inner, retraction),
    )
