import logging
import random
from typing import List, Sequence, Tuple

from ..core.exceptions import RankInfeasible
from ..exactla.matrix import IntMatrix
from ..groupring.base_ring import BaseRing
from ..groupring.cyclic import CyclicGroup, divisors_of, euler_phi
from ..groupring.cyclotomic import cyclotomic_companion
from .constructors import cyclic_permutation, tensor_with_base
from .lattice import GroupLattice, direct_sum_all

logger = logging.getLogger(__name__)

BLOCK_KINDS = ("permutation", "cyclotomic")
ENTRY_BOUND = 2


def _block_menu(g: CyclicGroup, kinds: Sequence[str]) -> List[Tuple[str, int, int]]:
    """(kind, index, Z-rank before tensoring with the base) for every admissible block"""
    menu = []
    for d in divisors_of(g.order):
        if "permutation" in kinds:
            menu.append(("permutation", d, d))
        if "cyclotomic" in kinds and d > 1:
            menu.append(("cyclotomic", d, euler_phi(d)))
    return menu


def _draw_blocks(rng: random.Random, menu, target: int) -> List[Tuple[str, int, int]]:
    # reachable[r] is True when rank r can be completed from the menu
    sizes = sorted({size for _, _, size in menu})
    reachable = [False] * (target + 1)
    reachable[0] = True
    for r in range(1, target + 1):
        reachable[r] = any(size <= r and reachable[r - size] for size in sizes)
    if not reachable[target]:
        raise RankInfeasible(f"No block combination has Z-rank {target}")
    chosen = []
    remaining = target
    while remaining:
        options = [block for block in menu if block[2] <= remaining and reachable[remaining - block[2]]]
        block = rng.choice(options)
        chosen.append(block)
        remaining -= block[2]
    return chosen


def _random_unimodular(rng: random.Random, size: int) -> IntMatrix:
    """Product of at most size^2 elementary operations with entries bounded by ENTRY_BOUND"""
    if size < 2:
        return IntMatrix.identity(size)
    change = IntMatrix.identity(size).to_list()
    for _ in range(rng.randint(0, size * size)):
        target, source = rng.sample(range(size), 2)
        factor = rng.choice((-1, 1))
        # column target += factor * column source
        candidate = [row[:] for row in change]
        for row in candidate:
            row[target] += factor * row[source]
        if all(abs(value) <= ENTRY_BOUND for row in candidate for value in row):
            change = candidate
    return IntMatrix.from_rows(change, cols=size)


def random_lattice(
    g: CyclicGroup,
    z_rank: int,
    seed: int,
    base: BaseRing = None,
    block_kinds: Sequence[str] = BLOCK_KINDS,
) -> GroupLattice:
    """
    Conjugate a random sum of permutation blocks Z[pi/pi_d] and companion(Phi_d)
    blocks by a random small unimodular matrix. Deterministic in seed.
    """
    base = base or BaseRing.integers()
    if z_rank < 0:
        raise RankInfeasible(f"Negative rank {z_rank}")
    if z_rank % base.degree:
        raise RankInfeasible(f"Z-rank {z_rank} is not a multiple of {base.degree} over {base}")
    rng = random.Random(seed)
    blocks = _draw_blocks(rng, _block_menu(g, block_kinds), z_rank // base.degree)
    parts = []
    for kind, d, _ in blocks:
        sigma = cyclic_permutation(d) if kind == "permutation" else cyclotomic_companion(d)
        parts.append(tensor_with_base(base, g, sigma))
    lattice = direct_sum_all(base, g, parts)
    change = _random_unimodular(rng, z_rank)
    logger.debug(f"Random lattice over {g} from blocks {[(kind, d) for kind, d, _ in blocks]}")
    return lattice.conjugate(change)
