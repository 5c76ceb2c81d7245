import logging
from typing import Any, Dict, Optional

from sympy import isprime

from ..cohomology.tate import TateProfileEntry, h_one, tate_minus_one, tate_profile, tate_zero
from ..core.exceptions import BadDivisor
from ..flabby.classify import Classification, Witness, classify
from ..flabby.decomposition import omega_components, phi_decompose
from ..flabby.recognition import PermutationDecomposition, permutation_recognize_cp
from ..flabby.resolution import flabby_resolution
from ..groupring.base_ring import RingKind
from ..groupring.cyclic import Subgroup
from ..lattice.lattice import GroupLattice
from ..schemas.schemas import (
    ClassificationResponse,
    DecompositionResponse,
    ExactnessResponse,
    InvariantsResponse,
    LatticeDocument,
    MobiusTermResponse,
    PermutationProfileResponse,
    PhiComponentResponse,
    ResolutionResponse,
    TateEntryResponse,
    TateModuleResponse,
    WitnessResponse,
)

logger = logging.getLogger(__name__)


def _entry(h: Subgroup, entry: TateProfileEntry) -> TateEntryResponse:
    return TateEntryResponse(
        subgroup_order=h.order,
        minus_one=TateModuleResponse.from_orm(entry.minus_one),
        zero=TateModuleResponse.from_orm(entry.zero),
        one=TateModuleResponse.from_orm(entry.one),
    )


def _witness(witness: Optional[Witness]) -> Optional[WitnessResponse]:
    if witness is None:
        return None
    return WitnessResponse(subgroup_order=witness.subgroup.order, group=TateModuleResponse.from_orm(witness.group))


def _classification(result: Classification) -> ClassificationResponse:
    return ClassificationResponse(
        is_flabby=result.is_flabby,
        is_coflabby=result.is_coflabby,
        flabby_witness=_witness(result.flabby_witness),
        coflabby_witness=_witness(result.coflabby_witness),
    )


def cmd_cohomology(m: GroupLattice, subgroup: int = None, all_subgroups: bool = False) -> Dict[str, Any]:
    """Tate groups at one subgroup (default: the whole group) or at all of them"""
    if all_subgroups:
        entries = [_entry(h, entry) for h, entry in tate_profile(m).items()]
    else:
        try:
            h = m.group.subgroup(m.group.order if subgroup is None else subgroup)
        except BadDivisor as e:
            logger.error(f"Bad subgroup request: {e}")
            raise
        entry = TateProfileEntry(tate_minus_one(m, h), tate_zero(m, h), h_one(m, h))
        entries = [_entry(h, entry)]
    return {"lattice": str(m), "subgroups": [entry.dict() for entry in entries]}


def cmd_classify(m: GroupLattice) -> Dict[str, Any]:
    """Flabby and coflabby verdicts, plus the permutation profile over C_p"""
    results = {"lattice": str(m), "classification": _classification(classify(m)).dict()}
    p = m.group.order
    local = m.base.kind == RingKind.INTEGERS or (m.base.kind == RingKind.LOCALIZED and m.base.p == p)
    if isprime(p) and local:
        outcome = permutation_recognize_cp(m, p)
        if isinstance(outcome, PermutationDecomposition):
            profile = PermutationProfileResponse(recognized=True, a=outcome.a, c=outcome.c)
        else:
            profile = PermutationProfileResponse(recognized=False, reason=outcome.reason)
        results["permutation_profile"] = profile.dict()
    return results


def cmd_resolve(m: GroupLattice) -> Dict[str, Any]:
    resolution = flabby_resolution(m)
    response = ResolutionResponse(
        strategy=resolution.strategy.value,
        orbit_sizes=list(resolution.orbit_sizes),
        permutation=LatticeDocument.from_lattice(resolution.middle),
        flabby=LatticeDocument.from_lattice(resolution.outer),
        inject=resolution.inject.matrix.to_list(),
        surject=resolution.surject.matrix.to_list(),
        exactness=ExactnessResponse.from_orm(resolution.verify()),
        flabby_classification=_classification(classify(resolution.outer)),
    )
    return {"lattice": str(m), "resolution": response.dict()}


def cmd_decompose(m: GroupLattice) -> Dict[str, Any]:
    decomposition = phi_decompose(m)
    omega = omega_components(m)
    response = DecompositionResponse(
        components=[
            PhiComponentResponse(
                index=c.index,
                rank=c.rank,
                z_rank=c.lattice.z_rank,
                torsion=InvariantsResponse.from_orm(c.torsion),
                steinitz=str(c.steinitz),
            )
            for c in decomposition.components
        ],
        mobius_terms=[MobiusTermResponse.from_orm(term) for term in decomposition.mobius_terms],
        rank_identity=decomposition.rank_identity,
        mobius_identity=decomposition.mobius_identity,
        omega_injective=omega.injective,
        omega_index=omega.index,
    )
    return {"lattice": str(m), "decomposition": response.dict()}
