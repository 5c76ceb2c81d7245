from pydantic import BaseModel, Field, StrictInt, conint, validator
from typing import Any, Dict, List, Optional

from ..core.config import settings
from ..exactla.matrix import IntMatrix
from ..groupring.base_ring import BaseRing, RingKind
from ..groupring.cyclic import CyclicGroup
from ..lattice.lattice import GroupLattice

Matrix = List[List[StrictInt]]


def _square(value: Optional[Matrix], values: Dict[str, Any], name: str) -> Optional[Matrix]:
    if value is None:
        return value
    rank = values.get("rank")
    if rank is not None and (len(value) != rank or any(len(row) != rank for row in value)):
        raise ValueError(f"{name} must be a {rank}x{rank} matrix")
    return value


class BaseRingDocument(BaseModel):
    kind: RingKind
    p: Optional[conint(strict=True, ge=2)] = Field(None)
    m: Optional[conint(strict=True, ge=1)] = Field(None)

    class Config:
        orm_mode = True


class GroupDocument(BaseModel):
    type: str = Field("cyclic", regex="^cyclic$")
    order: conint(strict=True, ge=1) = Field(...)

    class Config:
        orm_mode = True


class LatticeDocument(BaseModel):
    """Text form of a lattice; rank is the Z-rank, the size of every action matrix"""
    format_version: int = settings.DOCUMENT_FORMAT_VERSION
    base_ring: BaseRingDocument
    group: GroupDocument
    rank: conint(strict=True, ge=0) = Field(...)
    sigma: Matrix
    zeta: Optional[Matrix] = None

    @validator("format_version")
    def supported_version(cls, v):
        if v != settings.DOCUMENT_FORMAT_VERSION:
            raise ValueError(f"unsupported format version {v}")
        return v

    @validator("sigma")
    def sigma_is_square(cls, v, values):
        return _square(v, values, "sigma")

    @validator("zeta")
    def zeta_is_square(cls, v, values):
        return _square(v, values, "zeta")

    def to_lattice(self) -> GroupLattice:
        base = BaseRing(self.base_ring.kind, p=self.base_ring.p, m=self.base_ring.m)
        zeta = IntMatrix.from_rows(self.zeta, cols=self.rank) if self.zeta is not None else None
        return GroupLattice(
            base=base,
            group=CyclicGroup(self.group.order),
            z_rank=self.rank,
            sigma_action=IntMatrix.from_rows(self.sigma, cols=self.rank),
            zeta_action=zeta,
        )

    @classmethod
    def from_lattice(cls, m: GroupLattice) -> "LatticeDocument":
        return cls(
            base_ring=BaseRingDocument.from_orm(m.base),
            group=GroupDocument(order=m.group.order),
            rank=m.z_rank,
            sigma=m.sigma_action.to_list(),
            zeta=m.zeta_action.to_list() if m.zeta_action is not None else None,
        )


class InvariantsResponse(BaseModel):
    free_rank: int
    torsion: List[int]

    class Config:
        orm_mode = True


class TateModuleResponse(BaseModel):
    invariants: InvariantsResponse
    zeta_blocks: Optional[List[int]]

    class Config:
        orm_mode = True


class TateEntryResponse(BaseModel):
    subgroup_order: int
    minus_one: TateModuleResponse
    zero: TateModuleResponse
    one: TateModuleResponse


class WitnessResponse(BaseModel):
    subgroup_order: int
    group: TateModuleResponse


class ClassificationResponse(BaseModel):
    is_flabby: bool
    is_coflabby: bool
    flabby_witness: Optional[WitnessResponse]
    coflabby_witness: Optional[WitnessResponse]


class PermutationProfileResponse(BaseModel):
    recognized: bool
    a: Optional[int]
    c: Optional[int]
    reason: Optional[str]


class ExactnessResponse(BaseModel):
    injective: bool
    surjective: bool
    composite_zero: bool
    kernel_in_image: bool
    rank_balance: bool

    class Config:
        orm_mode = True


class ResolutionResponse(BaseModel):
    strategy: str
    orbit_sizes: List[int]
    permutation: LatticeDocument
    flabby: LatticeDocument
    inject: Matrix
    surject: Matrix
    exactness: ExactnessResponse
    flabby_classification: ClassificationResponse


class PhiComponentResponse(BaseModel):
    index: int
    rank: int
    z_rank: int
    torsion: InvariantsResponse
    steinitz: str


class MobiusTermResponse(BaseModel):
    index: int
    coefficient: int
    invariants: InvariantsResponse

    class Config:
        orm_mode = True


class DecompositionResponse(BaseModel):
    components: List[PhiComponentResponse]
    mobius_terms: List[MobiusTermResponse]
    rank_identity: bool
    mobius_identity: bool
    omega_injective: bool
    omega_index: Optional[int]


class CriterionResponse(BaseModel):
    prime: int
    maximal: bool
    radical: str
    cofactor: str
    quotient: str
    gcd: str


class MaximalityResponse(BaseModel):
    n: int
    holds: bool
    checks: List[CriterionResponse]
    discriminant_primes: List[int]
    discriminant_primes_divide_n: bool
    note: str


class HypothesisResponse(BaseModel):
    prime: int
    non_invertible: bool
    unramified: bool
    ramification_index: int
    note: str

    class Config:
        orm_mode = True


class CounterexampleResponse(BaseModel):
    prime: int
    gaussian: bool
    ramification_index: int
    hypotheses_hold: bool
    hypotheses: List[HypothesisResponse]
    minus_one_m: TateModuleResponse
    zero_p: TateModuleResponse
    zero_e: TateModuleResponse
    length_minus_one_m: int
    length_zero_p: int
    length_zero_e: int
    length_identity: bool
    p_blocks_uniform: bool
    verdict: str


class Report(BaseModel):
    command: str
    input_digest: str
    results: Dict[str, Any]
    wall_clock_seconds: float = Field(..., ge=0)
