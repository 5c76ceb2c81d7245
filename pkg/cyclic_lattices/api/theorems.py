from typing import Any, Dict

from ..dedekind.criterion import verify_theorem_3_3
from ..flabby.counterexample import counterexample_4_3
from ..schemas.schemas import (
    CounterexampleResponse,
    CriterionResponse,
    HypothesisResponse,
    MaximalityResponse,
    TateModuleResponse,
)


def cmd_dedekind(n: int) -> Dict[str, Any]:
    report = verify_theorem_3_3(n)
    response = MaximalityResponse(
        n=report.n,
        holds=report.holds,
        checks=[
            CriterionResponse(
                prime=check.prime,
                maximal=check.maximal,
                radical=str(check.radical),
                cofactor=str(check.cofactor),
                quotient=str(check.quotient),
                gcd=str(check.common),
            )
            for check in report.checks
        ],
        discriminant_primes=list(report.discriminant_primes),
        discriminant_primes_divide_n=report.discriminant_primes_divide_n,
        note=report.note,
    )
    return {"maximality": response.dict()}


def cmd_example_4_3(p: int = None, gaussian: bool = False) -> Dict[str, Any]:
    report = counterexample_4_3(p, gaussian=gaussian)
    response = CounterexampleResponse(
        prime=report.prime,
        gaussian=report.gaussian,
        ramification_index=report.ramification_index,
        hypotheses_hold=report.hypotheses.holds,
        hypotheses=[HypothesisResponse.from_orm(entry) for entry in report.hypotheses.primes],
        minus_one_m=TateModuleResponse.from_orm(report.minus_one_m),
        zero_p=TateModuleResponse.from_orm(report.zero_p),
        zero_e=TateModuleResponse.from_orm(report.zero_e),
        length_minus_one_m=report.length_minus_one_m,
        length_zero_p=report.length_zero_p,
        length_zero_e=report.length_zero_e,
        length_identity=report.length_identity,
        p_blocks_uniform=report.p_blocks_uniform,
        verdict=report.verdict.value,
    )
    return {"example": response.dict()}
