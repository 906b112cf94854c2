from .certificate import (
    ConditionA,
    ConditionB,
    SfmCertificate,
    StateWitness,
    check_condition_a,
    check_condition_b,
    has_no_sfm,
    is_sfm_free,
)

__all__ = [
    "ConditionA",
    "ConditionB",
    "SfmCertificate",
    "StateWitness",
    "check_condition_a",
    "check_condition_b",
    "has_no_sfm",
    "is_sfm_free",
]
