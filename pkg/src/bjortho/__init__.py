"""Birkhoff-James orthogonality and pointwise symmetry on finite atomic
measure spaces, with a brute-force norm-minimization oracle."""

from .core import (
    DEFAULT_TOL,
    AlignmentError,
    DomainError,
    Field,
    FunctionVec,
    MeasureSpace,
    Side,
    SizeError,
    SpaceError,
    SpaceFamily,
    SpaceKind,
    SymmetryVerdict,
    Tolerances,
    Verdict,
    Witness,
    WitnessLogicError,
    conjugate_exponent,
    dual_norm,
    norm,
    pairing_action,
    sgn,
)
from .dispatch import asymmetry_witness, bj_orthogonal, classify, nonsmooth_additivity_pair
from .geometry import HullQuery, contains_origin, contains_origin_bruteforce
from .l1 import (
    L1Evidence,
    bj_orthogonal_l1,
    classify_l1,
    is_support_functional_l1,
    l1_asymmetry_witness,
    l1_evidence,
    l1_nonsmooth_pair,
    l1_smoothness_functionals,
)
from .lp import (
    LpEvidence,
    bj_orthogonal_lp,
    classify_lp,
    lp_asymmetry_witness,
    lp_derivative_at_zero,
    lp_pairing,
    support_functional_lp,
)
from .oracle import (
    OracleResult,
    OracleVerdict,
    OrthogonalDirection,
    grid_is_unimodal,
    line_values,
    oracle_orthogonal,
    orthogonal_direction,
    random_instance,
)
from .sup import (
    AttainSet,
    attain_set,
    bj_orthogonal_sup,
    classify_sup,
    sup_asymmetry_witness,
    sup_nonsmooth_pair,
)

__version__ = "0.1.0"

__all__ = [
    "AlignmentError",
    "AttainSet",
    "DEFAULT_TOL",
    "DomainError",
    "Field",
    "FunctionVec",
    "HullQuery",
    "L1Evidence",
    "LpEvidence",
    "MeasureSpace",
    "OracleResult",
    "OracleVerdict",
    "OrthogonalDirection",
    "Side",
    "SizeError",
    "SpaceError",
    "SpaceFamily",
    "SpaceKind",
    "SymmetryVerdict",
    "Tolerances",
    "Verdict",
    "Witness",
    "WitnessLogicError",
    "asymmetry_witness",
    "attain_set",
    "bj_orthogonal",
    "bj_orthogonal_l1",
    "bj_orthogonal_lp",
    "bj_orthogonal_sup",
    "classify",
    "classify_l1",
    "classify_lp",
    "classify_sup",
    "conjugate_exponent",
    "contains_origin",
    "contains_origin_bruteforce",
    "dual_norm",
    "grid_is_unimodal",
    "is_support_functional_l1",
    "l1_asymmetry_witness",
    "l1_evidence",
    "l1_nonsmooth_pair",
    "l1_smoothness_functionals",
    "line_values",
    "lp_asymmetry_witness",
    "lp_derivative_at_zero",
    "lp_pairing",
    "nonsmooth_additivity_pair",
    "norm",
    "oracle_orthogonal",
    "orthogonal_direction",
    "pairing_action",
    "random_instance",
    "sgn",
    "sup_asymmetry_witness",
    "sup_nonsmooth_pair",
    "support_functional_lp",
]
