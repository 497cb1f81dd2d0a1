"""Exact slope-stability analysis for tangent bundles of smooth complete toric varieties.

Everything is integer/Fraction arithmetic; no floats anywhere.  The usual
entry points:

    >>> from toricstab import construct_hirzebruch, anticanonical, decide
    >>> f = construct_hirzebruch(1)
    >>> decide(f, anticanonical(f)).status.value
    'semistable'
"""

from .charts import (
    Chart,
    MonomialDerivation,
    chart_of,
    expand_in_chart,
    in_semigroup,
    is_regular,
    rank_one_exists,
    reexpand,
    weight_space_dim,
)
from .errors import (
    BadDimension,
    BadIndex,
    BadRank,
    BadTwist,
    DimMismatch,
    InconsistentRank,
    InvalidFan,
    InvalidJumpData,
    InvalidLambda,
    NonAmple,
    NotMaximal,
    NotSmoothCone,
    ParseError,
    RankMismatch,
    ToricStabError,
    ZeroVector,
)
from .fan import (
    Fan,
    catalog_fano4,
    cone_rays,
    construct_hirzebruch,
    construct_p1_bundle,
    construct_product,
    construct_proj_split,
    construct_projective_space,
    is_cone,
    make_fan,
    validate_fan,
)
from .polytope import (
    Polytope,
    ToricDivisor,
    VolumeTable,
    anticanonical,
    divisor,
    facet_volumes,
    is_ample,
    is_reflexive,
    polytope_from_divisor,
)
from .sheafdata import (
    JumpData,
    degree_monotonicity_check,
    degree_of,
    jump_data,
    jump_to_lambda_matrix,
    jump_to_lambda_vector,
    lambda_matrix_to_jump,
    lambda_vector_to_jump,
    rank_of,
    slope_of,
    slope_upper_bound,
    tangent_jump_data,
    validate_lambda_matrix,
    validate_lambda_vector,
)
from .stability import (
    Certificate,
    Stability,
    StabilityVerdict,
    SubsheafCandidate,
    admissible_slope_bound,
    candidate_slope,
    certificate,
    decide,
    enumerate_candidates,
    hirzebruch_closed_form,
)

__version__ = "0.1.0"

__all__ = [
    "BadDimension", "BadIndex", "BadRank", "BadTwist", "Certificate",
    "Chart", "DimMismatch", "Fan", "InconsistentRank", "InvalidFan",
    "InvalidJumpData", "InvalidLambda", "JumpData", "MonomialDerivation",
    "NonAmple", "NotMaximal", "NotSmoothCone", "ParseError", "Polytope",
    "RankMismatch", "Stability", "StabilityVerdict", "SubsheafCandidate",
    "ToricDivisor", "ToricStabError", "VolumeTable", "ZeroVector",
    "admissible_slope_bound", "anticanonical", "candidate_slope",
    "catalog_fano4", "certificate", "chart_of", "cone_rays",
    "construct_hirzebruch", "construct_p1_bundle", "construct_product",
    "construct_proj_split", "construct_projective_space", "decide",
    "degree_monotonicity_check", "degree_of", "divisor",
    "enumerate_candidates", "expand_in_chart", "facet_volumes",
    "hirzebruch_closed_form", "in_semigroup", "is_ample", "is_cone",
    "is_reflexive", "is_regular", "jump_data", "jump_to_lambda_matrix",
    "jump_to_lambda_vector", "lambda_matrix_to_jump",
    "lambda_vector_to_jump", "make_fan", "polytope_from_divisor",
    "rank_of", "rank_one_exists", "reexpand", "slope_of",
    "slope_upper_bound", "tangent_jump_data", "validate_fan",
    "validate_lambda_matrix", "validate_lambda_vector",
    "weight_space_dim",
]
