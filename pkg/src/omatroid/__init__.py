"""Exact arithmetic for matroid and orthogonal matroid coordinate vectors.

Everything here runs over exact rings (rationals, prime fields, integers
with restricted units): axiom checks with minimal witnesses, quadratic
exchange-equation sweeps for rank-r and full coordinate vectors, pfaffians,
matrix reconstruction from vectors, and small exhaustive censuses backed by
certified counting bounds.
"""

__version__ = "0.1.0"

from .census import (
    ASYMPTOTIC_GAP_NOTE,
    LABELED_COUNT_NOTE,
    BoundCheck,
    CensusReport,
    RealizableSetsDemo,
    enumerate_orthogonal,
    find_regular_representation,
    realizable_sets_demo,
    representability_census,
    verify_nelson_chain,
)
from .errors import (
    CapabilityError,
    ClassificationError,
    InputError,
    MapUndefinedError,
    MembershipError,
    OmatroidError,
    RankError,
    ScalingError,
)
from .exactalg import (
    GF,
    Homomorphism,
    IntegerRing,
    Matrix,
    PartialField,
    PrimeField,
    QQ,
    REGULAR,
    RationalField,
    Ring,
    SkewMatrix,
    ZZ,
    all_principal_pfaffians,
    apply_hom,
    apply_hom_value,
    determinant,
    identity_hom,
    pfaffian,
    principal_submatrix,
    rational_residue_hom,
    residue_hom,
)
from .groundset import (
    GroundSet,
    SubsetMask,
    format_subset_key,
    mask_elements,
    mask_of_elements,
    masks_of_size,
    parse_subset_key,
    sign_xst,
    subsets_of_size,
    sym_diff,
)
from .matroid import (
    BasisFamily,
    find_smaller_basis,
    is_matroid,
    is_matroid_strong,
    is_orthogonal,
    is_orthogonal_strong,
    twist,
)
from .plucker import (
    GPVerdict,
    PluckerClassification,
    PluckerVector,
    check_gp_3term,
    check_gp_full,
    classify_plucker,
    plucker_from_matrix,
    plucker_support,
    reconstruct_plucker,
)
from .verdicts import AxiomVerdict, Label
from .wick import (
    WickClassification,
    WickPairVerdict,
    WickRepresentation,
    WickVector,
    check_wick_4term,
    check_wick_full,
    classify_wick,
    reconstruct_wick,
    twist_wick,
    wick_from_representation,
    wick_support,
)

__all__ = [
    "__version__",
    "ASYMPTOTIC_GAP_NOTE",
    "LABELED_COUNT_NOTE",
    "AxiomVerdict",
    "BasisFamily",
    "BoundCheck",
    "CapabilityError",
    "CensusReport",
    "ClassificationError",
    "GF",
    "GPVerdict",
    "GroundSet",
    "Homomorphism",
    "InputError",
    "IntegerRing",
    "Label",
    "MapUndefinedError",
    "Matrix",
    "MembershipError",
    "OmatroidError",
    "PartialField",
    "PluckerClassification",
    "PluckerVector",
    "PrimeField",
    "QQ",
    "REGULAR",
    "RankError",
    "RationalField",
    "RealizableSetsDemo",
    "Ring",
    "ScalingError",
    "SkewMatrix",
    "SubsetMask",
    "WickClassification",
    "WickPairVerdict",
    "WickRepresentation",
    "WickVector",
    "ZZ",
    "all_principal_pfaffians",
    "apply_hom",
    "apply_hom_value",
    "check_gp_3term",
    "check_gp_full",
    "check_wick_4term",
    "check_wick_full",
    "classify_plucker",
    "classify_wick",
    "determinant",
    "enumerate_orthogonal",
    "find_regular_representation",
    "find_smaller_basis",
    "format_subset_key",
    "identity_hom",
    "is_matroid",
    "is_matroid_strong",
    "is_orthogonal",
    "is_orthogonal_strong",
    "mask_elements",
    "mask_of_elements",
    "masks_of_size",
    "parse_subset_key",
    "pfaffian",
    "plucker_from_matrix",
    "plucker_support",
    "principal_submatrix",
    "rational_residue_hom",
    "realizable_sets_demo",
    "reconstruct_plucker",
    "reconstruct_wick",
    "representability_census",
    "residue_hom",
    "sign_xst",
    "subsets_of_size",
    "sym_diff",
    "twist",
    "twist_wick",
    "verify_nelson_chain",
    "wick_from_representation",
    "wick_support",
]
