"""Signatures of algebraic duality complexes over group algebras.

The package builds finite-dimensional chain complexes with a self-adjoint
degree-reversing duality, verifies their axioms, computes the K-theoretic
signature class through three routes that provably agree, handles complexes
with boundary and their bordism identities, and derives all of it from
oriented triangulated manifolds with finite group actions.
"""

from .bordism import (
    BlockDecomposition,
    BoundaryZeroReport,
    ComplexWithBoundary,
    ConeIdentitiesReport,
    CwbReport,
    boundary_complex,
    boundary_signature_is_zero,
    decompose,
    hyperbolic,
    verify_cone_identities,
    verify_with_boundary,
)
from .complexes import (
    ChainComplex,
    ComplexReport,
    DualityOperator,
    DualityReport,
    HilbertPoincareComplex,
    direct_sum,
    dual_complex,
    duality_cone,
    homology_ranks,
    mapping_cone,
    opposite,
    perturb_duality,
    twist,
    verify_complex,
    verify_duality,
)
from .errors import (
    BoundaryConditionViolated,
    DegenerateBoundaryDuality,
    DegenerateDuality,
    DegenerateOperator,
    DimensionMismatch,
    EquivarianceViolated,
    FormulaMismatch,
    GroupMismatch,
    HpsigError,
    IdentityViolated,
    IncoherentOrientation,
    InvalidFacet,
    InvalidGroup,
    NonEquivariantProjection,
    NotChainMap,
    NotRepresentation,
    NotSelfAdjoint,
    NotSimplicial,
    NotUnitary,
    OddDimension,
    OrientationReversing,
    ParseError,
    PreconditionViolated,
    ShapeMismatch,
    SplitInconsistent,
)
from .generate import (
    Profile,
    generate_with_boundary,
    generate_with_signature,
    parse_profile,
    random_unitary,
)
from .groups import (
    CHAR_TOL,
    FiniteGroup,
    GroupAction,
    K0Class,
    k0_add,
    k0_equal,
    k0_from_projections,
    k0_negate,
    k0_zero,
)
from .io import read_hpx, read_smf, write_hpx, write_smf
from .linalg import (
    DEFAULT_TOL,
    SpectralSplit,
    adjoint,
    is_invertible,
    min_singular_value,
    operator_norm,
    spectral_split,
)
from .signature import (
    CoincidenceReport,
    SignatureResult,
    check_coincidence,
    higson_roe_signature,
    mishchenko_signature,
    reduced_signature,
)
from .simplicial import (
    CapReport,
    EquivarianceReport,
    GeometryStats,
    OrientedSimplicialManifold,
    SimplicialAction,
    SimplicialChainData,
    barycentric_subdivide,
    bordism_to_cwb,
    cap_duality,
    chain_action,
    duality_operator,
    enumerate_and_boundaries,
    fundamental_cycle,
    geometry_stats,
    manifold_signature,
    to_hp_complex,
    verify_equivariance,
)

__version__ = "0.1.0"

__all__ = [
    "BlockDecomposition",
    "BoundaryConditionViolated",
    "BoundaryZeroReport",
    "CHAR_TOL",
    "CapReport",
    "ChainComplex",
    "CoincidenceReport",
    "ComplexReport",
    "ComplexWithBoundary",
    "ConeIdentitiesReport",
    "CwbReport",
    "DEFAULT_TOL",
    "DegenerateBoundaryDuality",
    "DegenerateDuality",
    "DegenerateOperator",
    "DimensionMismatch",
    "DualityOperator",
    "DualityReport",
    "EquivarianceReport",
    "EquivarianceViolated",
    "FiniteGroup",
    "FormulaMismatch",
    "GeometryStats",
    "GroupAction",
    "GroupMismatch",
    "HilbertPoincareComplex",
    "HpsigError",
    "IdentityViolated",
    "IncoherentOrientation",
    "InvalidFacet",
    "InvalidGroup",
    "K0Class",
    "NonEquivariantProjection",
    "NotChainMap",
    "NotRepresentation",
    "NotSelfAdjoint",
    "NotSimplicial",
    "NotUnitary",
    "OddDimension",
    "OrientationReversing",
    "OrientedSimplicialManifold",
    "ParseError",
    "PreconditionViolated",
    "Profile",
    "ShapeMismatch",
    "SignatureResult",
    "SimplicialAction",
    "SimplicialChainData",
    "SpectralSplit",
    "SplitInconsistent",
    "adjoint",
    "barycentric_subdivide",
    "bordism_to_cwb",
    "boundary_complex",
    "boundary_signature_is_zero",
    "cap_duality",
    "chain_action",
    "check_coincidence",
    "decompose",
    "direct_sum",
    "dual_complex",
    "duality_cone",
    "duality_operator",
    "enumerate_and_boundaries",
    "fundamental_cycle",
    "generate_with_boundary",
    "generate_with_signature",
    "geometry_stats",
    "higson_roe_signature",
    "homology_ranks",
    "hyperbolic",
    "is_invertible",
    "k0_add",
    "k0_equal",
    "k0_from_projections",
    "k0_negate",
    "k0_zero",
    "manifold_signature",
    "mapping_cone",
    "min_singular_value",
    "mishchenko_signature",
    "operator_norm",
    "opposite",
    "parse_profile",
    "perturb_duality",
    "random_unitary",
    "read_hpx",
    "read_smf",
    "reduced_signature",
    "spectral_split",
    "to_hp_complex",
    "twist",
    "verify_cone_identities",
    "verify_complex",
    "verify_duality",
    "verify_equivariance",
    "verify_with_boundary",
    "write_hpx",
    "write_smf",
]
