"""Slice analysis of quaternionic functions.

Values on one complex slice of the quaternions extend to all slices through a
two-component stem; this package computes with those stems: the *-product,
conjugation and symmetrization, extension of two-slice data, path-based domain
geometry (admissible slice units and ball radii), and a verified zero-set
engine for one-variable polynomials.
"""

from .errors import (
    DegenerateSlicePair,
    DomainCheckFailed,
    DomainCheckWarning,
    EmptyUnitSet,
    IdenticallyZero,
    IncompatibleDomains,
    InsufficientUnits,
    NoConvergence,
    NonRealSymmetrization,
    NotInSliceCone,
    NoWitnessPath,
    OutOfDomain,
    ParseError,
    PreconditionUnverified,
    SliceworksError,
    StepOutOfRange,
)
from .quaternion import (
    ONE,
    UNIT_I,
    UNIT_J,
    UNIT_K,
    ZERO,
    ImaginaryUnit,
    QMatrix2,
    Quaternion,
    SlicePoint,
    embed_complex,
    slice_unit_of,
    sphere_sample,
)
from .paths import PathBallSpec, PathCn, cdist, ray_from_real
from .domains import (
    AllPlane,
    Attachment,
    Complement,
    Disk,
    DomainCheckReport,
    HalfPlane,
    Intersection,
    NON_REAL_STRIP,
    ProductRegion,
    Region,
    SliceDomain,
    SliceUnitSample,
    Union,
    WitnessRecord,
    check_real_path_connected,
    check_self_stem_preserving,
    check_stem_preserving,
    domain_from_json,
    domain_to_json,
    find_witness_path,
    radius_for_units,
    radius_path_ball,
    radius_two_units,
    region_from_json,
    slice_units,
)
from .stem import (
    HolomorphyReport,
    PathStem,
    StemValue,
    check_stem_holomorphic,
    conj_stem,
    eval_stem,
    point_stem,
    real_endpoint_stem,
    reflect_stem,
    star_stems,
    stem_from_two_slices,
    sym_stem,
)
from .functions import (
    SlicePolynomial,
    SlicePowerSeries,
    SlicePreservingReport,
    SliceRegularityReport,
    StarComposite,
    TwoSliceGlued,
    check_slice_preserving,
    check_slice_regular,
    conjugation,
    evaluate,
    function_from_json,
    function_to_json,
    representation_extend,
    star_product,
    symmetrization,
)
from .zeros import (
    AnalyticWitness,
    InclusionReport,
    IsolatedZero,
    PropagationReport,
    RealZero,
    SphereZero,
    ZeroSet,
    analytic_witness,
    complex_roots,
    find_zeros,
    sphere_propagation_check,
    zero_inclusion_check,
)
from .testkit import (
    PROPERTY_ORDER,
    OracleConfig,
    PropertyResult,
    SuiteReport,
    oracle_sphere_scan,
    oracle_star_pointwise,
    run_property_suite,
    serialize_report,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "SliceworksError",
    "ParseError",
    "NotInSliceCone",
    "DegenerateSlicePair",
    "EmptyUnitSet",
    "InsufficientUnits",
    "NoWitnessPath",
    "StepOutOfRange",
    "NonRealSymmetrization",
    "IncompatibleDomains",
    "OutOfDomain",
    "NoConvergence",
    "IdenticallyZero",
    "DomainCheckFailed",
    "PreconditionUnverified",
    "DomainCheckWarning",
    # quaternions and slice points
    "Quaternion",
    "ImaginaryUnit",
    "SlicePoint",
    "QMatrix2",
    "ZERO",
    "ONE",
    "UNIT_I",
    "UNIT_J",
    "UNIT_K",
    "embed_complex",
    "slice_unit_of",
    "sphere_sample",
    # paths
    "PathCn",
    "PathBallSpec",
    "cdist",
    "ray_from_real",
    # domains
    "Region",
    "Disk",
    "HalfPlane",
    "AllPlane",
    "Union",
    "Intersection",
    "Complement",
    "ProductRegion",
    "NON_REAL_STRIP",
    "Attachment",
    "SliceDomain",
    "SliceUnitSample",
    "WitnessRecord",
    "DomainCheckReport",
    "slice_units",
    "radius_for_units",
    "radius_path_ball",
    "radius_two_units",
    "find_witness_path",
    "check_real_path_connected",
    "check_stem_preserving",
    "check_self_stem_preserving",
    "region_from_json",
    "domain_from_json",
    "domain_to_json",
    # stems
    "StemValue",
    "PathStem",
    "stem_from_two_slices",
    "eval_stem",
    "reflect_stem",
    "conj_stem",
    "sym_stem",
    "star_stems",
    "real_endpoint_stem",
    "point_stem",
    "check_stem_holomorphic",
    "HolomorphyReport",
    # functions
    "SlicePolynomial",
    "SlicePowerSeries",
    "TwoSliceGlued",
    "StarComposite",
    "evaluate",
    "star_product",
    "conjugation",
    "symmetrization",
    "representation_extend",
    "check_slice_regular",
    "check_slice_preserving",
    "SliceRegularityReport",
    "SlicePreservingReport",
    "function_from_json",
    "function_to_json",
    # zeros
    "complex_roots",
    "RealZero",
    "IsolatedZero",
    "SphereZero",
    "ZeroSet",
    "find_zeros",
    "InclusionReport",
    "zero_inclusion_check",
    "PropagationReport",
    "sphere_propagation_check",
    "AnalyticWitness",
    "analytic_witness",
    # testkit
    "OracleConfig",
    "PROPERTY_ORDER",
    "PropertyResult",
    "SuiteReport",
    "oracle_star_pointwise",
    "oracle_sphere_scan",
    "run_property_suite",
    "serialize_report",
]
