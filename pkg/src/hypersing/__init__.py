"""Exact local invariants of isolated hypersurface singularities.

Milnor and Tyurina algebras via Groebner bases over Q, the C*-weight
decomposition of T^1 for weighted homogeneous germs, the 1-Du Bois /
1-rational / 1-liminal classification, and linear-algebra smoothability
criteria for varieties with such singular points.
"""

from .classify import (
    ClassificationReport,
    Flags,
    NoWeightSystem,
    SpectrumEntry,
    WeightDecomposition,
    classify,
    ell,
    minimal_exponent,
    spectrum,
    t1_weight,
    t1_weight_decomposition,
)
from .groebner import (
    ComputationTooLarge,
    GroebnerBasis,
    Guard,
    InfiniteDimensional,
    MonomialOrder,
    Staircase,
    buchberger,
    is_groebner_basis,
    is_origin_only,
    multiplication_matrix,
    normal_form,
    s_polynomial,
    standard_monomials,
    weighted_order,
)
from .linalg import kernel_basis, rank
from .local import (
    AnalysisError,
    LocalSingularity,
    NotIsolated,
    NotOnHypersurface,
    analyze_local,
    is_quasihomogeneous,
    milnor_number,
    tyurina_number,
)
from .oracles import (
    BrieskornData,
    SeriesNotPolynomial,
    brieskorn_analyze,
    brute_force_kernel_search,
    poincare_series,
    poincare_series_check,
)
from .polynomial import (
    Polynomial,
    PolynomialSyntaxError,
    WeightSystem,
    detect_weight_system,
    euler_field_apply,
    format_polynomial,
    is_weighted_homogeneous,
    jacobian,
    parse_polynomial,
    partial_derivative,
)
from .report import report_document
from .smoothing import (
    Configuration,
    ConfigurationError,
    MatrixShapeMismatch,
    SingularPointRecord,
    SmoothabilityVerdict,
    UnclassifiedPoint,
    all_nonzero_kernel_vector,
    check_configuration,
    cy_smoothability,
    fano_smoothability,
    good_configuration,
    load_configuration,
)

__version__ = "0.1.0"
