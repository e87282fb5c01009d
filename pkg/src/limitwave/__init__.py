"""Wavelet systems through direct limits of filter isometries.

The package follows one arc: a dilation matrix A fixes a torus
endomorphism, a quadrature filter m for A generates an isometry S_m on
trigonometric polynomials, the direct limit of repeated S_m
applications carries a unitary dilation and a translation group, and
concrete wavelet families fall out of that limit three ways: classical
cascade products on R^d, exact triadic wavelets on the Cantor measure,
and cylinder integrals on the dyadic or triadic solenoid.

Quick start::

    from limitwave import preset, run_pipeline
    report = run_pipeline("cantor")
    print(report_to_text(report))

or from a shell::

    limitwave pipeline --preset haar
"""

from .errors import (
    BoxTooSmall,
    ContextMismatch,
    DimensionMismatch,
    Diverged,
    DualityFailure,
    InternalError,
    InvalidFilter,
    LevelCapExceeded,
    LevelTooLow,
    LimitWaveError,
    NotExpansive,
    NotLowPass,
    NotOrthonormal,
    NotUnitVector,
    ParameterOutOfRange,
    RepresentationMismatch,
    SingularMatrix,
    SupportOverflow,
)
from .torus import (
    LaurentPoly,
    StepCircleFn,
    lp1,
    lp_conj,
    lp_coset_sum,
    lp_eval,
    lp_monomial,
    lp_mul,
    random_laurent,
    sf_eval,
    sf_fourier_coeff,
    sf_integral,
    sf_mul,
    sf_scale,
    step_indicator,
)
from .dilation import DilationSpec, make_dilation
from .filters import (
    Filter,
    FilterBank,
    Purity,
    bank_from_orthonormal_basis,
    eval_at_one,
    filter_from_unit_vector,
    frame_parseval_check,
    is_low_pass,
    purity_check,
    verify_filter,
    verify_filter_bank,
    verify_generalized_filter,
)
from .operators import (
    FilterOperator,
    apply_S,
    apply_S_adjoint,
    verify_cuntz,
    verify_isometry,
)
from .direct_limit import (
    LimitVector,
    apply_S_infinity,
    apply_S_infinity_inverse,
    apply_mu_infinity,
    gram_matrix,
    limit_inner,
    promote,
    wavelet_family,
    wavelet_generators,
)
from .cascade import (
    check_partition_of_unity,
    check_scaling_identity,
    classical_wavelets,
    cohen_probe,
    scaling_function,
)
from .fractal import (
    TriadicFn,
    R_infinity,
    cantor_bank,
    cantor_filter,
    cantor_spec,
    cantor_wavelets,
    intertwiner_R,
    nu_inner,
    r_family,
    tf_piece,
    wavelet_system,
)
from .solenoid import (
    CylinderFn,
    V_infinity,
    check_consistency,
    check_dutkay_formula,
    cylinder_inner,
    dutkay_transform,
    solenoid_context,
    tau_integral,
    winding_check,
    winding_eval,
)
from .presets import PRESET_NAMES, preset, write_presets
from .report import Report, report_to_json, report_to_text
from .pipelines import PIPELINES, run_pipeline
from .serialize import decode, dump, encode, load

__version__ = "0.1.0"

__all__ = [
    "BoxTooSmall", "ContextMismatch", "DimensionMismatch", "Diverged",
    "DualityFailure", "InternalError", "InvalidFilter", "LevelCapExceeded",
    "LevelTooLow", "LimitWaveError", "NotExpansive", "NotLowPass",
    "NotOrthonormal", "NotUnitVector", "ParameterOutOfRange",
    "RepresentationMismatch", "SingularMatrix", "SupportOverflow",
    "LaurentPoly", "StepCircleFn", "lp1", "lp_conj", "lp_coset_sum",
    "lp_eval", "lp_monomial", "lp_mul", "random_laurent", "sf_eval",
    "sf_fourier_coeff", "sf_integral", "sf_mul", "sf_scale", "step_indicator",
    "DilationSpec", "make_dilation",
    "Filter", "FilterBank", "Purity", "bank_from_orthonormal_basis",
    "eval_at_one", "filter_from_unit_vector", "frame_parseval_check",
    "is_low_pass", "purity_check", "verify_filter", "verify_filter_bank",
    "verify_generalized_filter",
    "FilterOperator", "apply_S", "apply_S_adjoint", "verify_cuntz",
    "verify_isometry",
    "LimitVector", "apply_S_infinity", "apply_S_infinity_inverse",
    "apply_mu_infinity", "gram_matrix", "limit_inner", "promote",
    "wavelet_family", "wavelet_generators",
    "check_partition_of_unity", "check_scaling_identity",
    "classical_wavelets", "cohen_probe", "scaling_function",
    "TriadicFn", "R_infinity", "cantor_bank", "cantor_filter",
    "cantor_spec", "cantor_wavelets", "intertwiner_R", "nu_inner",
    "r_family", "tf_piece", "wavelet_system",
    "CylinderFn", "V_infinity", "check_consistency", "check_dutkay_formula",
    "cylinder_inner", "dutkay_transform", "solenoid_context", "tau_integral",
    "winding_check", "winding_eval",
    "PRESET_NAMES", "preset", "write_presets",
    "Report", "report_to_json", "report_to_text",
    "PIPELINES", "run_pipeline",
    "decode", "dump", "encode", "load",
    "__version__",
]
