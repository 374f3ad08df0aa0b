"""Numerical laboratory for Orlicz-space norms, dilation gauges, and
bilinear Fourier multipliers."""

from .young import (
    YoungFunction,
    DegenerateYoungFunction,
    Delta2Result,
    TripleCondition,
    check_delta2,
    check_triple,
    complement,
    conjugate_value,
    parse_young,
)
from .function_lab import (
    Grid,
    SampledFunction,
    SupportOverflowError,
    fourier,
    inverse_fourier,
    translate,
    modulate,
    dilate,
    group_action,
    modular,
    luxemburg_norm,
    make_bandlimited,
    convolve,
    indicator,
    gaussian,
    sinc_preset,
    bl_gauss,
    parse_preset,
    load_csv,
    save_csv,
)
from .dilation import (
    BoydEstimate,
    CertificateError,
    GaugeEstimate,
    boyd_indices,
    gauge_estimate,
    gauge_lower,
    gauge_upper,
    gauge_upper_auto,
    weight_W,
)
from .bilinear import (
    BoundCheck,
    Measure,
    Symbol,
    apply_linear_multiplier,
    applicable_methods,
    evaluate_bm,
    opnorm_lower_search,
    spot_check_pairing,
    symbol_transform,
)
from .experiments import (
    VerificationReport,
    run_bound_suite,
    run_experiment,
    run_gaussian_limits,
    run_homogeneous_constraint,
    run_indicator_norm,
    run_rademacher_divergence,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
