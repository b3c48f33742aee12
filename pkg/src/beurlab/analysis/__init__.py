from .beck import (
    BeckChain,
    Lemma3Anchor,
    Prop11Bounds,
    Prop11Row,
    RieszMean,
    SandwichRow,
    beck_sequence,
    geometric_chain,
    geometric_closed_form,
    iterate_recurrence,
    lemma3_anchor,
    prop11_bounds,
    prop11_sandwich,
    prop11_table,
    representation,
    riesz_mean,
    solve_recurrence,
    theorem10_check,
)
from .fitting import FitResult, RhoEstimate, fit_indices, fit_rho
from .flows import (
    FlowFunc,
    TauTable,
    TimeChange,
    eta_x,
    families,
    lemma1_extension,
    make_function,
    prop1_residual,
    tau_phi,
    tau_phi_inverse,
    time_change,
)
from .limits import (
    BoundednessReport,
    GridSpec,
    HeibergSenetaReport,
    LimitEstimate,
    MembershipReport,
    SampledFunction,
    UniformityReport,
    boundedness_scan,
    delta_ratio,
    estimate_limit,
    eta_subadditivity_residual,
    heiberg_seneta,
    hom_residual,
    membership_report,
    uniformity_report,
    window_sup_limit,
)
from .tauberian import (
    BVReport,
    ClassMNorm,
    ConvolutionKernel,
    WienerReport,
    box_kernel,
    bv_sup_estimate,
    class_m_norm,
    convolve,
    convolve_stieltjes,
    corollary3_experiment,
    expression_kernel,
    fourier_transform,
    gaussian_kernel,
    indicator_kernel,
    tauberian_experiment,
    triangle_kernel,
    wiener_check,
)
from ._exceptions import (
    AnalysisError,
    DegenerateFitError,
    FitError,
    HypothesisFailureError,
    NonSEWarning,
    ResonanceError,
    UnknownFamilyError,
    WienerCheckFailureError,
)


__all__ = [
    "AnalysisError",
    "BVReport",
    "BeckChain",
    "BoundednessReport",
    "ClassMNorm",
    "ConvolutionKernel",
    "DegenerateFitError",
    "FitError",
    "FitResult",
    "FlowFunc",
    "GridSpec",
    "HeibergSenetaReport",
    "HypothesisFailureError",
    "Lemma3Anchor",
    "LimitEstimate",
    "MembershipReport",
    "NonSEWarning",
    "Prop11Bounds",
    "Prop11Row",
    "ResonanceError",
    "RhoEstimate",
    "RieszMean",
    "SampledFunction",
    "SandwichRow",
    "TauTable",
    "TimeChange",
    "UniformityReport",
    "UnknownFamilyError",
    "WienerCheckFailureError",
    "WienerReport",
    "beck_sequence",
    "boundedness_scan",
    "box_kernel",
    "bv_sup_estimate",
    "class_m_norm",
    "convolve",
    "convolve_stieltjes",
    "corollary3_experiment",
    "delta_ratio",
    "estimate_limit",
    "eta_subadditivity_residual",
    "eta_x",
    "expression_kernel",
    "families",
    "fit_indices",
    "fit_rho",
    "fourier_transform",
    "gaussian_kernel",
    "geometric_chain",
    "geometric_closed_form",
    "heiberg_seneta",
    "hom_residual",
    "indicator_kernel",
    "iterate_recurrence",
    "lemma1_extension",
    "lemma3_anchor",
    "make_function",
    "membership_report",
    "prop11_bounds",
    "prop11_sandwich",
    "prop11_table",
    "prop1_residual",
    "representation",
    "riesz_mean",
    "solve_recurrence",
    "tau_phi",
    "tau_phi_inverse",
    "tauberian_experiment",
    "theorem10_check",
    "time_change",
    "triangle_kernel",
    "uniformity_report",
    "wiener_check",
    "window_sup_limit",
]
