"""Fejer divisor-filter prime indicator, its smooth analogues, and checks."""

from .fejer import (
    CertifiedValue,
    EvalStrategy,
    NearestLattice,
    ResonanceGuard,
    fejer,
    fejer_cosine_poly,
    fejer_rpf,
    fejer_sine_quotient,
    fejer_taylor_surrogate,
    nearest_lattice,
    pole_sum_bounds,
)
from .indicator import (
    IndicatorValue,
    JumpReport,
    composite_bounds,
    indicator_P,
    indicator_P_integer,
    is_odd_prime_via_P,
    jump_measured,
    jump_predicted,
    local_quadratic_coefficient,
)
from .cutoff import phi, phi_complement
from .smooth import (
    SeriesKind,
    SmoothValue,
    TruncationPlan,
    b_infinity_tau,
    p_sigma,
    p_sigma_integer,
    p_tau,
    p_tau_integer,
    plan_truncation,
    sigma_residual,
    tau_residual,
)
from .zeros import ZeroPair, bisect, companion_zeros_sigma, companion_zeros_tau, decay_fit
from .counting import (
    BaselineParams,
    HVariantParams,
    b_alpha,
    composite_gap,
    error_decomposition,
    gamma_admissible_max,
    pi_baseline,
    pi_h,
)

__version__ = "0.1.0"

__all__ = [
    "CertifiedValue",
    "EvalStrategy",
    "NearestLattice",
    "ResonanceGuard",
    "fejer",
    "fejer_cosine_poly",
    "fejer_rpf",
    "fejer_sine_quotient",
    "fejer_taylor_surrogate",
    "nearest_lattice",
    "pole_sum_bounds",
    "IndicatorValue",
    "JumpReport",
    "composite_bounds",
    "indicator_P",
    "indicator_P_integer",
    "is_odd_prime_via_P",
    "jump_measured",
    "jump_predicted",
    "local_quadratic_coefficient",
    "SeriesKind",
    "SmoothValue",
    "TruncationPlan",
    "b_infinity_tau",
    "p_sigma",
    "p_sigma_integer",
    "p_tau",
    "p_tau_integer",
    "plan_truncation",
    "sigma_residual",
    "tau_residual",
    "BaselineParams",
    "HVariantParams",
    "b_alpha",
    "composite_gap",
    "error_decomposition",
    "gamma_admissible_max",
    "pi_baseline",
    "pi_h",
    "phi",
    "phi_complement",
    "ZeroPair",
    "bisect",
    "companion_zeros_sigma",
    "companion_zeros_tau",
    "decay_fit",
]
