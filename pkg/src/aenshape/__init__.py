"""Shaped amplitude constellations and achievable rates on the
additive exponential noise channel."""

__version__ = "0.1.0"

from .channel import (
    ChannelParams,
    InputDistribution,
    capacity,
    capacity_snr,
    capacity_snr_db,
    db_to_linear,
    linear_to_db,
    noise_pdf,
    optimal_input,
    sample_noise,
    surrogate_pdf,
    transition_log_density,
)
from .constellation import (
    BitLabeling,
    Constellation,
    alpha_breakpoints,
    gen_log,
    gen_martinez,
    gen_uniform,
    gray_labels,
)
from .mi import (
    MiEstimate,
    SampleBank,
    log_sum_exp,
    mi_bicm_mc,
    mi_bicm_quadrature,
    mi_cm_mc,
    mi_cm_quadrature,
)
from .analysis import (
    BracketSearchError,
    FamilyComparison,
    GapReport,
    SweepResult,
    UnattainableRateError,
    best_in_family,
    compare_families,
    gap_to_capacity_db,
    make_constellation,
    snr_at_target_mi,
    sweep,
)

__all__ = [
    "__version__",
    "BitLabeling",
    "BracketSearchError",
    "ChannelParams",
    "Constellation",
    "FamilyComparison",
    "GapReport",
    "InputDistribution",
    "MiEstimate",
    "SampleBank",
    "SweepResult",
    "UnattainableRateError",
    "alpha_breakpoints",
    "best_in_family",
    "capacity",
    "capacity_snr",
    "capacity_snr_db",
    "compare_families",
    "db_to_linear",
    "gap_to_capacity_db",
    "gen_log",
    "gen_martinez",
    "gen_uniform",
    "gray_labels",
    "linear_to_db",
    "log_sum_exp",
    "make_constellation",
    "mi_bicm_mc",
    "mi_bicm_quadrature",
    "mi_cm_mc",
    "mi_cm_quadrature",
    "noise_pdf",
    "optimal_input",
    "sample_noise",
    "snr_at_target_mi",
    "surrogate_pdf",
    "sweep",
    "transition_log_density",
]
