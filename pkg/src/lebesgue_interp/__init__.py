"""Event-based time-series sampling and event-aware reconstruction.

The package pairs a send-on-delta (Lebesgue) sampler with reconstructors
that exploit what that sampling regime guarantees about the skipped points,
plus the classic baselines and a benchmark harness that scores everything
by RMSE.
"""

from .baselines import (
    Reconstruction,
    interp_linear,
    interp_nearest,
    interp_pchip,
    interp_zoh,
)
from .bench import (
    METHOD_LABELS,
    METHODS,
    ExperimentConfig,
    ExperimentMode,
    emit_report,
    generate_synthetic_corpus,
    load_ucr_dataset,
    merge_bundles,
    monte_carlo_convexity_area,
    run_benchmark,
    run_experiment,
)
from .core import (
    DatasetBundle,
    Knot,
    ReconstructionParams,
    SampledSeries,
    TimeSeries,
    ToleratedRegion,
    normalize_unit_interval,
    series_equal_length_check,
)
from .errors import (
    InfeasibleBudgetError,
    InvalidInputError,
    ParseError,
    ShapeError,
)
from .metrics import (
    DatasetResult,
    MethodReport,
    MethodScore,
    MethodSummary,
    abruptness,
    aggregate_report,
    rank_methods,
    rmse,
)
from .sampling import (
    SampleBudget,
    lebesgue_sample,
    riemann_sample,
    threshold_candidates,
    tolerated_region,
    tune_threshold,
)
from .zelic import (
    IntervalClass,
    IntervalKind,
    KnotPlan,
    abrupt_limit_condition,
    classify_interval,
    convexity_gate,
    convexity_knots,
    reconstruct_zechip,
    reconstruct_zechipc,
    reconstruct_zeli,
    reconstruct_zelic,
)

__version__ = "0.1.0"

__all__ = [
    "DatasetBundle",
    "DatasetResult",
    "ExperimentConfig",
    "ExperimentMode",
    "InfeasibleBudgetError",
    "IntervalClass",
    "IntervalKind",
    "InvalidInputError",
    "Knot",
    "KnotPlan",
    "METHOD_LABELS",
    "METHODS",
    "MethodReport",
    "MethodScore",
    "MethodSummary",
    "ParseError",
    "Reconstruction",
    "ReconstructionParams",
    "SampleBudget",
    "SampledSeries",
    "ShapeError",
    "TimeSeries",
    "ToleratedRegion",
    "abrupt_limit_condition",
    "abruptness",
    "aggregate_report",
    "classify_interval",
    "convexity_gate",
    "convexity_knots",
    "emit_report",
    "generate_synthetic_corpus",
    "interp_linear",
    "interp_nearest",
    "interp_pchip",
    "interp_zoh",
    "lebesgue_sample",
    "load_ucr_dataset",
    "merge_bundles",
    "monte_carlo_convexity_area",
    "normalize_unit_interval",
    "rank_methods",
    "reconstruct_zechip",
    "reconstruct_zechipc",
    "reconstruct_zeli",
    "reconstruct_zelic",
    "riemann_sample",
    "rmse",
    "run_benchmark",
    "run_experiment",
    "series_equal_length_check",
    "threshold_candidates",
    "tolerated_region",
    "tune_threshold",
]
