"""Wavelet multiresolution analysis plus possibilistic fuzzy band regression
for piecewise time-series estimation."""

from .fuzzy import (
    FuzzyInterval,
    FuzzyLinearModel,
    TriangularFuzzyNumber,
    build_lp,
    evaluate_band,
    fit_fuzzy_line,
)
from .hybrid import (
    HybridEstimate,
    ReportRow,
    Segmentation,
    error_report,
    estimate_hybrid,
    find_extrema,
    segment_from_extrema,
)
from .series import SeriesStats, TimeSeries, describe, log_transform, mse, rmse
from .simplex import (
    InfeasibleError,
    LinearProgram,
    UnboundedError,
    solve_lp,
)
from .wavelet import (
    DaubechiesFilter,
    DWTCoefficients,
    MRADecomposition,
    dwt_forward,
    dwt_inverse,
    mra_decompose,
)

__version__ = "0.1.0"

__all__ = [
    "TimeSeries",
    "SeriesStats",
    "describe",
    "log_transform",
    "mse",
    "rmse",
    "TriangularFuzzyNumber",
    "FuzzyLinearModel",
    "FuzzyInterval",
    "build_lp",
    "fit_fuzzy_line",
    "evaluate_band",
    "LinearProgram",
    "solve_lp",
    "InfeasibleError",
    "UnboundedError",
    "DaubechiesFilter",
    "DWTCoefficients",
    "MRADecomposition",
    "dwt_forward",
    "dwt_inverse",
    "mra_decompose",
    "Segmentation",
    "HybridEstimate",
    "ReportRow",
    "find_extrema",
    "segment_from_extrema",
    "estimate_hybrid",
    "error_report",
]
