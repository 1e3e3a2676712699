"""Piecewise fuzzy-line estimation segmented at detail-component extrema.

The estimator picks one detail component of a multiresolution
decomposition, locates its interior extrema, cuts the time axis there, and
fits an independent fuzzy line to the original series over each closed
segment. The per-segment bands are then regrouped into full-length center,
lower, and upper series.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .fuzzy import FuzzyLinearModel, evaluate_band, fit_fuzzy_line
from .series import TimeSeries, mse, rmse
from .wavelet import MRADecomposition

__all__ = [
    "Segmentation",
    "HybridEstimate",
    "ReportRow",
    "find_extrema",
    "segment_from_extrema",
    "estimate_hybrid",
    "error_report",
]


@dataclass(frozen=True)
class Segmentation:
    """Strictly increasing cut positions from 1 to N (1-based, inclusive).

    Consecutive boundaries delimit closed segments that share their
    endpoint; ``source_level`` records which detail component produced the
    cuts (0 when none did).
    """

    boundaries: tuple[int, ...]
    source_level: int = 0

    def __post_init__(self) -> None:
        bounds = tuple(int(b) for b in self.boundaries)
        if len(bounds) < 2:
            raise ValueError("segmentation needs at least two boundaries")
        if bounds[0] != 1:
            raise ValueError(f"first boundary must be 1; got {bounds[0]}")
        if any(b2 <= b1 for b1, b2 in zip(bounds, bounds[1:])):
            raise ValueError(f"boundaries must increase strictly: {bounds}")
        object.__setattr__(self, "boundaries", bounds)

    @property
    def n(self) -> int:
        return self.boundaries[-1]

    @property
    def segments(self) -> tuple[tuple[int, int], ...]:
        """Closed position ranges [a, b] fitted by each segment."""
        return tuple(zip(self.boundaries, self.boundaries[1:]))

    @property
    def owned_ranges(self) -> tuple[tuple[int, int], ...]:
        """Disjoint position ranges the regrouped estimate takes from each
        segment: a shared boundary belongs to the segment on its left."""
        return tuple(
            (a if i == 0 else a + 1, b) for i, (a, b) in enumerate(self.segments)
        )


@dataclass(frozen=True)
class HybridEstimate:
    """Per-segment fuzzy models regrouped into full-length band series."""

    segmentation: Segmentation
    segment_models: tuple[FuzzyLinearModel, ...]
    center: TimeSeries
    lower: TimeSeries
    upper: TimeSeries
    level: int
    h: float

    def __post_init__(self) -> None:
        n = self.segmentation.n
        if not len(self.center) == len(self.lower) == len(self.upper) == n:
            raise ValueError("regrouped series must cover all N positions")
        if len(self.segment_models) != len(self.segmentation.segments):
            raise ValueError("one fitted model per segment is required")
        if np.any(self.lower.values > self.center.values) or np.any(
            self.center.values > self.upper.values
        ):
            raise ValueError("band series must satisfy lower <= center <= upper")


class ReportRow(NamedTuple):
    model: str
    mse: float
    rmse: float


def find_extrema(detail: TimeSeries) -> list[int]:
    """1-based positions of interior local extrema of ``detail``.

    An extremum is where the first difference strictly changes sign. A
    plateau flanked by opposite-sign differences contributes a single
    representative: its midpoint position, with half values rounded down.
    Series shorter than 3 points have no interior and yield [].
    """
    v = detail.values
    if v.size < 3:
        return []
    diffs = np.diff(v)
    nz = np.flatnonzero(diffs != 0.0)
    out = []
    for prev_i, cur_i in zip(nz, nz[1:]):
        if diffs[prev_i] * diffs[cur_i] < 0.0:
            # plateau spans 0-based positions prev_i+1 .. cur_i
            out.append(int(prev_i + 1 + cur_i) // 2 + 1)
    return out


def segment_from_extrema(
    extrema: Sequence[int], n: int, source_level: int = 0
) -> Segmentation:
    """Boundaries {1} U extrema U {n}, thinned so segments keep >= 2 points.

    An extremum closer than 2 positions to the previously kept one is
    dropped (the later of the conflicting pair loses); the outer boundaries
    1 and n always stay.
    """
    if n < 2:
        raise ValueError(f"need at least 2 points to segment; got {n}")
    kept: list[int] = []
    prev = None
    for e in extrema:
        e = int(e)
        if prev is not None and e <= prev:
            raise ValueError(f"extrema must be sorted strictly ascending: {tuple(extrema)}")
        prev = e
        if not 1 < e < n:
            raise ValueError(f"extremum {e} outside the interior (1, {n})")
        if kept and e - kept[-1] < 2:
            continue
        kept.append(e)
    return Segmentation(boundaries=(1, *kept, n), source_level=source_level)


def estimate_hybrid(
    series: TimeSeries,
    decomposition: MRADecomposition,
    level: int,
    h: float = 0.5,
) -> HybridEstimate:
    """Segment at the extrema of D_level and fit a fuzzy line per segment.

    Fitting always sees the original series (not the detail component),
    restricted to each closed segment with its absolute time indices. The
    regrouped band takes shared boundary points from the left segment.
    """
    n = len(series)
    if n != decomposition.length:
        raise ValueError(
            f"series length {n} does not match decomposition length {decomposition.length}"
        )
    detail = decomposition.detail(level)
    segmentation = segment_from_extrema(find_extrema(detail), n, source_level=level)

    models = []
    center = np.empty(n)
    lower = np.empty(n)
    upper = np.empty(n)
    for (a, b), (oa, ob) in zip(segmentation.segments, segmentation.owned_ranges):
        model = fit_fuzzy_line(series.restrict(a, b), h)
        models.append(model)
        for p in range(oa, ob + 1):
            band = evaluate_band(model, series.start_index + p - 1)
            center[p - 1] = band.center
            lower[p - 1] = band.lower
            upper[p - 1] = band.upper
    return HybridEstimate(
        segmentation=segmentation,
        segment_models=tuple(models),
        center=series.with_values(center),
        lower=series.with_values(lower),
        upper=series.with_values(upper),
        level=level,
        h=h,
    )


def error_report(
    series: TimeSeries, decomposition: MRADecomposition, h: float = 0.5
) -> list[ReportRow]:
    """MSE/RMSE table: the global fuzzy fit, then one hybrid row per detail
    level from coarsest (D_J) to finest (D_1).

    The point estimate for both metrics is the band center.
    """
    model = fit_fuzzy_line(series, h)
    centers = [evaluate_band(model, t).center for t in series.times]
    global_est = series.with_values(centers)
    rows = [ReportRow("fuzzy-regression", mse(series, global_est), rmse(series, global_est))]
    for level in range(decomposition.level, 0, -1):
        estimate = estimate_hybrid(series, decomposition, level, h)
        rows.append(
            ReportRow(
                f"hybrid-d{level}",
                mse(series, estimate.center),
                rmse(series, estimate.center),
            )
        )
    return rows
