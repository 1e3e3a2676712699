"""Time-series container, log preprocessing, and descriptive statistics."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "TimeSeries",
    "SeriesStats",
    "log_transform",
    "describe",
    "mse",
    "rmse",
]


@dataclass(frozen=True)
class TimeSeries:
    """Uniformly sampled sequence of real observations.

    The element at 1-based position p carries the integer time index
    ``start_index + p - 1``, so the default covers t = 1..N. Values are
    stored as a read-only float array; instances are safe to share.
    """

    values: np.ndarray
    start_index: int = 1
    label: str = ""

    def __post_init__(self) -> None:
        arr = np.array(self.values, dtype=float)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("series must hold at least one observation")
        if not np.all(np.isfinite(arr)):
            bad = int(np.flatnonzero(~np.isfinite(arr))[0])
            raise ValueError(f"non-finite value at t={self.start_index + bad}")
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    def __len__(self) -> int:
        return self.values.size

    @property
    def times(self) -> np.ndarray:
        """Integer time indices aligned with ``values``."""
        return self.start_index + np.arange(self.values.size)

    def restrict(self, first: int, last: int) -> "TimeSeries":
        """Sub-series over the closed 1-based position range [first, last].

        Absolute time indices are preserved, so a restriction keeps the
        same regressor values as the parent series.
        """
        if not 1 <= first <= last <= len(self):
            raise ValueError(
                f"invalid position range [{first}, {last}] for a series of length {len(self)}"
            )
        return TimeSeries(
            self.values[first - 1 : last],
            start_index=self.start_index + first - 1,
            label=self.label,
        )

    def with_values(self, values, label: str | None = None) -> "TimeSeries":
        """New series on the same time axis."""
        return TimeSeries(
            values,
            start_index=self.start_index,
            label=self.label if label is None else label,
        )


@dataclass(frozen=True)
class SeriesStats:
    """Population-moment summary of a series (divisor N throughout)."""

    n: int
    mean: float
    variance: float
    min: float
    max: float
    kurtosis: float
    skewness: float


def log_transform(series: TimeSeries) -> TimeSeries:
    """Element-wise natural logarithm; length and indices are preserved."""
    y = series.values
    if np.any(y <= 0.0):
        p = int(np.flatnonzero(y <= 0.0)[0])
        raise ValueError(
            f"log transform requires positive values; got {y[p]} at t={series.start_index + p}"
        )
    return series.with_values(np.log(y))


def describe(series: TimeSeries) -> SeriesStats:
    """Summary statistics using population central moments.

    Kurtosis is non-excess (a normal distribution scores 3). For a constant
    series the second moment vanishes and skewness/kurtosis are undefined;
    they are reported as NaN rather than raising.
    """
    y = series.values
    n = y.size
    if n < 2:
        raise ValueError(f"describe requires at least 2 observations; got {n}")
    m = float(y.mean())
    d = y - m
    m2 = float(np.mean(d * d))
    if m2 == 0.0:
        skew = kurt = math.nan
    else:
        skew = float(np.mean(d**3)) / m2**1.5
        kurt = float(np.mean(d**4)) / m2**2
    return SeriesStats(
        n=n,
        mean=m,
        variance=m2,
        min=float(y.min()),
        max=float(y.max()),
        kurtosis=kurt,
        skewness=skew,
    )


def mse(observed: TimeSeries, estimated: TimeSeries) -> float:
    """Mean squared error with divisor N."""
    if len(observed) != len(estimated):
        raise ValueError(
            f"length mismatch: {len(observed)} observed vs {len(estimated)} estimated"
        )
    d = observed.values - estimated.values
    return float(np.mean(d * d))


def rmse(observed: TimeSeries, estimated: TimeSeries) -> float:
    """Root mean squared error."""
    return math.sqrt(mse(observed, estimated))
