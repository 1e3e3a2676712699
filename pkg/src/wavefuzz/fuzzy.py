"""Possibilistic fuzzy linear regression with symmetric triangular coefficients.

Fits a line whose intercept and slope are triangular fuzzy numbers by
minimizing the total spread subject to every observation lying inside the
membership band at level h. The optimization is a small linear program
handed to the embedded simplex solver.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .series import TimeSeries
from .simplex import GREATER_EQUAL, LESS_EQUAL, LinearProgram, solve_lp

__all__ = [
    "TriangularFuzzyNumber",
    "FuzzyLinearModel",
    "FuzzyInterval",
    "build_lp",
    "fit_fuzzy_line",
    "evaluate_band",
]


@dataclass(frozen=True)
class TriangularFuzzyNumber:
    """Symmetric triangular fuzzy quantity: membership peaks at ``center``
    and falls linearly to zero at ``center +- spread``."""

    center: float
    spread: float

    def __post_init__(self) -> None:
        if not (np.isfinite(self.center) and np.isfinite(self.spread)):
            raise ValueError("fuzzy number requires finite center and spread")
        if self.spread < 0.0:
            raise ValueError(f"spread must be nonnegative; got {self.spread}")


@dataclass(frozen=True)
class FuzzyInterval:
    """Pointwise band value: lower <= center <= upper."""

    lower: float
    center: float
    upper: float

    def __post_init__(self) -> None:
        if not self.lower <= self.center <= self.upper:
            raise ValueError(
                f"interval out of order: ({self.lower}, {self.center}, {self.upper})"
            )


@dataclass(frozen=True)
class FuzzyLinearModel:
    """Fitted fuzzy line: intercept a0, slope a1, threshold h, and the
    minimized total spread."""

    a0: TriangularFuzzyNumber
    a1: TriangularFuzzyNumber
    h: float
    objective: float

    def __post_init__(self) -> None:
        _check_h(self.h)
        if abs(self.objective - (self.a0.spread + self.a1.spread)) > 1e-9:
            raise ValueError("objective must equal the summed spreads")


def _check_h(h: float) -> None:
    if not 0.0 <= h < 1.0:
        raise ValueError(f"threshold h must lie in [0, 1); got {h}")


def build_lp(series: TimeSeries, h: float) -> LinearProgram:
    """Band-containment program over columns (c0, c1, s0, s1).

    Minimizes s0 + s1 subject to, for every observation (t_i, Y_i):

        c0 + c1*t_i - (1-h)*(s0 + s1*|t_i|) <= Y_i
        c0 + c1*t_i + (1-h)*(s0 + s1*|t_i|) >= Y_i

    with s0, s1 >= 0 and c0, c1 free. Rows come in (lower, upper) pairs in
    series order.
    """
    _check_h(h)
    t = series.times.astype(float)
    y = series.values
    n = t.size
    w = 1.0 - h
    ones = np.ones(n)
    lower = np.column_stack([ones, t, -w * ones, -w * np.abs(t)])
    upper = np.column_stack([ones, t, w * ones, w * np.abs(t)])
    lhs = np.empty((2 * n, 4))
    lhs[0::2] = lower
    lhs[1::2] = upper
    rhs = np.repeat(y, 2)
    senses = (LESS_EQUAL, GREATER_EQUAL) * n
    return LinearProgram(
        objective=np.array([0.0, 0.0, 1.0, 1.0]),
        lhs=lhs,
        senses=senses,
        rhs=rhs,
        free=(True, True, False, False),
    )


def fit_fuzzy_line(series: TimeSeries, h: float = 0.5) -> FuzzyLinearModel:
    """Fit the minimal-spread fuzzy line through ``series`` at threshold h."""
    x, _ = solve_lp(build_lp(series, h))
    c0, c1, s0, s1 = x
    a0 = TriangularFuzzyNumber(float(c0), max(float(s0), 0.0))
    a1 = TriangularFuzzyNumber(float(c1), max(float(s1), 0.0))
    return FuzzyLinearModel(a0=a0, a1=a1, h=h, objective=a0.spread + a1.spread)


def evaluate_band(model: FuzzyLinearModel, t: float) -> FuzzyInterval:
    """Band value at time t: center c0 + c1*t with half-width
    (1-h)*(s0 + s1*|t|) on either side."""
    center = model.a0.center + model.a1.center * t
    half = (1.0 - model.h) * (model.a0.spread + model.a1.spread * abs(t))
    return FuzzyInterval(center - half, center, center + half)
