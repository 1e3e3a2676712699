"""Daubechies discrete wavelet transform and multiresolution decomposition.

The pyramid transform uses full circular convolution followed by
even-index downsampling, so for lengths divisible by 2**J every analysis
step is an orthogonal map and reconstruction is its exact transpose. A
series then splits into an approximation A_J plus details D_1..D_J (D_1
finest) that sum back to the input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .series import TimeSeries

__all__ = [
    "DaubechiesFilter",
    "DWTCoefficients",
    "MRADecomposition",
    "dwt_forward",
    "dwt_inverse",
    "mra_decompose",
]

_VALIDATION_TOL = 1e-12

# Extremal-phase scaling coefficients for 1..10 vanishing moments,
# normalized so each row sums to sqrt(2).
_DB_LOWPASS: dict[int, tuple[float, ...]] = {
    1: (
        0.70710678118654752,
        0.70710678118654752,
    ),
    2: (
        0.48296291314453414,
        0.83651630373780791,
        0.22414386804201338,
        -0.12940952255126038,
    ),
    3: (
        0.33267055295008262,
        0.80689150931109258,
        0.45987750211849157,
        -0.13501102001025459,
        -0.085441273882026662,
        0.035226291885709537,
    ),
    4: (
        0.2303778133088965,
        0.71484657055291565,
        0.63088076792985891,
        -0.027983769416859854,
        -0.18703481171909308,
        0.030841381835560764,
        0.0328830116668852,
        -0.010597401785069032,
    ),
    5: (
        0.16010239797419291,
        0.60382926979718967,
        0.72430852843777293,
        0.13842814590132073,
        -0.24229488706638203,
        -0.032244869584638375,
        0.077571493840045714,
        -0.0062414902127982743,
        -0.012580751999081999,
        0.0033357252854737713,
    ),
    6: (
        0.11154074335010946,
        0.49462389039845309,
        0.75113390802109535,
        0.31525035170919763,
        -0.22626469396543982,
        -0.12976686756726194,
        0.097501605587323049,
        0.027522865530305729,
        -0.03158203931748603,
        0.00055384220116149614,
        0.0047772575109455106,
        -0.0010773010853084796,
    ),
    7: (
        0.077852054085009179,
        0.39653931948191731,
        0.72913209084623512,
        0.46978228740519312,
        -0.14390600392856498,
        -0.22403618499387498,
        0.071309219266830265,
        0.080612609151083072,
        -0.038029936935014414,
        -0.016574541630666881,
        0.012550998556099841,
        0.00042957797292136652,
        -0.0018016407040474909,
        0.00035371379997452025,
    ),
    8: (
        0.05441584224310401,
        0.31287159091429997,
        0.67563073629728981,
        0.58535468365420671,
        -0.015829105256349306,
        -0.28401554296154693,
        0.00047248457391328277,
        0.12874742662047846,
        -0.017369301001807546,
        -0.044088253930794752,
        0.013981027917398282,
        0.0087460940474057767,
        -0.0048703529934515743,
        -0.00039174037337694705,
        0.00067544940645056937,
        -0.00011747678412476953,
    ),
    9: (
        0.038077947363878347,
        0.24383467461259035,
        0.60482312369011111,
        0.65728807805130054,
        0.13319738582500758,
        -0.29327378327917491,
        -0.096840783222976461,
        0.14854074933810638,
        0.030725681479333379,
        -0.067632829061329974,
        0.00025094711483145196,
        0.022361662123679097,
        -0.0047232047577513973,
        -0.0042815036824634298,
        0.0018476468830562265,
        0.00023038576352319597,
        -0.00025196318894271014,
        3.9347320316271599e-05,
    ),
    10: (
        0.026670057900555554,
        0.18817680007769149,
        0.52720118893172559,
        0.68845903945360357,
        0.28117234366057746,
        -0.24984642432731538,
        -0.19594627437737704,
        0.12736934033579326,
        0.093057364603572351,
        -0.071394147166397087,
        -0.029457536821875813,
        0.033212674059341002,
        0.0036065535669561697,
        -0.010733175483330575,
        0.0013953517470529012,
        0.0019924052951850561,
        -0.00068585669495971163,
        -0.00011646685512928545,
        9.3588670320069591e-05,
        -1.3264202894521245e-05,
    ),
}


@dataclass(frozen=True)
class DaubechiesFilter:
    """Orthonormal Daubechies filter pair with ``order`` vanishing moments.

    The highpass is the quadrature mirror of the lowpass. Both are checked
    against the orthonormality identities at construction, so a corrupted
    table cannot slip through silently.
    """

    order: int
    lowpass: np.ndarray = field(init=False, repr=False)
    highpass: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.order not in _DB_LOWPASS:
            raise ValueError(
                f"unsupported Daubechies order {self.order}; available orders are 1..10"
            )
        lo = np.array(_DB_LOWPASS[self.order])
        hi = (-1.0) ** np.arange(lo.size) * lo[::-1]
        if abs(lo.sum() - math.sqrt(2.0)) > _VALIDATION_TOL:
            raise ValueError(f"db{self.order} lowpass does not sum to sqrt(2)")
        if abs(hi.sum()) > _VALIDATION_TOL:
            raise ValueError(f"db{self.order} highpass does not sum to 0")
        for k in range(self.order):
            ac = float(lo[: lo.size - 2 * k] @ lo[2 * k :])
            if abs(ac - (1.0 if k == 0 else 0.0)) > _VALIDATION_TOL:
                raise ValueError(f"db{self.order} fails even-shift orthonormality at lag {2 * k}")
        lo.flags.writeable = False
        hi.flags.writeable = False
        object.__setattr__(self, "lowpass", lo)
        object.__setattr__(self, "highpass", hi)

    @property
    def length(self) -> int:
        return 2 * self.order


@dataclass(frozen=True)
class DWTCoefficients:
    """Coefficient pyramid: level-j details (j = 1 finest) plus the level-J
    approximation, for an input of ``length`` samples."""

    approximation: np.ndarray
    details: tuple[np.ndarray, ...]
    length: int
    mode: str = "periodic"

    @property
    def levels(self) -> int:
        return len(self.details)


@dataclass(frozen=True)
class MRADecomposition:
    """Full-length components A_J and D_1..D_J whose sum is the input."""

    approximation: TimeSeries
    details: tuple[TimeSeries, ...]
    level: int

    def detail(self, j: int) -> TimeSeries:
        """Detail component D_j, j = 1 (finest) .. level (coarsest)."""
        if not 1 <= j <= self.level:
            raise ValueError(f"detail level {j} outside 1..{self.level}")
        return self.details[j - 1]

    @property
    def length(self) -> int:
        return len(self.approximation)


def _check_levels(n: int, levels: int) -> None:
    if levels < 1:
        raise ValueError(f"decomposition level must be >= 1; got {levels}")
    if n % (1 << levels) != 0:
        raise ValueError(
            f"series length {n} does not support {levels} periodic levels; "
            f"the length must be divisible by {1 << levels}"
        )


def _analysis_step(x: np.ndarray, lo: np.ndarray, hi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # c[k] = sum_j lo[j] * x[(2k - j) mod n]: circular convolution, even taps.
    n = x.size
    idx = (2 * np.arange(n // 2)[:, None] - np.arange(lo.size)[None, :]) % n
    windows = x[idx]
    return windows @ lo, windows @ hi


def _synthesis_step(approx: np.ndarray, detail: np.ndarray, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    # Exact transpose of the analysis map, so orthogonality gives perfect
    # reconstruction.
    half = approx.size
    n = 2 * half
    idx = (2 * np.arange(half)[:, None] - np.arange(lo.size)[None, :]) % n
    x = np.zeros(n)
    np.add.at(x, idx, approx[:, None] * lo[None, :] + detail[:, None] * hi[None, :])
    return x


def dwt_forward(series: TimeSeries, filt: DaubechiesFilter, levels: int) -> DWTCoefficients:
    """Pyramid analysis with periodic boundary handling.

    Requires the length to be divisible by 2**levels; level j then holds
    N / 2**j detail coefficients.
    """
    n = len(series)
    _check_levels(n, levels)
    approx = series.values.copy()
    details = []
    for _ in range(levels):
        approx, d = _analysis_step(approx, filt.lowpass, filt.highpass)
        details.append(d)
    return DWTCoefficients(approximation=approx, details=tuple(details), length=n)


def dwt_inverse(coeffs: DWTCoefficients, filt: DaubechiesFilter) -> TimeSeries:
    """Reconstruct the series a coefficient pyramid came from."""
    levels = coeffs.levels
    if levels < 1:
        raise ValueError("coefficient pyramid holds no detail levels")
    for j, d in enumerate(coeffs.details, start=1):
        expected = coeffs.length // (1 << j)
        if d.size != expected:
            raise ValueError(
                f"level-{j} detail holds {d.size} coefficients; expected {expected}"
            )
    if coeffs.approximation.size != coeffs.length // (1 << levels):
        raise ValueError(
            f"approximation holds {coeffs.approximation.size} coefficients; "
            f"expected {coeffs.length // (1 << levels)}"
        )
    x = coeffs.approximation
    for d in reversed(coeffs.details):
        x = _synthesis_step(x, d, filt.lowpass, filt.highpass)
    return TimeSeries(x)


def mra_decompose(
    series: TimeSeries,
    filt: DaubechiesFilter,
    levels: int,
    allow_truncation: bool = False,
) -> MRADecomposition:
    """Split ``series`` into A_J plus D_1..D_J on the original time axis.

    Lengths not divisible by 2**levels are rejected unless the caller opts
    into truncation, which drops trailing samples down to the largest
    compatible length (and therefore changes the statistics of the result).
    """
    n = len(series)
    block = 1 << max(levels, 1)
    if n % block != 0 and allow_truncation and n >= block:
        series = series.restrict(1, (n // block) * block)
    coeffs = dwt_forward(series, filt, levels)

    def rebuild(keep_detail: int | None) -> np.ndarray:
        approx = coeffs.approximation if keep_detail is None else np.zeros_like(coeffs.approximation)
        details = tuple(
            d if keep_detail == j else np.zeros_like(d)
            for j, d in enumerate(coeffs.details, start=1)
        )
        pruned = DWTCoefficients(approximation=approx, details=details, length=len(series))
        return dwt_inverse(pruned, filt).values

    approximation = series.with_values(rebuild(None), label=f"a{levels}")
    details = tuple(
        series.with_values(rebuild(j), label=f"d{j}") for j in range(1, levels + 1)
    )
    return MRADecomposition(approximation=approximation, details=details, level=levels)
