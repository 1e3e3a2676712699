"""Command-line front end: CSV ingestion and the stats / fit-fuzzy /
decompose / hybrid / report commands.

Numbers are serialized with 10 significant digits and every output file is
written to a temporary name first and renamed into place, so a failing run
never leaves a partially written file behind. Identical configuration and
input produce byte-identical outputs.
"""

from __future__ import annotations

import csv
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import click

from .fuzzy import FuzzyLinearModel, evaluate_band, fit_fuzzy_line
from .hybrid import HybridEstimate, error_report, estimate_hybrid
from .series import TimeSeries, describe, log_transform, mse, rmse
from .wavelet import DaubechiesFilter, MRADecomposition, mra_decompose

__all__ = ["RunConfig", "load_csv", "main"]

_FORMATS = ("table", "json", "csv")


@dataclass
class RunConfig:
    """Validated command configuration shared by all subcommands."""

    input_path: Path
    column: str = "close"
    apply_log: bool = False
    h: float = 0.5
    wavelet_order: int = 4
    levels: int = 6
    detail_level: int = 1
    out_dir: Path = Path(".")
    fmt: str = "table"

    def validate(self) -> None:
        if not 0.0 <= self.h < 1.0:
            raise ValueError(f"--h must lie in [0, 1); got {self.h}")
        if not 1 <= self.wavelet_order <= 10:
            raise ValueError(f"--wavelet-order must lie in 1..10; got {self.wavelet_order}")
        if self.levels < 1:
            raise ValueError(f"--levels must be >= 1; got {self.levels}")
        if not 1 <= self.detail_level <= self.levels:
            raise ValueError(
                f"--detail-level must lie in 1..{self.levels}; got {self.detail_level}"
            )
        if self.fmt not in _FORMATS:
            raise ValueError(f"--format must be one of {_FORMATS}; got {self.fmt}")


def bundled_data_path() -> Path:
    """Path of the packaged sample dataset (reconstructed monthly SP500
    closes, Aug 1998 - Mar 2009; see README for provenance)."""
    return Path(str(resources.files("wavefuzz").joinpath("data/sp500_monthly.csv")))


def load_csv(path: Path | str, column: str) -> TimeSeries:
    """Read one numeric CSV column into a 1-indexed series.

    The header row is auto-detected (a first row whose cells all parse as
    numbers is data). ``column`` is a header name or a 0-based index; parse
    failures are reported with the offending file row number.
    """
    path = Path(path)
    if not path.is_file():
        raise ValueError(f"no such input file: {path}")
    with open(path, newline="", encoding="utf-8") as fh:
        rows = [(rownum, row) for rownum, row in enumerate(csv.reader(fh), start=1) if row]
    if not rows:
        raise ValueError(f"{path} is empty")

    first_row = rows[0][1]
    has_header = not all(_parses_as_number(cell) for cell in first_row)
    col_idx: int | None = None
    if has_header:
        header = [cell.strip() for cell in first_row]
        if column in header:
            col_idx = header.index(column)
        data_rows = rows[1:]
    else:
        data_rows = rows
    if col_idx is None:
        try:
            col_idx = int(column)
        except ValueError:
            available = ", ".join(repr(c.strip()) for c in first_row) if has_header else "none"
            raise ValueError(
                f"column {column!r} not found in {path} (header columns: {available})"
            ) from None
        if col_idx < 0 or (data_rows and col_idx >= len(data_rows[0][1])):
            raise ValueError(f"column index {col_idx} out of range for {path}")

    values = []
    for rownum, row in data_rows:
        if col_idx >= len(row):
            raise ValueError(f"row {rownum} of {path} has no column {col_idx}")
        cell = row[col_idx].strip()
        try:
            value = float(cell)
        except ValueError:
            raise ValueError(
                f"could not parse {cell!r} as a number at row {rownum} of {path}"
            ) from None
        if not math.isfinite(value):
            raise ValueError(f"non-finite value {cell!r} at row {rownum} of {path}")
        values.append(value)
    if not values:
        raise ValueError(f"column {column!r} of {path} holds no data rows")
    return TimeSeries(values, start_index=1, label=str(column))


def _parses_as_number(cell: str) -> bool:
    try:
        float(cell)
    except ValueError:
        return False
    return True


def _fmt(value) -> str:
    if isinstance(value, float):
        if math.isnan(value):
            return "undefined"
        return format(value, ".10g")
    return str(value)


def _json_value(value):
    if isinstance(value, float):
        if math.isnan(value):
            return None
        return float(format(value, ".10g"))
    return value


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _csv_text(header: list[str], rows: list[list]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(cell) for cell in row) for row in rows)
    return "\n".join(lines) + "\n"


def _render(cfg: RunConfig, header: list[str], rows: list[list]) -> str:
    if cfg.fmt == "csv":
        return _csv_text(header, rows).rstrip("\n")
    if cfg.fmt == "json":
        payload = [
            {key: _json_value(cell) for key, cell in zip(header, row)} for row in rows
        ]
        return json.dumps(payload, indent=2)
    cells = [header] + [[_fmt(cell) for cell in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells)


def _load_series(cfg: RunConfig) -> TimeSeries:
    series = load_csv(cfg.input_path, cfg.column)
    if cfg.apply_log:
        series = log_transform(series)
    return series


def _decompose(cfg: RunConfig, series: TimeSeries) -> MRADecomposition:
    return mra_decompose(series, DaubechiesFilter(cfg.wavelet_order), cfg.levels)


def _band_rows(series: TimeSeries, model: FuzzyLinearModel) -> list[list]:
    rows = []
    for t, y in zip(series.times, series.values):
        band = evaluate_band(model, int(t))
        rows.append([int(t), float(y), band.center, band.lower, band.upper])
    return rows


def _estimate_rows(series: TimeSeries, estimate: HybridEstimate) -> list[list]:
    return [
        [int(t), float(y), float(c), float(lo), float(up)]
        for t, y, c, lo, up in zip(
            series.times,
            series.values,
            estimate.center.values,
            estimate.lower.values,
            estimate.upper.values,
        )
    ]


_ESTIMATE_HEADER = ["t", "observed", "center", "lower", "upper"]


def _common_options(fn):
    options = [
        click.option(
            "--input",
            "input_path",
            type=click.Path(path_type=Path),
            default=None,
            help="Input CSV file [default: bundled SP500 sample].",
        ),
        click.option(
            "--column",
            default="close",
            show_default=True,
            help="Column name or 0-based column index.",
        ),
        click.option(
            "--log",
            "apply_log",
            is_flag=True,
            help="Apply a natural-log transform after loading.",
        ),
        click.option(
            "--format",
            "fmt",
            type=click.Choice(_FORMATS),
            default="table",
            show_default=True,
            help="Rendering for command output.",
        ),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


def _wavelet_options(fn):
    options = [
        click.option("--wavelet-order", default=4, show_default=True, type=int,
                     help="Daubechies order (vanishing moments), 1..10."),
        click.option("--levels", default=6, show_default=True, type=int,
                     help="Decomposition depth J."),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


def _make_config(input_path, **kwargs) -> RunConfig:
    if input_path is None:
        input_path = bundled_data_path()
    cfg = RunConfig(input_path=input_path, **kwargs)
    cfg.validate()
    return cfg


def _fail(exc: Exception) -> None:
    click.echo(f"error: {exc}", err=True)
    sys.exit(1)


@click.group()
def main() -> None:
    """Fuzzy-band and wavelet estimation toolkit for uniformly sampled series."""


@main.command()
@_common_options
def stats(input_path, column, apply_log, fmt) -> None:
    """Descriptive statistics of the (optionally log-transformed) series."""
    try:
        cfg = _make_config(input_path, column=column, apply_log=apply_log, fmt=fmt)
        result = describe(_load_series(cfg))
        header = ["n", "mean", "variance", "max", "min", "kurtosis", "skewness"]
        row = [result.n, result.mean, result.variance, result.max, result.min,
               result.kurtosis, result.skewness]
        click.echo(_render(cfg, header, [row]))
    except Exception as exc:
        _fail(exc)


@main.command("fit-fuzzy")
@_common_options
@click.option("--h", "h", default=0.5, show_default=True, type=float,
              help="Membership threshold in [0, 1).")
@click.option("--out-dir", type=click.Path(path_type=Path), default=None,
              help="Also write the fitted band as estimate_fuzzy.csv here.")
def fit_fuzzy(input_path, column, apply_log, fmt, h, out_dir) -> None:
    """Fit one fuzzy line to the whole series."""
    try:
        cfg = _make_config(input_path, column=column, apply_log=apply_log, fmt=fmt, h=h)
        series = _load_series(cfg)
        model = fit_fuzzy_line(series, cfg.h)
        center = series.with_values([evaluate_band(model, int(t)).center for t in series.times])
        header = ["a0_center", "a0_spread", "a1_center", "a1_spread", "h",
                  "objective", "mse", "rmse"]
        row = [model.a0.center, model.a0.spread, model.a1.center, model.a1.spread,
               model.h, model.objective, mse(series, center), rmse(series, center)]
        click.echo(_render(cfg, header, [row]))
        if out_dir is not None:
            path = Path(out_dir) / "estimate_fuzzy.csv"
            _atomic_write(path, _csv_text(_ESTIMATE_HEADER, _band_rows(series, model)))
            click.echo(f"wrote {path}")
    except Exception as exc:
        _fail(exc)


@main.command()
@_common_options
@_wavelet_options
@click.option("--out-dir", type=click.Path(path_type=Path), default=Path("."),
              show_default=True, help="Directory for components.csv.")
def decompose(input_path, column, apply_log, fmt, wavelet_order, levels, out_dir) -> None:
    """Write the A_J and D_1..D_J components and summarize their variance."""
    try:
        cfg = _make_config(input_path, column=column, apply_log=apply_log, fmt=fmt,
                           wavelet_order=wavelet_order, levels=levels, out_dir=Path(out_dir))
        series = _load_series(cfg)
        decomposition = _decompose(cfg, series)
        components = [decomposition.approximation, *decomposition.details]
        header = ["t", "input"] + [c.label for c in components]
        rows = [
            [int(t), float(y)] + [float(c.values[i]) for c in components]
            for i, (t, y) in enumerate(zip(series.times, series.values))
        ]
        path = cfg.out_dir / "components.csv"
        _atomic_write(path, _csv_text(header, rows))
        summary = [[c.label, float(c.values.var())] for c in components]
        click.echo(_render(cfg, ["component", "variance"], summary))
        click.echo(f"wrote {path}")
    except Exception as exc:
        _fail(exc)


@main.command()
@_common_options
@_wavelet_options
@click.option("--h", "h", default=0.5, show_default=True, type=float,
              help="Membership threshold in [0, 1).")
@click.option("--detail-level", default=1, show_default=True, type=int,
              help="Which detail component drives the segmentation.")
@click.option("--out-dir", type=click.Path(path_type=Path), default=Path("."),
              show_default=True, help="Directory for the estimate series.")
def hybrid(input_path, column, apply_log, fmt, wavelet_order, levels, h,
           detail_level, out_dir) -> None:
    """Piecewise fuzzy estimation segmented at one detail level's extrema."""
    try:
        cfg = _make_config(input_path, column=column, apply_log=apply_log, fmt=fmt,
                           wavelet_order=wavelet_order, levels=levels, h=h,
                           detail_level=detail_level, out_dir=Path(out_dir))
        series = _load_series(cfg)
        estimate = estimate_hybrid(_load_series(cfg), _decompose(cfg, series),
                                   cfg.detail_level, cfg.h)
        path = cfg.out_dir / f"estimate_hybrid_d{cfg.detail_level}.csv"
        _atomic_write(path, _csv_text(_ESTIMATE_HEADER, _estimate_rows(series, estimate)))
        header = ["detail_level", "segments", "boundaries", "h", "mse", "rmse"]
        row = [cfg.detail_level, len(estimate.segment_models),
               " ".join(str(b) for b in estimate.segmentation.boundaries),
               cfg.h, mse(series, estimate.center), rmse(series, estimate.center)]
        click.echo(_render(cfg, header, [row]))
        click.echo(f"wrote {path}")
    except Exception as exc:
        _fail(exc)


@main.command()
@_common_options
@_wavelet_options
@click.option("--h", "h", default=0.5, show_default=True, type=float,
              help="Membership threshold in [0, 1).")
@click.option("--out-dir", type=click.Path(path_type=Path), default=Path("."),
              show_default=True, help="Directory for the error table and estimates.")
def report(input_path, column, apply_log, fmt, wavelet_order, levels, h, out_dir) -> None:
    """Error table for the global fuzzy fit and every hybrid level."""
    try:
        cfg = _make_config(input_path, column=column, apply_log=apply_log, fmt=fmt,
                           wavelet_order=wavelet_order, levels=levels, h=h,
                           out_dir=Path(out_dir))
        series = _load_series(cfg)
        decomposition = _decompose(cfg, series)
        rows = [list(r) for r in error_report(series, decomposition, cfg.h)]
        _atomic_write(cfg.out_dir / "error_table.csv", _csv_text(["model", "mse", "rmse"], rows))

        model = fit_fuzzy_line(series, cfg.h)
        _atomic_write(cfg.out_dir / "estimate_fuzzy.csv",
                      _csv_text(_ESTIMATE_HEADER, _band_rows(series, model)))
        for level in range(cfg.levels, 0, -1):
            estimate = estimate_hybrid(series, decomposition, level, cfg.h)
            _atomic_write(cfg.out_dir / f"estimate_hybrid_d{level}.csv",
                          _csv_text(_ESTIMATE_HEADER, _estimate_rows(series, estimate)))
        click.echo(_render(cfg, ["model", "mse", "rmse"], rows))
        click.echo(f"wrote {cfg.out_dir / 'error_table.csv'} and per-model estimates")
    except Exception as exc:
        _fail(exc)


if __name__ == "__main__":
    main()
