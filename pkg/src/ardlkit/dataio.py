"""Annual time-series containers, CSV ingest, transforms and descriptive statistics.

A :class:`Dataset` holds equally long annual series that share one year index.
Every transform returns a new dataset; nothing is mutated in place.
"""

from __future__ import annotations

import csv
import io
import math
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ardlkit.errors import DataError

MIN_OBS = 10
YEAR_COLUMN = "year"


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class TimeSeries:
    """One annual series.

    Parameters
    ----------
    name : str
        Variable identifier.
    start_year : int
        Year of the first observation; later years are consecutive.
    values : array_like
        Observations, finite reals.
    transform_lineage : tuple of str
        Transforms applied so far, oldest first (``"log"``, ``"diff-1"``, ``"lag-2"``).
    """

    name: str
    start_year: int
    values: np.ndarray
    transform_lineage: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        values = _frozen(self.values)
        if values.ndim != 1 or values.size == 0:
            raise DataError(f"series {self.name!r} must be a non-empty 1-d sequence")
        if not np.all(np.isfinite(values)):
            bad = int(np.flatnonzero(~np.isfinite(values))[0])
            raise DataError(
                f"series {self.name!r} has a missing or non-finite value in year "
                f"{self.start_year + bad}"
            )
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "start_year", int(self.start_year))
        object.__setattr__(self, "transform_lineage", tuple(self.transform_lineage))

    def __len__(self) -> int:
        return self.values.size

    @property
    def years(self) -> np.ndarray:
        return np.arange(self.start_year, self.start_year + len(self))

    @property
    def end_year(self) -> int:
        return self.start_year + len(self) - 1


@dataclass(frozen=True)
class Dataset:
    """Named annual series aligned on a common, consecutive year index."""

    variables: Mapping[str, TimeSeries] = field(default_factory=dict)

    def __post_init__(self) -> None:
        variables = dict(self.variables)
        if not variables:
            raise DataError("a dataset needs at least one variable")
        lengths = {len(s) for s in variables.values()}
        starts = {s.start_year for s in variables.values()}
        if len(lengths) != 1 or len(starts) != 1:
            raise DataError("all series in a dataset must share start year and length")
        for key, series in variables.items():
            if key != series.name:
                raise DataError(f"variable key {key!r} does not match series name {series.name!r}")
        object.__setattr__(self, "variables", variables)

    @classmethod
    def from_arrays(
        cls, data: Mapping[str, Iterable[float]], start_year: int = 1
    ) -> Dataset:
        return cls(
            {name: TimeSeries(name, start_year, np.asarray(v, dtype=float)) for name, v in data.items()}
        )

    def __getitem__(self, name: str) -> TimeSeries:
        try:
            return self.variables[name]
        except KeyError:
            raise DataError(f"unknown variable {name!r}; have {list(self.variables)}") from None

    def __contains__(self, name: object) -> bool:
        return name in self.variables

    def __len__(self) -> int:
        return len(next(iter(self.variables.values())))

    @property
    def names(self) -> list[str]:
        return list(self.variables)

    @property
    def start_year(self) -> int:
        return next(iter(self.variables.values())).start_year

    @property
    def end_year(self) -> int:
        return self.start_year + len(self) - 1

    @property
    def year_index(self) -> range:
        return range(self.start_year, self.end_year + 1)

    @property
    def years(self) -> np.ndarray:
        return np.arange(self.start_year, self.end_year + 1)

    def array(self, name: str) -> np.ndarray:
        return self[name].values

    def select(self, names: Iterable[str]) -> Dataset:
        return Dataset({n: self[n] for n in names})

    def with_series(self, series: TimeSeries) -> Dataset:
        """Add or replace ``series``; the other series are truncated to the overlap."""
        start = max(self.start_year, series.start_year)
        end = min(self.end_year, series.end_year)
        if end < start:
            raise DataError("series does not overlap the dataset's year index")
        out = {}
        for name, s in self.variables.items():
            if name != series.name:
                out[name] = _truncate(s, start, end)
        out[series.name] = _truncate(series, start, end)
        return Dataset(out)


def _truncate(series: TimeSeries, start: int, end: int) -> TimeSeries:
    lo = start - series.start_year
    hi = end - series.start_year + 1
    if lo == 0 and hi == len(series):
        return series
    return TimeSeries(series.name, start, series.values[lo:hi], series.transform_lineage)


@dataclass(frozen=True)
class ModelSpec:
    """Roles of the variables in a single-equation model.

    For the log-linear emissions model the dependent variable is log CO2 and the
    regressors are the log population/affluence/technology terms.
    """

    dependent: str
    regressors: tuple[str, ...]
    intercept: bool = True
    trend: bool = False

    def __post_init__(self) -> None:
        regs = tuple(self.regressors)
        object.__setattr__(self, "regressors", regs)
        if not regs:
            raise DataError("a model needs at least one regressor")
        if self.dependent in regs:
            raise DataError(f"dependent variable {self.dependent!r} is also listed as a regressor")
        if len(set(regs)) != len(regs):
            raise DataError("duplicate regressor names")

    @property
    def variables(self) -> tuple[str, ...]:
        return (self.dependent, *self.regressors)

    def check(self, d: Dataset) -> None:
        missing = [v for v in self.variables if v not in d]
        if missing:
            raise DataError(f"model variable(s) not in dataset: {', '.join(missing)}")


# --------------------------------------------------------------------------- ingest


def load_dataset(source: str, schema: Mapping[str, str] | None = None) -> Dataset:
    """Parse CSV text into a :class:`Dataset`.

    Parameters
    ----------
    source : str
        CSV content with a header row whose first column is ``year``.
    schema : mapping, optional
        Column name -> variable name. Only mapped columns are loaded. When omitted,
        every non-year column is loaded under its own name.

    Raises
    ------
    DataError
        Missing column, non-numeric cell, gap or duplicate year, or fewer than
        ten rows.
    """
    reader = csv.reader(io.StringIO(source.lstrip("﻿")))
    try:
        header = [h.strip() for h in next(reader)]
    except StopIteration:
        raise DataError("empty input") from None
    if not header or header[0].lower() != YEAR_COLUMN:
        raise DataError(f"first column must be {YEAR_COLUMN!r}, got {header[:1]}")
    if len(header) < 2:
        raise DataError("need at least one numeric column besides year")
    if len(set(header)) != len(header):
        raise DataError("duplicate column names in header")

    if schema is None:
        schema = {h: h for h in header[1:]}
    missing = [c for c in schema if c not in header]
    if missing:
        raise DataError(f"missing column(s): {', '.join(missing)}")
    if len(set(schema.values())) != len(schema):
        raise DataError("schema maps two columns to the same variable name")

    rows = [r for r in reader if any(cell.strip() for cell in r)]
    if len(rows) < MIN_OBS:
        raise DataError(
            f"too short: {len(rows)} rows, at least {MIN_OBS} observations are required"
        )

    years: list[int] = []
    for lineno, row in enumerate(rows, start=2):
        if len(row) != len(header):
            raise DataError(f"line {lineno}: expected {len(header)} cells, got {len(row)}")
        cell = row[0].strip()
        try:
            years.append(int(cell))
        except ValueError:
            raise DataError(f"line {lineno}: year {cell!r} is not an integer") from None

    for prev, cur in zip(years, years[1:]):
        if cur == prev:
            raise DataError(f"duplicate year {cur}")
        if cur != prev + 1:
            if cur < prev:
                raise DataError(f"years not in increasing order at {cur}")
            gap = ", ".join(str(y) for y in range(prev + 1, cur))
            raise DataError(f"gap in year column: missing {gap}")

    variables = {}
    for column, name in schema.items():
        j = header.index(column)
        values = []
        for year, row in zip(years, rows):
            cell = row[j].strip()
            try:
                value = float(cell)
            except ValueError:
                raise DataError(
                    f"non-numeric cell {cell!r} in column {column!r}, year {year}"
                ) from None
            if not math.isfinite(value):
                raise DataError(f"non-finite cell {cell!r} in column {column!r}, year {year}")
            values.append(value)
        variables[name] = TimeSeries(name, years[0], values)
    return Dataset(variables)


def read_dataset(path: str | Path, schema: Mapping[str, str] | None = None) -> Dataset:
    return load_dataset(Path(path).read_text(encoding="utf-8"), schema)


def dataset_to_csv(d: Dataset) -> str:
    """Serialize to the same CSV dialect :func:`load_dataset` reads (round-trip exact)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([YEAR_COLUMN, *d.names])
    cols = [d.array(n) for n in d.names]
    for i, year in enumerate(d.years):
        writer.writerow([int(year), *(repr(float(c[i])) for c in cols)])
    return buf.getvalue()


def sample_data_path() -> Path:
    """Path of the bundled synthetic ``sample_usa.csv``."""
    return Path(__file__).parent / "data" / "sample_usa.csv"


# --------------------------------------------------------------------------- transforms


def transform(
    d: Dataset,
    variable: str,
    kind: str,
    order: int = 1,
    name: str | None = None,
) -> Dataset:
    """Apply ``log``, ``diff`` or ``lag`` to one variable.

    ``diff`` of order d is the d-th difference; ``lag`` k shifts values forward so
    the value at year t is the original value at t-k. Both shorten the common
    index from the front and every other series is truncated to match.

    If ``name`` is given the result is added under that name, otherwise it
    replaces the original variable.
    """
    series = d[variable]
    values = series.values
    target = name or variable
    if name is not None and name in d and name != variable:
        raise DataError(f"variable {name!r} already exists")

    if kind == "log":
        bad = np.flatnonzero(values <= 0)
        if bad.size:
            year = series.start_year + int(bad[0])
            raise DataError(
                f"log of non-positive value {values[bad[0]]!r} in {variable!r}, year {year}"
            )
        new = TimeSeries(target, series.start_year, np.log(values), (*series.transform_lineage, "log"))
    elif kind in ("diff", "lag"):
        order = int(order)
        if order < 1:
            raise DataError(f"{kind} order must be >= 1")
        if order >= len(values):
            raise DataError(f"{kind} order {order} >= series length {len(values)}")
        out = np.diff(values, n=order) if kind == "diff" else values[:-order]
        new = TimeSeries(
            target, series.start_year + order, out, (*series.transform_lineage, f"{kind}-{order}")
        )
    else:
        raise DataError(f"unknown transform {kind!r}; use log, diff or lag")

    if name is None:
        rest = {n: s for n, s in d.variables.items() if n != variable}
        if not rest:
            return Dataset({target: new})
        base = Dataset(rest)
        merged = base.with_series(new)
        # keep the original column order
        return Dataset({n: merged[target if n == variable else n] for n in d.names})
    return d.with_series(new)


def log_all(d: Dataset, names: Iterable[str] | None = None, prefix: str = "L") -> Dataset:
    """Log-transform several variables, storing each as ``prefix + name``."""
    for n in list(names if names is not None else d.names):
        d = transform(d, n, "log", name=prefix + n)
    return d


# --------------------------------------------------------------------------- statistics


@dataclass(frozen=True)
class VariableSummary:
    count: int
    mean: float
    std: float
    min: float
    max: float


@dataclass(frozen=True)
class SummaryStats:
    """Per-variable count, mean, sample standard deviation, min and max."""

    records: dict[str, VariableSummary]

    def __getitem__(self, name: str) -> VariableSummary:
        return self.records[name]


def summary_stats(d: Dataset) -> SummaryStats:
    records = {}
    for name in d.names:
        x = d.array(name)
        n = x.size
        mean = float(np.mean(x))
        std = float(np.std(x, ddof=1)) if n > 1 else 0.0
        records[name] = VariableSummary(n, mean, std, float(np.min(x)), float(np.max(x)))
    return SummaryStats(records)
