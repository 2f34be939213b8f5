"""ADF, Phillips-Perron and DF-GLS unit-root tests with integration-order classification."""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass, field, replace

import numpy as np

from ardlkit import tables
from ardlkit.dataio import Dataset, TimeSeries
from ardlkit.errors import SampleTooShortError
from ardlkit.linreg import DesignMatrix, automatic_bandwidth, long_run_variance, nested_rss, ols_fit

TESTS = ("adf", "pp", "dfgls")
DETERMINISTICS = ("none", "constant", "constant_trend")
LAG_POLICIES = ("fixed", "aic", "schwert")
MIN_EFFECTIVE = 15
LEVELS = ("1%", "5%", "10%")

# local-to-unity constants for GLS detrending
CBAR = {"constant": -7.0, "constant_trend": -13.5}


@dataclass(frozen=True)
class UnitRootSpec:
    """How to run one unit-root test.

    ``lag_policy`` is ``"aic"`` (search 0..max_lags, default Schwert bound),
    ``"fixed"`` (use ``lags``) or ``"schwert"`` (fix lags at the Schwert bound).
    ``criterion`` may be switched to ``"bic"`` or ``"hq"`` for the search.
    ``bandwidth`` applies to PP only; ``None`` means automatic.
    ``lag_detrending`` (DF-GLS only) picks the series the lag search runs on:
    ``"ols"`` searches the ordinary ADF regression with the same deterministics,
    ``"gls"`` searches the no-deterministics regression on the GLS-detrended
    series. The OLS search avoids the power loss that the GLS intercept error
    causes far from the unit root (Perron and Qu, 2007).
    """

    test: str = "adf"
    deterministics: str = "constant"
    lag_policy: str = "aic"
    lags: int | None = None
    max_lags: int | None = None
    criterion: str = "aic"
    bandwidth: int | None = None
    lag_detrending: str = "ols"

    def __post_init__(self) -> None:
        if self.test not in TESTS:
            raise ValueError(f"unknown test {self.test!r}; choose from {TESTS}")
        if self.deterministics not in DETERMINISTICS:
            raise ValueError(f"unknown deterministics {self.deterministics!r}")
        if self.test == "dfgls" and self.deterministics == "none":
            raise ValueError("dfgls requires deterministics 'constant' or 'constant_trend'")
        if self.lag_policy not in LAG_POLICIES:
            raise ValueError(f"unknown lag policy {self.lag_policy!r}")
        if self.lag_policy == "fixed" and (self.lags is None or self.lags < 0):
            raise ValueError("fixed lag policy needs lags >= 0")
        if self.criterion not in ("aic", "bic", "hq"):
            raise ValueError(f"unknown criterion {self.criterion!r}")
        if self.lag_detrending not in ("ols", "gls"):
            raise ValueError(f"lag_detrending must be 'ols' or 'gls', not {self.lag_detrending!r}")


@dataclass(frozen=True)
class UnitRootResult:
    test: str
    deterministics: str
    statistic: float
    lags_used: int
    nobs: int
    critical_values: dict[str, float]
    level: str = "level"
    bandwidth: int | None = None
    series: str = ""

    @property
    def decision(self) -> str:
        return "reject_unit_root" if self.statistic < self.critical_values["5%"] else "fail_to_reject"

    @property
    def rejects(self) -> bool:
        return self.decision == "reject_unit_root"

    @property
    def p_value_band(self) -> str:
        return p_value_band(self.statistic, self.critical_values)

    @property
    def stars(self) -> str:
        return stars_from_critical_values(self.statistic, self.critical_values)

    def rejects_at(self, level: str) -> bool:
        return self.statistic < self.critical_values[level]


def p_value_band(statistic: float, critical_values: dict[str, float]) -> str:
    if statistic < critical_values["1%"]:
        return "<0.01"
    if statistic < critical_values["5%"]:
        return "0.01-0.05"
    if statistic < critical_values["10%"]:
        return "0.05-0.10"
    return ">0.10"


def stars_from_critical_values(statistic: float, critical_values: dict[str, float]) -> str:
    for level, mark in (("1%", "***"), ("5%", "**"), ("10%", "*")):
        if statistic < critical_values[level]:
            return mark
    return ""


def schwert_max_lag(T: int) -> int:
    return int(math.floor(12.0 * (T / 100.0) ** 0.25))


# --------------------------------------------------------------------------- critical values


def unit_root_critical_values(test: str, deterministics: str, n: int) -> dict[str, float]:
    """Left-tail critical values at 1%, 5% and 10% for effective sample size ``n``.

    ADF and PP share the Dickey-Fuller distribution (MacKinnon response surface);
    DF-GLS uses the embedded finite-sample tables in :mod:`ardlkit.tables`.
    """
    if n < MIN_EFFECTIVE:
        raise SampleTooShortError(f"critical values need n >= {MIN_EFFECTIVE}, got {n}")
    if test in ("adf", "pp"):
        key = {"none": "n", "constant": "c", "constant_trend": "ct"}[deterministics]
        surface = tables.MACKINNON_TAU[key]
        return {
            lvl: float(sum(c / n**i for i, c in enumerate(surface[lvl]))) for lvl in LEVELS
        }
    if test == "dfgls":
        if deterministics not in ("constant", "constant_trend"):
            raise ValueError(f"dfgls has no critical values for deterministics {deterministics!r}")
        return tables.interpolate_inverse_n(tables.DFGLS[deterministics], n)
    raise ValueError(f"unsupported test {test!r}")


# --------------------------------------------------------------------------- statistics


def _deterministic_columns(n: int, deterministics: str, offset: int = 0) -> np.ndarray:
    cols = []
    if deterministics in ("constant", "constant_trend"):
        cols.append(np.ones(n))
    if deterministics == "constant_trend":
        cols.append(np.arange(offset + 1.0, offset + n + 1.0))
    return np.column_stack(cols) if cols else np.empty((n, 0))


def gls_detrend(y: np.ndarray, deterministics: str) -> np.ndarray:
    """Quasi-difference at 1 + cbar/T, estimate the deterministics by OLS, subtract them."""
    y = np.asarray(y, dtype=float)
    T = y.size
    abar = 1.0 + CBAR[deterministics] / T
    z = _deterministic_columns(T, deterministics)
    ya = np.concatenate(([y[0]], y[1:] - abar * y[:-1]))
    za = np.vstack((z[:1], z[1:] - abar * z[:-1]))
    delta = np.linalg.lstsq(za, ya, rcond=None)[0]
    return y - z @ delta


def _adf_arrays(y: np.ndarray, p: int, start: int, deterministics: str) -> tuple[np.ndarray, np.ndarray, list[str]]:
    """Design for dy_t on [det, y_{t-1}, dy_{t-1..t-p}] over rows ``start..`` of dy."""
    dy = np.diff(y)
    rows = np.arange(start, dy.size)
    n = rows.size
    det = _deterministic_columns(n, deterministics, offset=start)
    names = ["const", "trend"][: det.shape[1]]
    cols = [det, y[rows][:, None]]
    names.append("y(-1)")
    for i in range(1, p + 1):
        cols.append(dy[rows - i][:, None])
        names.append(f"dy(-{i})")
    return np.hstack(cols), dy[rows], names


def _select_lags(y: np.ndarray, pmax: int, deterministics: str, criterion: str) -> int:
    X, resp, _ = _adf_arrays(y, pmax, pmax, deterministics)
    n = resp.size
    kdet = X.shape[1] - 1 - pmax
    sizes = [kdet + 1 + p for p in range(pmax + 1)]
    rss = nested_rss(X, resp, sizes)
    best, best_val = 0, math.inf
    for p, (k, r) in enumerate(zip(sizes, rss)):
        if not np.isfinite(r) or r <= 0:
            continue
        base = n * math.log(r / n)
        penalty = {"aic": 2 * k, "bic": k * math.log(n), "hq": 2 * k * math.log(math.log(n))}[criterion]
        val = base + penalty
        if val < best_val:
            best, best_val = p, val
    return best


def _resolve_lags(y: np.ndarray, spec: UnitRootSpec, deterministics: str) -> int:
    T = y.size
    ceiling = T - 1 - MIN_EFFECTIVE  # largest p keeping MIN_EFFECTIVE rows
    if ceiling < 0:
        raise SampleTooShortError(
            f"series of length {T} is too short: need at least {MIN_EFFECTIVE + 1} observations"
        )
    if spec.lag_policy == "fixed":
        p = int(spec.lags)
    elif spec.lag_policy == "schwert":
        p = min(schwert_max_lag(T), ceiling)
    else:
        pmax = schwert_max_lag(T) if spec.max_lags is None else int(spec.max_lags)
        if spec.max_lags is None:
            pmax = min(pmax, ceiling)
        if pmax >= T - 5 or pmax > ceiling:
            raise SampleTooShortError(f"max_lags={pmax} leaves too few observations for T={T}")
        return _select_lags(y, pmax, deterministics, spec.criterion)
    if p >= T - 5 or p > ceiling:
        raise SampleTooShortError(f"lags={p} leaves fewer than {MIN_EFFECTIVE} observations for T={T}")
    return p


def _df_tstat(y: np.ndarray, p: int, deterministics: str) -> tuple[float, int, object]:
    X, resp, names = _adf_arrays(y, p, p, deterministics)
    fit = ols_fit(DesignMatrix(X, resp, tuple(names), "dy"))
    return float(fit.t_statistics[names.index("y(-1)")]), fit.nobs, fit


def _values(y) -> tuple[np.ndarray, str]:
    if isinstance(y, TimeSeries):
        return y.values, y.name
    return np.asarray(y, dtype=float).ravel(), ""


def unit_root_test(y: TimeSeries | np.ndarray, spec: UnitRootSpec | None = None, *, difference: bool = False) -> UnitRootResult:
    """Run the test described by ``spec`` on ``y`` (or on its first difference).

    The statistic is the t-ratio on the lagged level in the (possibly augmented)
    Dickey-Fuller regression; for PP it is the Phillips-Perron Z_t correction of
    the zero-lag t-ratio; for DF-GLS the regression has no deterministics and
    runs on the GLS-detrended series.
    """
    spec = spec or UnitRootSpec()
    values, name = _values(y)
    if difference:
        values = np.diff(values)
    if values.size - 1 < MIN_EFFECTIVE:
        raise SampleTooShortError(
            f"series of length {values.size} is too short for a unit-root test "
            f"(need {MIN_EFFECTIVE + 1})"
        )
    level = "first_difference" if difference else "level"

    if spec.test == "adf":
        p = _resolve_lags(values, spec, spec.deterministics)
        stat, nobs, _ = _df_tstat(values, p, spec.deterministics)
        return UnitRootResult(
            "adf", spec.deterministics, stat, p, nobs,
            unit_root_critical_values("adf", spec.deterministics, nobs), level, None, name,
        )

    if spec.test == "dfgls":
        yd = gls_detrend(values, spec.deterministics)
        if spec.lag_detrending == "ols":
            p = _resolve_lags(values, spec, spec.deterministics)
        else:
            p = _resolve_lags(yd, spec, "none")
        stat, nobs, _ = _df_tstat(yd, p, "none")
        return UnitRootResult(
            "dfgls", spec.deterministics, stat, p, nobs,
            unit_root_critical_values("dfgls", spec.deterministics, nobs), level, None, name,
        )

    # Phillips-Perron
    tstat, nobs, fit = _df_tstat(values, 0, spec.deterministics)
    stat, bandwidth = phillips_perron_correction(fit, tstat, spec.bandwidth)
    return UnitRootResult(
        "pp", spec.deterministics, stat, 0, nobs,
        unit_root_critical_values("pp", spec.deterministics, nobs), level, bandwidth, name,
    )


def phillips_perron_correction(fit, tstat: float, bandwidth: int | None) -> tuple[float, int]:
    """Z_t = sqrt(g0/l2) t - (l2 - g0) n se / (2 sqrt(l2) s).

    ``g0`` is the residual variance (divisor n), ``l2`` the Bartlett long-run
    variance of the residuals, ``s`` the regression standard error and ``se``
    the standard error of the lagged-level coefficient.
    """
    n = fit.nobs
    resid = fit.residuals
    B = automatic_bandwidth(n) if bandwidth is None else int(bandwidth)
    lrv = long_run_variance(resid, B)
    g0 = float(lrv.gamma0[0, 0])
    l2 = float(lrv.omega[0, 0])
    s = math.sqrt(fit.sigma2)
    se = float(fit.standard_errors[fit.index("y(-1)")])
    z = math.sqrt(g0 / l2) * tstat - (l2 - g0) * n * se / (2.0 * math.sqrt(l2) * s)
    return z, B


# --------------------------------------------------------------------------- classification


@dataclass(frozen=True)
class IntegrationClass:
    variable: str
    order: str  # "I0" | "I1" | "I2_or_higher"
    level_results: tuple[UnitRootResult, ...] = field(default=(), compare=False)
    difference_results: tuple[UnitRootResult, ...] = field(default=(), compare=False)


DEFAULT_SPECS = (
    UnitRootSpec("adf"),
    UnitRootSpec("pp"),
    UnitRootSpec("dfgls"),
)


def _majority(results: Sequence[UnitRootResult]) -> bool:
    return sum(r.rejects for r in results) * 2 > len(results)


def classify_series(
    y: TimeSeries | np.ndarray, specs: Sequence[UnitRootSpec] = DEFAULT_SPECS, name: str = ""
) -> IntegrationClass:
    """I0 if the level tests reject, else I1 if the first-difference tests reject,
    else I2_or_higher. With several tests the verdict at each stage is the
    majority across tests."""
    values, series_name = _values(y)
    name = name or series_name
    level = tuple(unit_root_test(values, s) for s in specs)
    diff = tuple(unit_root_test(values, s, difference=True) for s in specs)
    level = tuple(replace(r, series=name) for r in level)
    diff = tuple(replace(r, series=name) for r in diff)
    if _majority(level):
        order = "I0"
    elif _majority(diff):
        order = "I1"
    else:
        order = "I2_or_higher"
    return IntegrationClass(name, order, level, diff)


def classify_integration(
    d: Dataset, specs: Sequence[UnitRootSpec] = DEFAULT_SPECS, variables: Sequence[str] | None = None
) -> list[IntegrationClass]:
    return [classify_series(d[name], specs, name) for name in (variables or d.names)]
