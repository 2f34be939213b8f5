"""ARDL order selection, the bounds F-test, long-run coefficients and the error-correction model.

The ARDL(p, q_1..q_k) model

    y_t = c + sum_{i=1..p} a_i y_{t-i} + sum_j sum_{i=0..q_j} b_ji x_{j,t-i} + e_t

is estimated in its conditional error-correction form

    dy_t = c + pi_y y_{t-1} + sum_j pi_j x_{j,t-1}
           + sum_{i=1..p-1} phi_i dy_{t-i} + sum_j sum_{i=0..q_j-1} psi_ji dx_{j,t-i} + e_t

which is an exact reparameterization (same residuals). When q_j = 0 the level
term of x_j enters at time t instead of t-1, because the model then contains
no lagged x_j at all. Long-run coefficients are -pi_j / pi_y.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from ardlkit import tables
from ardlkit.dataio import Dataset, ModelSpec
from ardlkit.errors import (
    ArdlkitError,
    IntegrationOrderError,
    NotCointegratedError,
    RankDeficiencyError,
    SampleTooShortError,
)
from ardlkit.linreg import DesignMatrix, RegressionFit, ols_fit

BETA1_TOL = 1e-8


@dataclass(frozen=True, order=True)
class ArdlOrder:
    p: int
    q: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "q", tuple(int(v) for v in self.q))
        if self.p < 1:
            raise ValueError("ARDL order p must be >= 1")
        if any(v < 0 for v in self.q):
            raise ValueError("ARDL orders q must be >= 0")

    @property
    def max_lag(self) -> int:
        return max(self.p, *self.q) if self.q else self.p

    @property
    def complexity(self) -> int:
        return self.p + sum(self.q)

    def label(self) -> str:
        return "ARDL(" + ", ".join(str(v) for v in (self.p, *self.q)) + ")"


@dataclass(frozen=True)
class ArdlFit:
    order: ArdlOrder
    spec: ModelSpec
    levels_fit: RegressionFit
    design: DesignMatrix
    level_names: tuple[str, ...]
    start: int
    years: np.ndarray = field(compare=False, repr=False)

    @property
    def effective_sample(self) -> int:
        return self.levels_fit.nobs

    @property
    def k(self) -> int:
        return len(self.spec.regressors)


def _lag_name(name: str, i: int) -> str:
    return name if i == 0 else f"{name}(-{i})"


def _check_integration(integration) -> None:
    if integration is None:
        return
    bad = [c.variable for c in integration if c.order == "I2_or_higher"]
    if bad:
        raise IntegrationOrderError(
            "ARDL bounds testing excludes I(2) variables; "
            f"integrated of order two or higher: {', '.join(bad)}"
        )


def _uecm_design(d: Dataset, spec: ModelSpec, order: ArdlOrder, start: int) -> tuple[DesignMatrix, tuple[str, ...]]:
    spec.check(d)
    if len(order.q) != len(spec.regressors):
        raise ValueError(f"order has {len(order.q)} q values for {len(spec.regressors)} regressors")
    if start < order.max_lag:
        raise ValueError(f"start={start} is smaller than the largest lag {order.max_lag}")
    y = d.array(spec.dependent)
    T = y.size
    rows = np.arange(start, T)
    if rows.size == 0:
        raise SampleTooShortError("no observations left after lagging")
    dy = np.diff(y, prepend=np.nan)
    yname = spec.dependent

    cols: dict[str, np.ndarray] = {}
    if spec.intercept:
        cols["const"] = np.ones(rows.size)
    if spec.trend:
        cols["trend"] = rows + 1.0
    level_names = [f"{yname}(-1)"]
    cols[level_names[0]] = y[rows - 1]
    for xname, q in zip(spec.regressors, order.q):
        x = d.array(xname)
        name = f"{xname}(-1)" if q >= 1 else xname
        cols[name] = x[rows - 1] if q >= 1 else x[rows]
        level_names.append(name)
    for i in range(1, order.p):
        cols[f"D({_lag_name(yname, i)})"] = dy[rows - i]
    for xname, q in zip(spec.regressors, order.q):
        dx = np.diff(d.array(xname), prepend=np.nan)
        for i in range(q):
            cols[f"D({_lag_name(xname, i)})"] = dx[rows - i]
    X = np.column_stack(list(cols.values()))
    design = DesignMatrix(X, dy[rows], tuple(cols), f"D({yname})")
    return design, tuple(level_names)


def fit_ardl(d: Dataset, spec: ModelSpec, order: ArdlOrder, start: int | None = None) -> ArdlFit:
    """Fit one ARDL order. ``start`` fixes the first usable row (defaults to the largest lag)."""
    start = order.max_lag if start is None else int(start)
    design, level_names = _uecm_design(d, spec, order, start)
    fit = ols_fit(design)
    return ArdlFit(order, spec, fit, design, level_names, start, d.years[start:])


@dataclass(frozen=True)
class OrderCandidate:
    order: ArdlOrder
    criterion: float
    fit: ArdlFit


def search_orders(
    d: Dataset,
    spec: ModelSpec,
    max_p: int = 4,
    max_q: int = 4,
    criterion: str = "aic",
) -> list[OrderCandidate]:
    """Evaluate every feasible order on the common sample trimmed by max(max_p, max_q).

    Candidates without residual degrees of freedom, with an exact fit, or with a
    rank-deficient design are skipped. Sorted best first: criterion, then
    p + sum(q), then the order itself.
    """
    if max_p < 1 or max_q < 0:
        raise ValueError("need max_p >= 1 and max_q >= 0")
    start = max(max_p, max_q)
    k = len(spec.regressors)
    n = len(d) - start
    results: list[OrderCandidate] = []
    for p in range(1, max_p + 1):
        for q in itertools.product(range(max_q + 1), repeat=k):
            order = ArdlOrder(p, q)
            nparams = int(spec.intercept) + int(spec.trend) + 1 + k + (p - 1) + sum(q)
            if n - nparams < 1:
                continue
            try:
                fit = fit_ardl(d, spec, order, start=start)
            except (RankDeficiencyError, SampleTooShortError):
                continue
            value = fit.levels_fit.criterion(criterion)
            if not math.isfinite(value):
                continue
            results.append(OrderCandidate(order, value, fit))
    if not results:
        raise ArdlkitError("no feasible ARDL order: every candidate is rank-deficient or lacks degrees of freedom")
    results.sort(key=lambda c: (c.criterion, c.order.complexity, c.order))
    return results


def select_order(
    d: Dataset,
    spec: ModelSpec,
    max_p: int = 4,
    max_q: int = 4,
    criterion: str = "aic",
    integration=None,
) -> ArdlOrder:
    """Order minimizing ``criterion``; ties go to the smaller p + sum(q).

    ``integration`` (a list of :class:`~ardlkit.unitroot.IntegrationClass`) makes
    the search refuse I(2) variables.
    """
    _check_integration(integration)
    return search_orders(d, spec, max_p, max_q, criterion)[0].order


# --------------------------------------------------------------------------- bounds test


@dataclass(frozen=True)
class BoundsResult:
    f_statistic: float
    k: int
    case: str
    table: str
    bounds: dict[str, tuple[float, float]]

    @property
    def decision(self) -> dict[str, str]:
        out = {}
        for level, (lo, hi) in self.bounds.items():
            if self.f_statistic > hi:
                out[level] = "cointegrated"
            elif self.f_statistic < lo:
                out[level] = "not_cointegrated"
            else:
                out[level] = "inconclusive"
        return out

    def strongest_level(self) -> str | None:
        """Smallest significance level at which cointegration is concluded."""
        for level in ("1%", "2.5%", "5%", "10%"):
            if self.decision.get(level) == "cointegrated":
                return level
        return None


def bounds_table(k: int, case: str = "III", table: str = "general") -> dict[str, tuple[float, float]]:
    if case != "III":
        raise ValueError(f"bounds case {case!r} not tabulated; only case III (unrestricted intercept, no trend)")
    try:
        source = tables.BOUNDS_TABLES[table]
    except KeyError:
        raise ValueError(f"unknown bounds table {table!r}; use 'general' or 'paper-table4'") from None
    if k not in source:
        raise ValueError(f"table {table!r} has no row for k={k} (available: {sorted(source)})")
    return dict(source[k])


def bounds_decision(f_statistic: float, k: int, case: str = "III", table: str = "general") -> BoundsResult:
    return BoundsResult(float(f_statistic), k, case, table, bounds_table(k, case, table))


def _case(spec: ModelSpec) -> str:
    if spec.intercept and not spec.trend:
        return "III"
    return "V" if spec.trend else "I"


def bounds_f_test(fit: ArdlFit, table: str = "general") -> BoundsResult:
    """F-test that every levels coefficient (y_{t-1} and each x level) is zero."""
    full = fit.levels_fit
    restricted_design = fit.design.drop(fit.level_names)
    if restricted_design.ncols:
        try:
            restricted = ols_fit(restricted_design)
        except RankDeficiencyError as exc:
            raise RankDeficiencyError(f"restricted bounds regression: {exc}", exc.columns) from exc
        rss_r = restricted.rss
    else:
        rss_r = float(fit.design.y @ fit.design.y)
    q = len(fit.level_names)
    f = ((rss_r - full.rss) / q) / (full.rss / full.df_resid)
    return bounds_decision(max(f, 0.0), fit.k, _case(fit.spec), table)


# --------------------------------------------------------------------------- long run


@dataclass(frozen=True)
class LongRunResult:
    names: tuple[str, ...]
    coefficients: np.ndarray
    standard_errors: np.ndarray
    df_resid: int

    @property
    def t_statistics(self) -> np.ndarray:
        with np.errstate(divide="ignore", invalid="ignore"):
            return self.coefficients / self.standard_errors

    @property
    def p_values(self) -> np.ndarray:
        return 2 * stats.t.sf(np.abs(self.t_statistics), self.df_resid)

    def coef(self, name: str) -> float:
        return float(self.coefficients[self.names.index(name)])

    def se(self, name: str) -> float:
        return float(self.standard_errors[self.names.index(name)])


def _long_run_sources(fit: ArdlFit) -> list[tuple[str, str]]:
    """(long-run label, UECM column) pairs: each regressor, then C and trend."""
    pairs = list(zip(fit.spec.regressors, fit.level_names[1:]))
    if fit.spec.intercept:
        pairs.append(("C", "const"))
    if fit.spec.trend:
        pairs.append(("trend", "trend"))
    return pairs


def long_run_coefficients(fit: ArdlFit) -> LongRunResult:
    """theta_j = -pi_j / pi_y with delta-method standard errors."""
    lf = fit.levels_fit
    iy = lf.index(fit.level_names[0])
    pi_y = lf.coefficients[iy]
    if abs(pi_y) < BETA1_TOL:
        raise ArdlkitError(
            f"coefficient on {fit.level_names[0]} is {pi_y:.3g}; long-run relationship undefined"
        )
    names, coefs, ses = [], [], []
    for label, column in _long_run_sources(fit):
        ij = lf.index(column)
        pi_j = lf.coefficients[ij]
        theta = -pi_j / pi_y
        grad = np.zeros(lf.k)
        grad[ij] = -1.0 / pi_y
        grad[iy] = pi_j / pi_y**2
        names.append(label)
        coefs.append(theta)
        ses.append(math.sqrt(max(float(grad @ lf.cov @ grad), 0.0)))
    return LongRunResult(tuple(names), np.array(coefs), np.array(ses), lf.df_resid)


# --------------------------------------------------------------------------- error correction


@dataclass(frozen=True)
class EcmFit:
    short_run: RegressionFit
    design: DesignMatrix
    long_run: LongRunResult
    ardl: ArdlFit
    bounds: BoundsResult
    ect: np.ndarray = field(repr=False)

    @property
    def ect_coefficient(self) -> float:
        return self.short_run.coef("CointEq(-1)")

    @property
    def converged(self) -> bool:
        return -2.0 < self.ect_coefficient < 0.0


def fit_ecm(
    d: Dataset,
    spec: ModelSpec,
    order: ArdlOrder,
    *,
    force: bool = False,
    level: str = "5%",
    table: str = "general",
) -> EcmFit:
    """Two-step error-correction model.

    Step one takes the long-run relationship from the levels coefficients of the
    ARDL fit; step two regresses dy_t on lagged dy, current and lagged dx and the
    lagged deviation from that relationship (``CointEq(-1)``). The long-run
    intercept sits inside the error-correction term, so the short-run regression
    has no constant.

    Refuses with :class:`NotCointegratedError` unless the bounds test concludes
    cointegration at ``level`` or ``force`` is set.
    """
    afit = fit_ardl(d, spec, order)
    try:
        bounds = bounds_f_test(afit, table=table)
    except ValueError:
        if not force:
            raise
        bounds = BoundsResult(float("nan"), afit.k, _case(spec), table, {})
    if not force and bounds.decision.get(level) != "cointegrated":
        lo, hi = bounds.bounds[level]
        raise NotCointegratedError(
            f"bounds F = {bounds.f_statistic:.4f} does not exceed the {level} I(1) bound "
            f"{hi} (I(0) bound {lo}); no error-correction model without a cointegration "
            "verdict (use force=True / --force to estimate anyway)"
        )
    lr = long_run_coefficients(afit)
    theta = dict(zip(lr.names, lr.coefficients))

    y = d.array(spec.dependent)
    T = y.size
    idx = np.arange(T)
    ect = y - theta.get("C", 0.0) - theta.get("trend", 0.0) * (idx + 1.0)
    for xname in spec.regressors:
        ect = ect - theta[xname] * d.array(xname)

    rows = np.arange(afit.start, T)
    dy = np.diff(y, prepend=np.nan)
    cols: dict[str, np.ndarray] = {}
    for i in range(1, order.p):
        cols[f"D({_lag_name(spec.dependent, i)})"] = dy[rows - i]
    for xname, q in zip(spec.regressors, order.q):
        dx = np.diff(d.array(xname), prepend=np.nan)
        for i in range(max(q, 1)):
            cols[f"D({_lag_name(xname, i)})"] = dx[rows - i]
    cols["CointEq(-1)"] = ect[rows - 1]
    design = DesignMatrix(np.column_stack(list(cols.values())), dy[rows], tuple(cols), f"D({spec.dependent})")
    short = ols_fit(design)
    return EcmFit(short, design, lr, afit, bounds, ect)


def check_integration(integration: Sequence) -> None:
    """Raise :class:`IntegrationOrderError` if any variable is I(2) or higher."""
    _check_integration(integration)
