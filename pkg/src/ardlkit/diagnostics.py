"""Residual diagnostics and recursive-residual stability paths."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy import stats

from ardlkit import tables
from ardlkit.errors import ArdlkitError, RankDeficiencyError, SampleTooShortError
from ardlkit.linreg import PERFECT_FIT_TOL, RANK_TOL, DesignMatrix, RegressionFit, _constant_columns

CUSUM_A_5PCT = 0.948
PASS_LEVEL = 0.05


class TestStatistic(NamedTuple):
    statistic: float
    p_value: float
    df: int


def jarque_bera(residuals) -> TestStatistic:
    """JB = n/6 (S^2 + (K - 3)^2 / 4) from moment-based skewness S and kurtosis K."""
    e = np.asarray(residuals, dtype=float).ravel()
    n = e.size
    if n < 8:
        raise SampleTooShortError(f"Jarque-Bera needs at least 8 residuals, got {n}")
    d = e - e.sum() / n
    s2 = float(d @ d)
    if s2 == 0:
        raise ArdlkitError("residuals have zero variance")
    skew = math.sqrt(n) * float(np.sum(d**3)) / s2**1.5
    kurt = n * float(np.sum(d**4)) / s2**2
    jb = n / 6.0 * (skew**2 + (kurt - 3.0) ** 2 / 4.0)
    return TestStatistic(jb, float(stats.chi2.sf(jb, 2)), 2)


def _aux_r2(X: np.ndarray, y: np.ndarray, centered: bool) -> float:
    beta, *_ = np.linalg.lstsq(X, y, rcond=None)
    r = y - X @ beta
    tss = float(np.sum((y - y.mean()) ** 2)) if centered else float(y @ y)
    if tss == 0:
        raise ArdlkitError("degenerate auxiliary regression (response has no variation)")
    return 1.0 - float(r @ r) / tss


def serial_correlation_lm(fit: RegressionFit, design: DesignMatrix, order: int = 2) -> TestStatistic:
    """Breusch-Godfrey LM: n R^2 from regressing e_t on the design and e_{t-1..t-h}.

    Pre-sample lagged residuals are set to zero. R^2 is measured against the
    raw sum of squared residuals (e'e), so the statistic is scale free.
    """
    h = int(order)
    if h < 1:
        raise ValueError("LM order must be >= 1")
    e = fit.residuals
    n, k = design.X.shape
    if n <= k + h:
        raise SampleTooShortError(f"LM test with order {h} needs n > k + h ({n} <= {k + h})")
    lags = np.column_stack([np.concatenate((np.zeros(i), e[:-i])) for i in range(1, h + 1)])
    r2 = _aux_r2(np.hstack((design.X, lags)), e, centered=False)
    stat = n * r2
    return TestStatistic(stat, float(stats.chi2.sf(stat, h)), h)


def heteroscedasticity_bpg(fit: RegressionFit, design: DesignMatrix) -> TestStatistic:
    """Breusch-Pagan-Godfrey (studentized): n R^2 from regressing e_t^2 on the design.

    A constant is added to the auxiliary regression when the design lacks one;
    degrees of freedom equal the number of non-constant design columns.
    """
    X = design.X
    n, k = X.shape
    const = _constant_columns(X)
    nonconst = [j for j in range(k) if j not in set(const)]
    df = len(nonconst)
    if df == 0:
        raise ArdlkitError("BPG test needs at least one non-constant regressor")
    if n <= df + 1:
        raise SampleTooShortError(f"BPG test needs n > k + 1 ({n} <= {df + 1})")
    Z = np.column_stack((np.ones(n), X[:, nonconst]))
    e2 = fit.residuals**2
    stat = n * _aux_r2(Z, e2, centered=True)
    return TestStatistic(stat, float(stats.chi2.sf(stat, df)), df)


@dataclass(frozen=True)
class DiagnosticReport:
    jb: TestStatistic
    lm: TestStatistic
    bpg: TestStatistic

    @staticmethod
    def passes(test: TestStatistic) -> bool:
        return test.p_value > PASS_LEVEL

    def decisions(self) -> dict[str, str]:
        return {
            "jb": "Residuals are normally distributed" if self.passes(self.jb) else "Residuals are not normally distributed",
            "lm": "No serial correlation exists" if self.passes(self.lm) else "Serial correlation exists",
            "bpg": "No heteroscedasticity exists" if self.passes(self.bpg) else "Heteroscedasticity exists",
        }


def diagnostic_report(fit: RegressionFit, design: DesignMatrix, lm_order: int = 2) -> DiagnosticReport:
    return DiagnosticReport(
        jarque_bera(fit.residuals),
        serial_correlation_lm(fit, design, lm_order),
        heteroscedasticity_bpg(fit, design),
    )


# --------------------------------------------------------------------------- stability


def recursive_residuals(design: DesignMatrix) -> np.ndarray:
    """Standardized one-step-ahead prediction errors w_t, t = k+1..n.

    w_t = (y_t - x_t' b_{t-1}) / sqrt(1 + x_t' (X_{t-1}'X_{t-1})^-1 x_t), with
    b_{t-1} from the first t-1 rows; inverse and coefficients are updated by
    the Sherman-Morrison recursion.
    """
    X, y = design.X, design.y
    n, k = X.shape
    if n <= k + 1:
        raise SampleTooShortError(f"recursive residuals need n > k + 1 ({n} <= {k + 1})")
    X0 = X[:k]
    s = np.linalg.svd(X0, compute_uv=False)
    if s[-1] < RANK_TOL * s[0]:
        raise RankDeficiencyError(
            f"first {k} observations are rank deficient; recursive residuals undefined",
            design.names,
        )
    S = np.linalg.inv(X0.T @ X0)
    b = S @ X0.T @ y[:k]
    w = np.empty(n - k)
    for t in range(k, n):
        x = X[t]
        Sx = S @ x
        f = 1.0 + x @ Sx
        err = y[t] - x @ b
        w[t - k] = err / math.sqrt(f)
        b = b + Sx * (err / f)
        S = S - np.outer(Sx, Sx) / f
    return w


@dataclass(frozen=True)
class StabilityPath:
    kind: str
    start_index: int
    t: np.ndarray
    path: np.ndarray
    lower: np.ndarray
    upper: np.ndarray

    @property
    def verdict(self) -> str:
        inside = np.all(self.path >= self.lower) and np.all(self.path <= self.upper)
        return "stable" if inside else "unstable"


def cusum_paths(w, k: int, n: int, kind: str = "cusum") -> StabilityPath:
    """CUSUM or CUSUM-of-squares path with its 5% significance bounds.

    CUSUM_t = sum_{j<=t} w_j / s with s^2 = sum w^2 / (n - k), bounded by
    +-0.948 [sqrt(n-k) + 2 (t-k) / sqrt(n-k)]. CUSUMSQ_t = sum_{j<=t} w_j^2 / sum w^2,
    bounded by (t-k)/(n-k) +- c0.
    """
    w = np.asarray(w, dtype=float)
    r = n - k
    if w.size == 0 or w.size != r:
        raise ValueError(f"expected {r} recursive residuals, got {w.size}")
    t = np.arange(k + 1, n + 1)
    step = (t - k).astype(float)
    ss = float(w @ w)
    if kind == "cusum":
        scale = math.sqrt(ss / r) if ss > 0 else 1.0
        path = np.cumsum(w) / scale
        half = CUSUM_A_5PCT * (math.sqrt(r) + 2.0 * step / math.sqrt(r))
        return StabilityPath("cusum", k + 1, t, path, -half, half)
    if kind == "cusumsq":
        if ss <= 0:
            raise ArdlkitError("CUSUM of squares needs a nonzero sum of squared recursive residuals")
        # clipping keeps the path monotone when rounding overshoots 1 before the end
        path = np.minimum(np.cumsum(w**2) / ss, 1.0)
        path[-1] = 1.0
        c0 = tables.cusumsq_c0(r)
        line = step / r
        return StabilityPath("cusumsq", k + 1, t, path, line - c0, line + c0)
    raise ValueError(f"unknown stability path kind {kind!r}")


def stability_path(design: DesignMatrix, kind: str = "cusum") -> StabilityPath:
    w = recursive_residuals(design)
    # rounding noise of an exact fit is not a path
    if float(w @ w) <= PERFECT_FIT_TOL * float(design.y @ design.y):
        w = np.zeros_like(w)
    return cusum_paths(w, design.ncols, design.nobs, kind)
