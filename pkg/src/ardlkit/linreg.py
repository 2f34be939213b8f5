"""Least squares with classical inference, information criteria and Bartlett long-run variance."""

from __future__ import annotations

import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from ardlkit.errors import PerfectFitError, RankDeficiencyError, SampleTooShortError

RANK_TOL = 1e-10
# rss below this fraction of y'y counts as an exact fit (rounding noise only)
PERFECT_FIT_TOL = 1e-24


@dataclass(frozen=True)
class DesignMatrix:
    """Regressor columns ``X`` (n x k) with names and the response ``y``."""

    X: np.ndarray
    y: np.ndarray
    names: tuple[str, ...]
    response_name: str = "y"

    def __post_init__(self) -> None:
        X = np.asarray(self.X, dtype=float)
        if X.ndim == 1:
            X = X[:, None]
        y = np.asarray(self.y, dtype=float).ravel()
        if X.shape[0] != y.size:
            raise ValueError(f"X has {X.shape[0]} rows but y has {y.size} entries")
        if len(self.names) != X.shape[1]:
            raise ValueError(f"{len(self.names)} names for {X.shape[1]} columns")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate column names in {self.names}")
        n, k = X.shape
        if n <= k:
            raise SampleTooShortError(
                f"{n} observations for {k} regressors; need n > k"
            )
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "names", tuple(self.names))

    @property
    def nobs(self) -> int:
        return self.X.shape[0]

    @property
    def ncols(self) -> int:
        return self.X.shape[1]

    @classmethod
    def build(
        cls,
        y: Sequence[float] | np.ndarray,
        columns: Mapping[str, Sequence[float] | np.ndarray] | None = None,
        intercept: bool = True,
        trend: bool = False,
        response_name: str = "y",
    ) -> DesignMatrix:
        """Assemble a design from named columns, optionally prepending const and trend."""
        y = np.asarray(y, dtype=float)
        n = y.size
        cols: list[np.ndarray] = []
        names: list[str] = []
        if intercept:
            cols.append(np.ones(n))
            names.append("const")
        if trend:
            cols.append(np.arange(1.0, n + 1.0))
            names.append("trend")
        for name, col in (columns or {}).items():
            cols.append(np.asarray(col, dtype=float))
            names.append(name)
        X = np.column_stack(cols) if cols else np.empty((n, 0))
        return cls(X, y, tuple(names), response_name)

    def drop(self, names: Sequence[str]) -> DesignMatrix:
        keep = [i for i, nm in enumerate(self.names) if nm not in set(names)]
        return DesignMatrix(self.X[:, keep], self.y, tuple(self.names[i] for i in keep), self.response_name)

    def has_constant(self) -> bool:
        return bool(_constant_columns(self.X).size)


def _constant_columns(X: np.ndarray) -> np.ndarray:
    if X.shape[0] == 0:
        return np.empty(0, dtype=int)
    same = np.all(X == X[0], axis=0) & (X[0] != 0)
    return np.flatnonzero(same)


@dataclass(frozen=True)
class RegressionFit:
    """OLS estimates and classical (Student-t) inference."""

    names: tuple[str, ...]
    coefficients: np.ndarray
    standard_errors: np.ndarray
    t_statistics: np.ndarray
    p_values: np.ndarray
    residuals: np.ndarray
    fitted: np.ndarray
    cov: np.ndarray
    rss: float
    r_squared: float
    aic: float
    bic: float
    hq: float
    nobs: int
    df_resid: int
    response_name: str = "y"
    extra: dict = field(default_factory=dict, compare=False)

    @property
    def k(self) -> int:
        return len(self.names)

    @property
    def sigma2(self) -> float:
        return self.rss / self.df_resid

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"no coefficient named {name!r}") from None

    def coef(self, name: str) -> float:
        return float(self.coefficients[self.index(name)])

    def se(self, name: str) -> float:
        return float(self.standard_errors[self.index(name)])

    def params(self) -> dict[str, float]:
        return dict(zip(self.names, map(float, self.coefficients)))

    def criterion(self, name: str) -> float:
        return {"aic": self.aic, "bic": self.bic, "hq": self.hq}[name.lower()]


def information_criteria(rss: float, n: int, k: int) -> tuple[float, float, float]:
    """Return ``(aic, bic, hq)`` in the n*ln(rss/n) + penalty form.

    Raises :class:`PerfectFitError` when ``rss`` is zero, since the log is undefined.
    """
    if n <= k:
        raise SampleTooShortError(f"information criteria need n > k (n={n}, k={k})")
    if rss <= 0:
        raise PerfectFitError("rss is zero: perfect fit, information criteria undefined")
    base = n * math.log(rss / n)
    return base + 2 * k, base + k * math.log(n), base + 2 * k * math.log(math.log(n))


def ols_fit(design: DesignMatrix) -> RegressionFit:
    """Fit ``y = X b + e`` by least squares (SVD) with rank checking."""
    X, y = design.X, design.y
    n, k = X.shape
    if n <= k:
        raise SampleTooShortError(f"n={n} <= k={k}")
    U, s, Vt = np.linalg.svd(X, full_matrices=False)
    if k and (s[-1] < RANK_TOL * s[0] or s[0] == 0):
        raise RankDeficiencyError(
            f"rank-deficient design for {design.response_name!r} on columns "
            f"{list(design.names)} (singular value ratio {s[-1] / s[0] if s[0] else 0:.3g})",
            design.names,
        )
    beta = Vt.T @ ((U.T @ y) / s)
    fitted = X @ beta
    resid = y - fitted
    rss = float(resid @ resid)
    if rss <= PERFECT_FIT_TOL * float(y @ y):
        rss = 0.0
    df = n - k
    sigma2 = rss / df
    xtx_inv = (Vt.T / s**2) @ Vt
    cov = sigma2 * xtx_inv
    se = np.sqrt(np.diag(cov))
    with np.errstate(divide="ignore", invalid="ignore"):
        tvals = beta / se
    pvals = 2 * stats.t.sf(np.abs(tvals), df)

    if design.has_constant():
        tss = float(np.sum((y - y.mean()) ** 2))
    else:
        tss = float(y @ y)
    r2 = 1.0 - rss / tss if tss > 0 else 1.0
    r2 = min(max(r2, 0.0), 1.0)

    if rss > 0:
        aic, bic, hq = information_criteria(rss, n, k)
    else:
        aic = bic = hq = float("nan")

    return RegressionFit(
        names=design.names,
        coefficients=beta,
        standard_errors=se,
        t_statistics=tvals,
        p_values=pvals,
        residuals=resid,
        fitted=fitted,
        cov=cov,
        rss=rss,
        r_squared=r2,
        aic=aic,
        bic=bic,
        hq=hq,
        nobs=n,
        df_resid=df,
        response_name=design.response_name,
    )


def nested_rss(X: np.ndarray, y: np.ndarray, sizes: Sequence[int]) -> np.ndarray:
    """RSS of y regressed on the leading ``m`` columns of X, for each m in ``sizes``.

    One QR factorization serves every nested model.
    """
    Q, R = np.linalg.qr(X)
    diag = np.abs(np.diag(R))
    qy = Q.T @ y
    total = float(y @ y)
    out = np.empty(len(sizes))
    for i, m in enumerate(sizes):
        if m and diag[:m].min() < RANK_TOL * diag[:m].max():
            out[i] = np.nan
        else:
            out[i] = total - float(qy[:m] @ qy[:m])
    out[out <= PERFECT_FIT_TOL * total] = 0.0
    return out


# --------------------------------------------------------------------------- long-run variance


@dataclass(frozen=True)
class LongRunVariance:
    """Kernel estimates of the long-run covariance of a (multivariate) series.

    Attributes
    ----------
    omega : ndarray
        Two-sided long-run covariance ``G0 + sum_j w_j (G_j + G_j')``.
    lambda_one_sided : ndarray
        One-sided sum ``sum_{j=0..B} w_j G_j`` (includes the contemporaneous term).
    gamma0 : ndarray
        Contemporaneous covariance ``G0``.
    bandwidth : int
    kernel : str
    """

    omega: np.ndarray
    lambda_one_sided: np.ndarray
    gamma0: np.ndarray
    bandwidth: int
    kernel: str = "bartlett"

    @property
    def scalar(self) -> float:
        return float(self.omega[0, 0])


def automatic_bandwidth(n: int) -> int:
    """Newey-West rule floor(4 (n/100)^(2/9))."""
    return int(math.floor(4.0 * (n / 100.0) ** (2.0 / 9.0)))


def bartlett_weights(bandwidth: int) -> np.ndarray:
    j = np.arange(bandwidth + 1)
    return 1.0 - j / (bandwidth + 1.0)


def long_run_variance(
    u: np.ndarray, bandwidth: int | None = None, kernel: str = "bartlett"
) -> LongRunVariance:
    """Bartlett-kernel long-run covariance of the columns of ``u``.

    Autocovariances are uncentered, ``G_j = (1/n) sum_t u_t u_{t-j}'``; inputs
    are used as given (OLS residuals with an intercept already have mean ~0).
    ``bandwidth=None`` picks :func:`automatic_bandwidth`.
    """
    if kernel != "bartlett":
        raise ValueError(f"unsupported kernel {kernel!r}; only 'bartlett' is available")
    u = np.asarray(u, dtype=float)
    if u.ndim == 1:
        u = u[:, None]
    n = u.shape[0]
    B = automatic_bandwidth(n) if bandwidth is None else int(bandwidth)
    if B < 0:
        raise ValueError("bandwidth must be non-negative")
    if B >= n - 1:
        raise SampleTooShortError(f"bandwidth {B} must be < n - 1 = {n - 1}")
    w = bartlett_weights(B)
    gamma0 = (u.T @ u) / n
    gamma0 = 0.5 * (gamma0 + gamma0.T)
    omega = gamma0.copy()
    lam = gamma0.copy()
    for j in range(1, B + 1):
        gj = (u[j:].T @ u[:-j]) / n
        omega += w[j] * (gj + gj.T)
        lam += w[j] * gj
    omega = 0.5 * (omega + omega.T)
    return LongRunVariance(omega, lam, gamma0, B, kernel)
