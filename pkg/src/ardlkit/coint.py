"""FMOLS, DOLS and CCR estimates of a single cointegrating vector.

FMOLS and CCR share the first stage: static OLS of y_t on (1, x_t) over
t = 2..T, then the Bartlett long-run covariance of eta_t = (u_t, dx_t).
Partitioning Omega and Lambda (one-sided, contemporaneous term included) as
[[w11, w12], [w21, O22]]:

* FMOLS: y+ = y - dx O22^-1 w21; beta = (Z'Z)^-1 (Z'y+ - n [0; l12+']),
  l12+ = L12 - w12 O22^-1 L22.
* CCR: x* = x - eta S^-1 L2, y* = y - eta (S^-1 L2 b_ols + [0; O22^-1 w21]),
  S = G0, then OLS of y* on (1, x*).

Both use the covariance w_{1.2} (Z'Z)^-1 with w_{1.2} = w11 - w12 O22^-1 w21.
DOLS augments the levels regression with dx at leads and lags -q..q and scales
(Z'Z)^-1 by the long-run variance of its residual.
"""

from __future__ import annotations

import warnings
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from ardlkit.dataio import Dataset, ModelSpec
from ardlkit.errors import IntegrationOrderError, SampleTooShortError
from ardlkit.linreg import DesignMatrix, LongRunVariance, long_run_variance, ols_fit

METHODS = ("fmols", "dols", "ccr")
MIN_EFFECTIVE = 20


@dataclass(frozen=True)
class CointFit:
    method: str
    names: tuple[str, ...]
    coefficients: np.ndarray
    standard_errors: np.ndarray
    effective_sample: int
    df_resid: int
    bandwidth: int | None = None
    leads_lags: int | None = None
    residuals: np.ndarray = field(default=None, repr=False, compare=False)
    lrv: LongRunVariance | None = field(default=None, repr=False, compare=False)

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


def _check_inputs(d: Dataset, spec: ModelSpec, integration, force: bool) -> None:
    spec.check(d)
    if integration is None:
        return
    wanted = set(spec.variables)
    bad = [c.variable for c in integration if c.variable in wanted and c.order != "I1"]
    if bad:
        message = f"cointegrating regression expects I(1) variables; not I(1): {', '.join(bad)}"
        if not force:
            raise IntegrationOrderError(message + " (pass force=True to estimate anyway)")
        warnings.warn(message, stacklevel=3)


def _first_stage(y: np.ndarray, X: np.ndarray, bandwidth: int | None):
    """Static OLS on t = 2..T and the long-run covariance of (u, dx)."""
    Z = np.column_stack((np.ones(X.shape[0] - 1), X[1:]))
    y1 = y[1:]
    names = tuple(f"c{i}" for i in range(Z.shape[1]))
    static = ols_fit(DesignMatrix(Z, y1, names))
    eta = np.column_stack((static.residuals, np.diff(X, axis=0)))
    return Z, y1, static, eta, long_run_variance(eta, bandwidth)


def _omega_112(lrv: LongRunVariance) -> tuple[float, np.ndarray]:
    om = lrv.omega
    w12 = om[0, 1:]
    o22_inv_w21 = np.linalg.solve(om[1:, 1:], w12)
    return max(float(om[0, 0] - w12 @ o22_inv_w21), 0.0), o22_inv_w21


def _fmols(y, X, bandwidth):
    Z, y1, _, eta, lrv = _first_stage(y, X, bandwidth)
    n = Z.shape[0]
    w112, o22_inv_w21 = _omega_112(lrv)
    om, lam = lrv.omega, lrv.lambda_one_sided
    y_plus = y1 - eta[:, 1:] @ o22_inv_w21
    l12_plus = lam[0, 1:] - om[0, 1:] @ np.linalg.solve(om[1:, 1:], lam[1:, 1:])
    bias = np.concatenate(([0.0], l12_plus))
    ztz = Z.T @ Z
    beta = np.linalg.solve(ztz, Z.T @ y_plus - n * bias)
    cov = w112 * np.linalg.inv(ztz)
    resid = y1 - Z @ beta
    return beta, np.sqrt(np.diag(cov)), n, Z.shape[1], lrv, resid


def _ccr(y, X, bandwidth):
    Z, y1, static, eta, lrv = _first_stage(y, X, bandwidth)
    n = Z.shape[0]
    w112, o22_inv_w21 = _omega_112(lrv)
    sigma_inv_l2 = np.linalg.solve(lrv.gamma0, lrv.lambda_one_sided[:, 1:])
    b_ols = static.coefficients[1:]
    x_star = X[1:] - eta @ sigma_inv_l2
    y_star = y1 - eta @ (sigma_inv_l2 @ b_ols + np.concatenate(([0.0], o22_inv_w21)))
    Zs = np.column_stack((np.ones(n), x_star))
    ztz = Zs.T @ Zs
    beta = np.linalg.solve(ztz, Zs.T @ y_star)
    cov = w112 * np.linalg.inv(ztz)
    resid = y1 - Z @ beta
    return beta, np.sqrt(np.diag(cov)), n, Zs.shape[1], lrv, resid


def _dols_name(x: str, j: int) -> str:
    if j == 0:
        return f"D({x})"
    return f"D({x}(-{-j}))" if j < 0 else f"D({x}(+{j}))"


def build_dols_design(d: Dataset, spec: ModelSpec, q_leads_lags: int) -> DesignMatrix:
    """Intercept, levels of each regressor, and dx_{t+j} for j = -q..q.

    The sample runs from t = q + 2 to T - q (1-based), so it is T - 2q - 1 long.
    """
    spec.check(d)
    q = int(q_leads_lags)
    if q < 0:
        raise ValueError("leads/lags must be >= 0")
    T = len(d)
    rows = np.arange(q + 1, T - q)
    if rows.size <= 1 + len(spec.regressors) * (2 * q + 2):
        raise SampleTooShortError(f"q={q} leaves {rows.size} observations, too few for the DOLS design")
    cols: dict[str, np.ndarray] = {"const": np.ones(rows.size)}
    for x in spec.regressors:
        cols[x] = d.array(x)[rows]
    for x in spec.regressors:
        dx = np.diff(d.array(x), prepend=np.nan)
        for j in range(-q, q + 1):
            cols[_dols_name(x, j)] = dx[rows + j]
    return DesignMatrix(np.column_stack(list(cols.values())), d.array(spec.dependent)[rows], tuple(cols), spec.dependent)


def coint_fit(
    d: Dataset,
    spec: ModelSpec,
    method: str = "fmols",
    *,
    bandwidth: int | None = None,
    leads_lags: int = 1,
    integration: Sequence | None = None,
    force: bool = False,
) -> CointFit:
    """Estimate the cointegrating vector of ``spec`` by ``method``.

    An intercept is always included. ``bandwidth`` (Bartlett; ``None`` is
    automatic) applies to FMOLS/CCR and to the DOLS residual long-run variance.
    ``integration`` results, if given, are checked for I(1) variables.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {METHODS}")
    _check_inputs(d, spec, integration, force)
    names = ("const", *spec.regressors)
    y = d.array(spec.dependent)
    X = np.column_stack([d.array(x) for x in spec.regressors])

    if method == "dols":
        design = build_dols_design(d, spec, leads_lags)
        if design.nobs < MIN_EFFECTIVE:
            raise SampleTooShortError(f"DOLS effective sample {design.nobs} < {MIN_EFFECTIVE}")
        fit = ols_fit(design)
        lrv = long_run_variance(fit.residuals, bandwidth)
        cov = lrv.scalar * np.linalg.inv(design.X.T @ design.X)
        keep = [design.names.index(nm) for nm in names]
        return CointFit(
            "dols", names, fit.coefficients[keep], np.sqrt(np.diag(cov))[keep],
            design.nobs, fit.df_resid, lrv.bandwidth, int(leads_lags), fit.residuals, lrv,
        )

    if len(y) - 1 < MIN_EFFECTIVE:
        raise SampleTooShortError(f"{method} needs at least {MIN_EFFECTIVE + 1} observations")
    runner = _fmols if method == "fmols" else _ccr
    beta, se, n, k, lrv, resid = runner(y, X, bandwidth)
    return CointFit(method, names, beta, se, n, n - k, lrv.bandwidth, None, resid, lrv)


def ols_levels(d: Dataset, spec: ModelSpec, drop_first: bool = True):
    """Static OLS of y on (1, x) over the FMOLS/CCR sample (t = 2..T by default)."""
    y = d.array(spec.dependent)
    X = np.column_stack([d.array(x) for x in spec.regressors])
    s = 1 if drop_first else 0
    design = DesignMatrix.build(y[s:], {x: X[s:, i] for i, x in enumerate(spec.regressors)}, response_name=spec.dependent)
    return ols_fit(design)
