"""Pairwise Granger non-causality F-tests."""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from scipy import stats

from ardlkit.dataio import Dataset, TimeSeries
from ardlkit.errors import PerfectFitError, SampleTooShortError
from ardlkit.linreg import nested_rss

MAX_AUTO_LAGS = 4


@dataclass(frozen=True)
class GrangerResult:
    """Test of H0: ``cause`` does not Granger-cause ``effect``."""

    cause: str
    effect: str
    lags: int
    nobs: int
    f_statistic: float
    p_value: float

    @property
    def df(self) -> tuple[int, int]:
        return self.lags, self.nobs - 2 * self.lags - 1

    @property
    def decision(self) -> dict[str, bool]:
        """Reject non-causality at each level (True means reject)."""
        return {"1%": self.p_value < 0.01, "5%": self.p_value < 0.05, "10%": self.p_value < 0.10}

    @property
    def hypothesis(self) -> str:
        return f"{self.cause} ≠ {self.effect}"


def _arrays(x, y) -> tuple[np.ndarray, np.ndarray, str, str]:
    xn = x.name if isinstance(x, TimeSeries) else "x"
    yn = y.name if isinstance(y, TimeSeries) else "y"
    xv = x.values if isinstance(x, TimeSeries) else np.asarray(x, dtype=float)
    yv = y.values if isinstance(y, TimeSeries) else np.asarray(y, dtype=float)
    if xv.size != yv.size:
        raise ValueError("cause and effect series must have the same length")
    return xv, yv, xn, yn


def _lag_block(v: np.ndarray, n: int, start: int) -> np.ndarray:
    T = v.size
    return np.column_stack([v[start - i : T - i] for i in range(1, n + 1)])


def _rss_pair(x: np.ndarray, y: np.ndarray, n: int, start: int) -> tuple[float, float, int]:
    """(restricted RSS, unrestricted RSS, nobs) for the effect equation of y."""
    resp = y[start:]
    X = np.column_stack((np.ones(resp.size), _lag_block(y, n, start), _lag_block(x, n, start)))
    rss_r, rss_u = nested_rss(X, resp, [1 + n, 1 + 2 * n])
    return float(rss_r), float(rss_u), resp.size


def select_granger_lags(x, y, max_lags: int = MAX_AUTO_LAGS) -> int:
    """Lag order minimizing the summed AIC of both unrestricted equations.

    Both directions are evaluated on the sample trimmed by ``max_lags`` so the
    criteria are comparable; the summed criterion is symmetric in (x, y), so
    both directions of a pair always share the chosen order. Ties go to the
    smaller order.
    """
    xv, yv, _, _ = _arrays(x, y)
    best, best_val = 1, math.inf
    for n in range(1, max_lags + 1):
        if max_lags >= xv.size - 2 * n - 2:
            break
        total = 0.0
        for a, b in ((xv, yv), (yv, xv)):
            _, rss_u, T = _rss_pair(a, b, n, max_lags)
            if not rss_u > 0:
                total = math.inf
                break
            total += T * math.log(rss_u / T) + 2 * (2 * n + 1)
        if total < best_val:
            best, best_val = n, total
    return best


def granger_pair(x, y, lags: int | str = "auto", max_lags: int = MAX_AUTO_LAGS) -> GrangerResult:
    """F-test that the lags of ``x`` add nothing to an autoregression of ``y``.

    F = ((RSS_r - RSS_u)/n) / (RSS_u / (T - 2n - 1)), with T the number of usable
    observations after losing n to lags.
    """
    xv, yv, xn, yn = _arrays(x, y)
    if lags == "auto":
        n = select_granger_lags(xv, yv, max_lags)
    else:
        n = int(lags)
        if n < 1:
            raise ValueError("Granger test needs at least one lag")
    if xv.size - n <= 2 * n + 2:
        raise SampleTooShortError(f"{xv.size} observations are too few for {n} lags")
    rss_r, rss_u, T = _rss_pair(xv, yv, n, n)
    if rss_u <= 0:
        raise PerfectFitError("unrestricted Granger regression fits exactly (RSS = 0)")
    df2 = T - 2 * n - 1
    f = max(((rss_r - rss_u) / n) / (rss_u / df2), 0.0)
    p = float(stats.f.sf(f, n, df2))
    return GrangerResult(xn, yn, n, T, float(f), p)


def granger_both(x, y, lags: int | str = "auto", max_lags: int = MAX_AUTO_LAGS) -> tuple[GrangerResult, GrangerResult]:
    """Both directions with a shared lag order: (x -> y, y -> x)."""
    n = select_granger_lags(x, y, max_lags) if lags == "auto" else lags
    return granger_pair(x, y, n, max_lags), granger_pair(y, x, n, max_lags)


def granger_matrix(
    d: Dataset,
    effect: str,
    lags: int | str = "auto",
    max_lags: int = MAX_AUTO_LAGS,
    causes: Sequence[str] | None = None,
) -> list[GrangerResult]:
    """For every other variable X: "X does not cause effect", then "effect does not cause X"."""
    target = d[effect]
    out: list[GrangerResult] = []
    for name in causes if causes is not None else d.names:
        if name == effect:
            continue
        forward, backward = granger_both(d[name], target, lags, max_lags)
        out.extend((forward, backward))
    return out
