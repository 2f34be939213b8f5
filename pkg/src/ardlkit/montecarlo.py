"""Synthetic data-generating processes and a deterministic replication engine.

Seeding rule: replication ``i`` of an experiment with master seed ``s`` draws
from ``numpy.random.default_rng(SeedSequence(entropy=s, spawn_key=(i,)))``.
SeedSequence hashes (entropy, spawn_key) through its documented 32-bit-word
mixing function, so the stream of every replication depends only on ``(s, i)``
and results do not change with the number of workers or the machine.
"""

from __future__ import annotations

import math
import time
from collections.abc import Callable, Mapping
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from functools import partial

import numpy as np

from ardlkit.dataio import Dataset
from ardlkit.linreg import DesignMatrix, automatic_bandwidth, bartlett_weights, ols_fit

BURN_IN = 50

DGP_KINDS = (
    "white_noise",
    "ar1",
    "random_walk",
    "double_integrated",
    "triangular_coint",
    "ecm",
    "var_causal",
    "break",
    "hetero",
)


def replication_seed(master_seed: int, index: int) -> np.random.SeedSequence:
    return np.random.SeedSequence(entropy=int(master_seed), spawn_key=(int(index),))


def replication_rng(master_seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(replication_seed(master_seed, index))


@dataclass(frozen=True)
class DgpSpec:
    """A synthetic process.

    Parameters per kind (defaults in brackets):

    - ``white_noise``: y_t = sigma e_t
    - ``ar1``: y_t = rho y_{t-1} + sigma e_t, rho in (-1, 1] [0.5]; 50-step burn-in when |rho| < 1
    - ``random_walk``: y_t = y_{t-1} + drift + sigma e_t, y_0 = 0 [drift 0]
    - ``double_integrated``: cumulative sum of a driftless random walk
    - ``triangular_coint``: x_t = x_{t-1} + v_t, y_t = beta x_t + u_t, corr(u, v) = endo_corr
      [beta 2, endo_corr 0]
    - ``ecm``: x as above, dy_t = adjustment (y_{t-1} - beta x_{t-1}) + sigma e_t
      [beta 2, adjustment -0.4]
    - ``var_causal``: x white noise, y_t = a y_{t-1} + b x_{t-1} + sigma e_t [a 0.8, b 0.5]
    - ``break``: x ~ N(0,1), y_t = 1 + x_t + sigma e_t + magnitude sigma 1{t >= at T}
      [at 0.5, magnitude 5]
    - ``hetero``: x ~ U(1, 5), y_t = 1 + x_t + sigma x_t^x_link e_t [x_link 1]
    """

    kind: str
    T: int = 100
    sigma: float = 1.0
    seed: int = 0
    params: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.kind not in DGP_KINDS:
            raise ValueError(f"unknown DGP kind {self.kind!r}; choose from {DGP_KINDS}")
        if self.T < 20:
            raise ValueError(f"T must be >= 20, got {self.T}")
        if not self.sigma > 0:
            raise ValueError("sigma must be positive")
        rho = self.params.get("rho")
        if rho is not None and not -1 < rho <= 1:
            raise ValueError(f"rho must lie in (-1, 1], got {rho}")
        corr = self.params.get("endo_corr")
        if corr is not None and not -1 < corr < 1:
            raise ValueError(f"endo_corr must lie in (-1, 1), got {corr}")
        object.__setattr__(self, "params", dict(self.params))

    def param(self, name: str, default: float) -> float:
        return float(self.params.get(name, default))


def simulate_dgp(spec: DgpSpec, rng: np.random.Generator | None = None) -> Dataset:
    """Draw one sample. Deterministic in (spec, seed) when ``rng`` is omitted."""
    rng = rng if rng is not None else np.random.default_rng(spec.seed)
    T, s = spec.T, spec.sigma
    kind = spec.kind

    if kind == "white_noise":
        return Dataset.from_arrays({"y": s * rng.standard_normal(T)})

    if kind == "ar1":
        rho = spec.param("rho", 0.5)
        burn = 0 if rho == 1 else BURN_IN
        e = s * rng.standard_normal(T + burn)
        y = np.empty_like(e)
        y[0] = e[0]
        for t in range(1, e.size):
            y[t] = rho * y[t - 1] + e[t]
        return Dataset.from_arrays({"y": y[burn:]})

    if kind == "random_walk":
        drift = spec.param("drift", 0.0)
        return Dataset.from_arrays({"y": np.cumsum(drift + s * rng.standard_normal(T))})

    if kind == "double_integrated":
        return Dataset.from_arrays({"y": np.cumsum(np.cumsum(s * rng.standard_normal(T)))})

    if kind == "triangular_coint":
        beta = spec.param("beta", 2.0)
        corr = spec.param("endo_corr", 0.0)
        e = rng.standard_normal((T, 2))
        chol = np.linalg.cholesky(np.array([[1.0, corr], [corr, 1.0]]))
        vu = s * e @ chol.T
        x = np.cumsum(vu[:, 0])
        y = beta * x + vu[:, 1]
        return Dataset.from_arrays({"y": y, "x": x})

    if kind == "ecm":
        beta = spec.param("beta", 2.0)
        adj = spec.param("adjustment", -0.4)
        e = s * rng.standard_normal((T, 2))
        x = np.cumsum(e[:, 0])
        y = np.empty(T)
        y[0] = beta * x[0] + e[0, 1]
        for t in range(1, T):
            y[t] = y[t - 1] + adj * (y[t - 1] - beta * x[t - 1]) + e[t, 1]
        return Dataset.from_arrays({"y": y, "x": x})

    if kind == "var_causal":
        a = spec.param("a", 0.8)
        b = spec.param("b", 0.5)
        n = T + BURN_IN
        x = s * rng.standard_normal(n)
        e = s * rng.standard_normal(n)
        y = np.empty(n)
        y[0] = e[0]
        for t in range(1, n):
            y[t] = a * y[t - 1] + b * x[t - 1] + e[t]
        return Dataset.from_arrays({"y": y[BURN_IN:], "x": x[BURN_IN:]})

    if kind == "break":
        at = spec.param("at", 0.5)
        mag = spec.param("magnitude", 5.0)
        x = rng.standard_normal(T)
        e = s * rng.standard_normal(T)
        shift = np.where(np.arange(T) >= int(at * T), mag * s, 0.0)
        return Dataset.from_arrays({"y": 1.0 + x + e + shift, "x": x})

    # hetero
    link = spec.param("x_link", 1.0)
    x = rng.uniform(1.0, 5.0, T)
    e = s * x**link * rng.standard_normal(T)
    return Dataset.from_arrays({"y": 1.0 + x + e, "x": x})


# --------------------------------------------------------------------------- test descriptors


def _design_y_on_x(data: Dataset) -> DesignMatrix:
    y = data.array("y")
    cols = {"x": data.array("x")} if "x" in data else {}
    return DesignMatrix.build(y, cols, intercept=True, response_name="y")


def _level_label(level: float) -> str:
    labels = {0.01: "1%", 0.025: "2.5%", 0.05: "5%", 0.1: "10%"}
    for value, label in labels.items():
        if math.isclose(level, value):
            return label
    raise ValueError(f"level {level} is not tabulated; use 0.01, 0.025, 0.05 or 0.10")


def _unit_root(data: Dataset, level: float, test: str = "adf", **options) -> bool:
    from ardlkit.unitroot import UnitRootSpec, unit_root_test

    spec = UnitRootSpec(test=test, **options)
    return unit_root_test(data["y"], spec).rejects_at(_level_label(level))


def _granger(data: Dataset, level: float, lags: int | str = 1, **options) -> bool:
    from ardlkit.causality import granger_pair

    return granger_pair(data["x"], data["y"], lags=lags, **options).p_value < level


def _granger_reverse(data: Dataset, level: float, lags: int | str = 1, **options) -> bool:
    from ardlkit.causality import granger_pair

    return granger_pair(data["y"], data["x"], lags=lags, **options).p_value < level


def _bounds(data: Dataset, level: float, max_p: int = 2, max_q: int = 2, order=None, **options) -> bool:
    from ardlkit.ardl import ArdlOrder, bounds_f_test, fit_ardl, select_order
    from ardlkit.dataio import ModelSpec

    spec = ModelSpec("y", ("x",))
    if order is None:
        order = select_order(data, spec, max_p=max_p, max_q=max_q)
    else:
        order = ArdlOrder(order[0], tuple(order[1:]))
    result = bounds_f_test(fit_ardl(data, spec, order), **options)
    return result.decision[_level_label(level)] == "cointegrated"


def _jb(data: Dataset, level: float) -> bool:
    from ardlkit.diagnostics import jarque_bera

    return jarque_bera(ols_fit(_design_y_on_x(data)).residuals).p_value < level


def _lm(data: Dataset, level: float, order: int = 2) -> bool:
    from ardlkit.diagnostics import serial_correlation_lm

    design = _design_y_on_x(data)
    return serial_correlation_lm(ols_fit(design), design, order).p_value < level


def _bpg(data: Dataset, level: float) -> bool:
    from ardlkit.diagnostics import heteroscedasticity_bpg

    design = _design_y_on_x(data)
    return heteroscedasticity_bpg(ols_fit(design), design).p_value < level


def _stability(data: Dataset, level: float, kind: str = "cusum") -> bool:
    from ardlkit.diagnostics import stability_path

    if not math.isclose(level, 0.05):
        raise ValueError("stability bounds are tabulated at the 5% level only")
    return stability_path(_design_y_on_x(data), kind).verdict == "unstable"


# partials of module-level functions stay picklable for worker processes
TESTS: dict[str, Callable[..., bool]] = {
    "adf": partial(_unit_root, test="adf"),
    "pp": partial(_unit_root, test="pp"),
    "dfgls": partial(_unit_root, test="dfgls"),
    "granger": _granger,
    "granger_reverse": _granger_reverse,
    "bounds": _bounds,
    "jb": _jb,
    "lm": _lm,
    "bpg": _bpg,
    "cusum": partial(_stability, kind="cusum"),
    "cusumsq": partial(_stability, kind="cusumsq"),
}


def resolve_test(test: str | Callable[..., bool]) -> Callable[..., bool]:
    if callable(test):
        return test
    try:
        return TESTS[test]
    except KeyError:
        raise ValueError(f"unknown test descriptor {test!r}; known: {sorted(TESTS)}") from None


# --------------------------------------------------------------------------- replication engine


@dataclass(frozen=True)
class SimReport:
    replications: int
    metric: str
    value: float
    seed: int
    wall_time: float = field(default=0.0, compare=False)
    test: str = ""
    level: float = 0.05
    values: tuple[float, ...] = ()

    def to_dict(self, include_time: bool = True) -> dict:
        out = {
            "replications": self.replications,
            "metric": self.metric,
            "value": self.value,
            "seed": self.seed,
            "test": self.test,
            "level": self.level,
        }
        if self.values:
            out["values"] = list(self.values)
        if include_time:
            out["wall_time"] = self.wall_time
        return out

    def summary_line(self) -> str:
        return (
            f"{self.test}: {self.metric} = {self.value:.4f} over {self.replications} "
            f"replications (seed {self.seed}, {self.wall_time:.1f}s)"
        )


def _run_chunk(args) -> list:
    func, dgp, indices, master, level, options = args
    out = []
    for i in indices:
        data = simulate_dgp(dgp, replication_rng(master, i))
        out.append(func(data, level, **options))
    return out


def run_replications(
    func: Callable[[Dataset], object],
    dgp: DgpSpec,
    reps: int,
    seed: int | None = None,
    workers: int = 1,
) -> list:
    """Evaluate ``func(data)`` on ``reps`` independent draws, in replication order."""
    master = dgp.seed if seed is None else seed
    wrapped = _Unary(func)
    return _dispatch(wrapped, dgp, reps, master, 0.0, {}, workers)


class _Unary:
    def __init__(self, func):
        self.func = func

    def __call__(self, data, level, **options):
        return self.func(data)


def _dispatch(func, dgp, reps, master, level, options, workers) -> list:
    if workers <= 1:
        return _run_chunk((func, dgp, range(reps), master, level, options))
    bounds = np.linspace(0, reps, workers + 1).astype(int)
    chunks = [range(bounds[i], bounds[i + 1]) for i in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(_run_chunk, [(func, dgp, c, master, level, options) for c in chunks])
        return [r for part in parts for r in part]


def size_power_experiment(
    dgp: DgpSpec,
    test: str | Callable[..., bool],
    reps: int,
    level: float = 0.05,
    workers: int = 1,
    seed: int | None = None,
    **options,
) -> SimReport:
    """Fraction of replications in which ``test`` rejects at ``level``.

    ``test`` names an entry of :data:`TESTS` (or is a picklable callable
    ``f(data, level, **options) -> bool``). The master seed defaults to ``dgp.seed``.
    """
    if reps < 100:
        raise ValueError("size/power experiments need reps >= 100")
    func = resolve_test(test)
    master = dgp.seed if seed is None else int(seed)
    start = time.perf_counter()
    outcomes = _dispatch(func, dgp, reps, master, level, options, workers)
    rate = float(np.mean(outcomes))
    return SimReport(
        replications=reps,
        metric="rejection_rate",
        value=rate,
        seed=master,
        wall_time=time.perf_counter() - start,
        test=test if isinstance(test, str) else getattr(test, "__name__", "custom"),
        level=level,
    )


# --------------------------------------------------------------------------- critical values


def _partial_out(Z: np.ndarray | None, A: np.ndarray) -> np.ndarray:
    """Residualize each row of A on the columns of Z (shared across rows)."""
    if Z is None:
        return A
    P = Z @ np.linalg.solve(Z.T @ Z, Z.T)
    return A - A @ P.T


def _df_batch(Y: np.ndarray, deterministics: str, pp_bandwidth: int | None = None) -> np.ndarray:
    """Zero-lag Dickey-Fuller t-ratios (or PP Z_t) for each row of Y."""
    dy = np.diff(Y, axis=1)
    ylag = Y[:, :-1]
    n = dy.shape[1]
    kdet = {"none": 0, "constant": 1, "constant_trend": 2}[deterministics]
    if kdet:
        cols = [np.ones(n)] + ([np.arange(1.0, n + 1.0)] if kdet == 2 else [])
        Z = np.column_stack(cols)
        dy = _partial_out(Z, dy)
        ylag = _partial_out(Z, ylag)
    sxx = np.einsum("ij,ij->i", ylag, ylag)
    g = np.einsum("ij,ij->i", ylag, dy) / sxx
    e = dy - g[:, None] * ylag
    df = n - kdet - 1
    s2 = np.einsum("ij,ij->i", e, e) / df
    se = np.sqrt(s2 / sxx)
    t = g / se
    if pp_bandwidth is None:
        return t
    B = pp_bandwidth
    w = bartlett_weights(B)
    g0 = np.einsum("ij,ij->i", e, e) / n
    l2 = g0.copy()
    for j in range(1, B + 1):
        l2 += 2 * w[j] * np.einsum("ij,ij->i", e[:, j:], e[:, :-j]) / n
    return np.sqrt(g0 / l2) * t - (l2 - g0) * n * se / (2 * np.sqrt(l2) * np.sqrt(s2))


def _gls_detrend_batch(Y: np.ndarray, deterministics: str) -> np.ndarray:
    from ardlkit.unitroot import CBAR, _deterministic_columns

    T = Y.shape[1]
    abar = 1.0 + CBAR[deterministics] / T
    z = _deterministic_columns(T, deterministics)
    za = np.vstack((z[:1], z[1:] - abar * z[:-1]))
    ya = np.hstack((Y[:, :1], Y[:, 1:] - abar * Y[:, :-1]))
    proj = np.linalg.solve(za.T @ za, za.T)  # k x T
    delta = ya @ proj.T  # R x k
    return Y - delta @ z.T


def null_statistics(
    test: str,
    n: int,
    reps: int,
    deterministics: str = "constant",
    seed: int = 0,
    batch: int = 5000,
    first_index: int = 0,
) -> np.ndarray:
    """Statistics of ``test`` (zero augmentation lags) under a driftless random-walk null.

    ``n`` is the effective regression sample, so each replication draws a walk
    of n + 1 points starting at zero. Replication ``first_index + i`` uses the
    per-replication stream for that index.
    """
    if test not in ("adf", "pp", "dfgls"):
        raise ValueError(f"no null simulator for test {test!r}")
    out = np.empty(reps)
    for lo in range(0, reps, batch):
        hi = min(lo + batch, reps)
        E = np.empty((hi - lo, n))
        for r in range(lo, hi):
            E[r - lo] = replication_rng(seed, first_index + r).standard_normal(n)
        Y = np.hstack((np.zeros((hi - lo, 1)), np.cumsum(E, axis=1)))
        if test == "adf":
            out[lo:hi] = _df_batch(Y, deterministics)
        elif test == "pp":
            out[lo:hi] = _df_batch(Y, deterministics, pp_bandwidth=automatic_bandwidth(n))
        else:
            out[lo:hi] = _df_batch(_gls_detrend_batch(Y, deterministics), "none")
    return out


def simulate_critical_values(
    test: str,
    n: int,
    reps: int = 50_000,
    deterministics: str = "constant",
    seed: int = 0,
) -> dict[str, float]:
    """Empirical 1%, 5% and 10% left-tail quantiles of ``test`` under its null."""
    if reps < 10_000:
        raise ValueError("critical-value simulation needs reps >= 10000")
    stats = null_statistics(test, n, reps, deterministics, seed)
    q = np.quantile(stats, [0.01, 0.05, 0.10])
    return {"1%": float(q[0]), "5%": float(q[1]), "10%": float(q[2])}


def cusumsq_max_deviation(r: int, reps: int, seed: int = 0, batch: int = 20_000) -> np.ndarray:
    """max_t |S_t - t/r| of the CUSUM-of-squares path for ``r`` i.i.d. normal residuals."""
    out = np.empty(reps)
    line = np.arange(1, r + 1) / r
    for lo in range(0, reps, batch):
        hi = min(lo + batch, reps)
        W = np.empty((hi - lo, r))
        for i in range(lo, hi):
            W[i - lo] = replication_rng(seed, i).standard_normal(r)
        S = np.cumsum(W**2, axis=1)
        S /= S[:, -1:]
        out[lo:hi] = np.max(np.abs(S - line), axis=1)
    return out


def median_over_replications(
    func: Callable[[Dataset], float], dgp: DgpSpec, reps: int, seed: int | None = None
) -> SimReport:
    start = time.perf_counter()
    values = np.asarray(run_replications(func, dgp, reps, seed), dtype=float)
    return SimReport(
        replications=reps,
        metric="median",
        value=float(np.median(values)),
        seed=dgp.seed if seed is None else seed,
        wall_time=time.perf_counter() - start,
        values=tuple(values.tolist()),
    )


def with_seed(dgp: DgpSpec, seed: int) -> DgpSpec:
    return replace(dgp, seed=seed)
