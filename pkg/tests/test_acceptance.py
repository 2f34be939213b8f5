"""Acceptance criteria 1-10, one test each.

Every test prints a single ``ACCEPTANCE <n> PASS|FAIL`` line with the measured
values before asserting. Tolerances and replication counts are pinned here.
"""

import json
import time

import numpy as np
import pytest

from ardlkit import montecarlo as mc
from ardlkit import pipeline, report, tables
from ardlkit.ardl import ArdlOrder, bounds_decision, bounds_table, fit_ardl, fit_ecm, long_run_coefficients
from ardlkit.causality import granger_both
from ardlkit.cli import main
from ardlkit.coint import METHODS, coint_fit, ols_levels
from ardlkit.dataio import Dataset, ModelSpec
from ardlkit.diagnostics import cusum_paths, jarque_bera
from ardlkit.linreg import DesignMatrix, ols_fit
from ardlkit.unitroot import unit_root_critical_values
from oracles import ols_normal_equations

SPEC = ModelSpec("y", ("x",))


def _verdict(capsys, n, checks):
    """Print the criterion's line; ``checks`` maps a label to (ok, measured text)."""
    ok = all(c[0] for c in checks.values())
    detail = "; ".join(f"{k}: {v}{'' if good else ' [miss]'}" for k, (good, v) in checks.items())
    with capsys.disabled():
        print(f"\nACCEPTANCE {n} {'PASS' if ok else 'FAIL'} | {detail}")
    assert ok, detail


def test_1_ols_oracle(capsys):
    start = time.perf_counter()
    rng = np.random.default_rng(1)
    worst = 0.0
    for _ in range(100):
        n, k = int(rng.integers(15, 61)), int(rng.integers(2, 7))
        X = np.column_stack((np.ones(n), rng.normal(size=(n, k - 1))))
        y = X @ rng.normal(size=k) + rng.normal(size=n)
        fit = ols_fit(DesignMatrix(X, y, tuple(f"c{i}" for i in range(k))))
        ref = ols_normal_equations(X, y)
        pairs = [
            (fit.coefficients, ref["beta"]), (fit.standard_errors, ref["se"]),
            (fit.r_squared, ref["r2"]), (fit.aic, ref["aic"]), (fit.bic, ref["bic"]),
        ]
        for got, want in pairs:
            got, want = np.atleast_1d(got), np.atleast_1d(want)
            worst = max(worst, float(np.max(np.abs(got - want) / np.maximum(np.abs(want), 1e-300))))
    elapsed = time.perf_counter() - start
    _verdict(capsys, 1, {"max rel err": (worst <= 1e-10, f"{worst:.2e}"), "runtime": (elapsed < 5, f"{elapsed:.2f}s")})


def test_2_bounds_constants(capsys):
    expect = {"10%": (2.07, 3.00), "5%": (2.43, 3.27), "2.5%": (2.81, 3.84), "1%": (3.10, 4.20)}
    table = bounds_table(5, table="paper-table4")
    r = bounds_decision(5.3421, 5, table="paper-table4")
    _verdict(capsys, 2, {
        "table bit-exact": (table == expect, str(table == expect)),
        "F=5.3421": (r.strongest_level() == "1%", f"cointegrated at {r.strongest_level()}"),
    })


def test_3_unit_root_size_power(capsys):
    start = time.perf_counter()
    checks = {}
    for test in ("adf", "pp", "dfgls"):
        size = mc.size_power_experiment(mc.DgpSpec("random_walk", T=200, seed=3100), test, 5000).value
        power = mc.size_power_experiment(mc.DgpSpec("white_noise", T=200, seed=3200), test, 1000).value
        checks[f"{test} size"] = (0.035 <= size <= 0.065, f"{size:.4f}")
        checks[f"{test} WN power"] = (power >= 0.99, f"{power:.4f}")
    ar = mc.DgpSpec("ar1", T=100, seed=3300, params={"rho": 0.95})
    p_adf = mc.size_power_experiment(ar, "adf", 2000).value
    p_gls = mc.size_power_experiment(ar, "dfgls", 2000).value
    checks["AR(0.95) DF-GLS>=ADF"] = (p_gls >= p_adf, f"{p_gls:.4f} vs {p_adf:.4f}")
    elapsed = time.perf_counter() - start
    checks["runtime"] = (elapsed < 180, f"{elapsed:.0f}s")
    _verdict(capsys, 3, checks)


def test_4_long_run(capsys):
    T = 40
    rng = np.random.default_rng(4)
    x = np.cumsum(rng.standard_normal(T))
    y = np.zeros(T)
    for t in range(1, T):
        y[t] = 1.0 + 0.5 * y[t - 1] + 1.0 * x[t]
    lr = long_run_coefficients(fit_ardl(Dataset.from_arrays({"y": y, "x": x}), SPEC, ArdlOrder(1, (0,))))
    exact = abs(lr.coef("x") - 2.0)

    def one(data):
        e = fit_ecm(data, SPEC, ArdlOrder(1, (1,)), force=True)
        return abs(e.long_run.coef("x") - 2.0) <= 3 * e.long_run.se("x"), e.ect_coefficient

    out = mc.run_replications(one, mc.DgpSpec("ecm", T=500, seed=4000), 500)
    cover = np.mean([c for c, _ in out])
    ect = np.array([v for _, v in out])
    _verdict(capsys, 4, {
        "|theta-2|": (exact <= 1e-12, f"{exact:.1e}"),
        "coverage": (cover >= 0.90, f"{cover:.3f}"),
        "ECT<0": (np.mean(ect < 0) >= 0.95, f"{np.mean(ect < 0):.3f}"),
        "median ECT": (abs(np.median(ect) + 0.4) <= 0.1, f"{np.median(ect):.4f}"),
    })


def test_5_bounds_size_power(capsys):
    null = mc.DgpSpec("ecm", T=100, seed=5000, params={"adjustment": 0.0, "beta": 0.0})
    size = mc.size_power_experiment(null, "bounds", 2000).value
    power = mc.size_power_experiment(mc.DgpSpec("triangular_coint", T=200, seed=5100), "bounds", 1000).value
    _verdict(capsys, 5, {"size": (size <= 0.08, f"{size:.4f}"), "power": (power >= 0.85, f"{power:.4f}")})


def test_6_robustness(capsys):
    def errors(data):
        return abs(coint_fit(data, SPEC, "fmols").coef("x") - 2), abs(ols_levels(data, SPEC).coefficients[1] - 2)

    endo = mc.DgpSpec("triangular_coint", T=500, seed=6000, params={"endo_corr": 0.7})
    err = np.array(mc.run_replications(errors, endo, 1000))

    def agree(data):
        fits = [coint_fit(data, SPEC, m) for m in METHODS]
        b = [f.coef("x") for f in fits]
        return max(b) - min(b) <= 3 * max(f.se("x") for f in fits)

    rate = np.mean(mc.run_replications(agree, mc.DgpSpec("triangular_coint", T=200, seed=6100), 1000))

    rng = np.random.default_rng(6)
    T = 60
    x = np.cumsum(rng.standard_normal(T))
    Z = np.column_stack((np.ones(T - 1), x[1:], np.diff(x)))
    u = rng.standard_normal(T - 1)
    u -= Z @ np.linalg.lstsq(Z, u, rcond=None)[0]
    y = np.r_[1 + 2 * x[0], 1 + 2 * x[1:] + u]
    d = Dataset.from_arrays({"y": y, "x": x})
    ols = ols_levels(d, SPEC).coefficients
    fm = coint_fit(d, SPEC, "fmols", bandwidth=0).coefficients
    rel = float(np.max(np.abs(fm - ols) / np.abs(ols)))
    med_f, med_o = np.median(err[:, 0]), np.median(err[:, 1])
    _verdict(capsys, 6, {
        "median |err| FMOLS<OLS": (med_f < med_o, f"{med_f:.4f} < {med_o:.4f}"),
        "FMOLS median within 0.05": (np.median(err[:, 0]) < 0.05, f"{med_f:.4f}"),
        "3-SE agreement": (rate >= 0.95, f"{rate:.3f}"),
        "FMOLS=OLS": (rel <= 1e-10, f"{rel:.1e}"),
    })


def test_7_granger(capsys):
    size = mc.size_power_experiment(mc.DgpSpec("var_causal", T=200, seed=7000, params={"a": 0.0, "b": 0.0}), "granger", 5000, lags=2).value
    power = mc.size_power_experiment(mc.DgpSpec("var_causal", T=200, seed=7100), "granger", 1000, lags=1).value

    def one_way(data):
        fwd, back = granger_both(data["x"], data["y"], lags=1)
        return fwd.p_value < 0.05 and back.p_value >= 0.05

    direction = np.mean(mc.run_replications(one_way, mc.DgpSpec("var_causal", T=200, seed=7200), 500))
    _verdict(capsys, 7, {
        "size": (abs(size - 0.05) <= 0.015, f"{size:.4f}"),
        "power": (power >= 0.9, f"{power:.4f}"),
        "one-way": (direction >= 0.85, f"{direction:.3f}"),
    })


def test_8_diagnostics(capsys):
    jb0 = jarque_bera(np.array([-1.0, -1.0, 1.0, 1.0] + [0.0] * 8)).statistic
    homo = {"x_link": 0.0}
    jb = mc.size_power_experiment(mc.DgpSpec("hetero", T=500, seed=8000, params=homo), "jb", 2000).value
    lm = mc.size_power_experiment(mc.DgpSpec("hetero", T=200, seed=8100, params=homo), "lm", 2000).value
    bpg = mc.size_power_experiment(mc.DgpSpec("hetero", T=200, seed=8200, params=homo), "bpg", 2000).value
    lm_pow = mc.size_power_experiment(mc.DgpSpec("ar1", T=200, seed=8300, params={"rho": 0.6}), "lm", 1000).value
    bpg_pow = mc.size_power_experiment(mc.DgpSpec("hetero", T=200, seed=8400), "bpg", 1000).value
    cusum = 1 - mc.size_power_experiment(mc.DgpSpec("break", T=100, seed=8500, params={"magnitude": 0.0}), "cusum", 1000).value
    sq = mc.size_power_experiment(mc.DgpSpec("break", T=100, seed=8600), "cusumsq", 1000).value
    rng = np.random.default_rng(8)
    ends = all(
        cusum_paths(w, 2, 2 + w.size, "cusumsq").path[-1] == 1.0
        for w in (rng.standard_normal(int(m)) * s for m, s in zip(rng.integers(3, 300, 500), rng.lognormal(0, 5, 500)))
    )
    _verdict(capsys, 8, {
        "JB=0": (jb0 == 0.0, f"{jb0}"),
        "JB size": (abs(jb - 0.05) <= 0.015, f"{jb:.4f}"),
        "LM size": (abs(lm - 0.05) <= 0.015, f"{lm:.4f}"),
        "BPG size": (abs(bpg - 0.05) <= 0.015, f"{bpg:.4f}"),
        "LM power": (lm_pow >= 0.95, f"{lm_pow:.4f}"),
        "BPG power": (bpg_pow >= 0.9, f"{bpg_pow:.4f}"),
        "CUSUM stable": (cusum >= 0.93, f"{cusum:.4f}"),
        "CUSUMSQ break": (sq >= 0.8, f"{sq:.4f}"),
        "CUSUMSQ ends at 1": (ends, str(ends)),
    })


def test_9_critical_values(capsys):
    start = time.perf_counter()
    checks = {}
    for test in ("adf", "dfgls"):
        for n in (50, 100):
            sim = mc.simulate_critical_values(test, n, 50_000, "constant", seed=9000 + n)
            emb = unit_root_critical_values(test, "constant", n)
            gap = max(abs(sim[k] - emb[k]) for k in sim)
            checks[f"{test} n={n}"] = (gap <= 0.05, f"max gap {gap:.4f}")
    elapsed = time.perf_counter() - start
    checks["runtime"] = (elapsed < 600, f"{elapsed:.0f}s")
    _verdict(capsys, 9, checks)


def test_10_pipeline(capsys, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    codes = (main(["run", "--out-dir", str(a), "--seed", "7"]), main(["run", "--out-dir", str(b), "--seed", "7"]))
    manifest = sorted(p.name for p in a.iterdir()) == sorted(pipeline.MANIFEST) if a.exists() else False
    identical = manifest and all((a / f).read_bytes() == (b / f).read_bytes() for f in pipeline.MANIFEST)
    heads = {
        "summary.md": "| Variable | Obs | Mean | Std. Dev. | Min | Max |",
        "unitroot.md": "| Variables | ADF I(0) |",
        "bounds.md": "| Test Statistic | Value | Signif. | I(0) | I(1) |",
        "estimate.md": "| Variable | Coefficient | Std. Error | t-Statistic | Prob. |",
        "robustness.md": "| Variables | FMOLS | DOLS | CCR |",
        "granger.md": "| Null Hypothesis | Obs | F-Statistic | Prob. |",
        "diagnostics.md": "| Diagnostic tests | Coefficient | p-value | Decision |",
    }
    layouts = manifest and all(h in (a / f).read_text() for f, h in heads.items())
    svgs = manifest and all('class="path"' in (a / f).read_text() for f in ("cusum.svg", "cusumsq.svg"))
    thresholds = [report.stars(p) for p in (0.009, 0.049, 0.099, 0.1)] == ["***", "**", "*", ""]
    legend = report.LEGEND == "*** p<0.01, ** p<0.05, * p<0.1"
    seed = manifest and json.loads((a / "report.json").read_text())["config"]["seed"] == 7
    _verdict(capsys, 10, {
        "exit codes": (codes == (0, 0), str(codes)),
        "manifest": (manifest, str(manifest)),
        "byte-identical": (identical, str(identical)),
        "layouts": (layouts and svgs, str(layouts and svgs)),
        "stars/legend": (thresholds and legend, str(thresholds and legend)),
        "seed recorded": (seed, str(seed)),
    })
