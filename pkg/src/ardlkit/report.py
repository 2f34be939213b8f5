"""Markdown, JSON and SVG rendering of pipeline results.

Markdown tables round (3 decimals for coefficients, 4 for test statistics,
standard errors and p-values); the JSON document keeps full double precision.
Significance stars follow ``*** p<0.01, ** p<0.05, * p<0.1``.
"""

from __future__ import annotations

import json
import math
from collections.abc import Sequence
from pathlib import Path

import numpy as np

from ardlkit.ardl import BoundsResult, EcmFit
from ardlkit.causality import GrangerResult
from ardlkit.coint import CointFit
from ardlkit.dataio import Dataset, SummaryStats
from ardlkit.diagnostics import DiagnosticReport, StabilityPath
from ardlkit.unitroot import IntegrationClass, UnitRootResult

LEGEND = "*** p<0.01, ** p<0.05, * p<0.1"
BOUNDS_ROWS = ("10%", "5%", "2.5%", "1%")
UNITROOT_HEADERS = {"adf": "ADF", "pp": "P-P", "dfgls": "DF-GLS"}


def stars(p: float) -> str:
    if p is None or not math.isfinite(p):
        return ""
    if p < 0.01:
        return "***"
    if p < 0.05:
        return "**"
    if p < 0.1:
        return "*"
    return ""


def fmt(value: float, digits: int) -> str:
    if value is None or not math.isfinite(value):
        return "NA"
    out = f"{value:.{digits}f}"
    # avoid "-0.000"
    if float(out) == 0.0:
        out = out.lstrip("-")
    return out


def coef(value: float) -> str:
    return fmt(value, 3)


def stat(value: float) -> str:
    return fmt(value, 4)


def pval(value: float) -> str:
    return fmt(value, 4)


def markdown_table(headers: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    lines = ["| " + " | ".join(headers) + " |", "|" + "|".join("---" for _ in headers) + "|"]
    lines += ["| " + " | ".join(str(c) for c in row) + " |" for row in rows]
    return "\n".join(lines)


def _doc(title: str, *blocks: str) -> str:
    return "\n\n".join((f"# {title}", *blocks)) + "\n"


def _num(x) -> float | None:
    """JSON-safe float: NaN and infinities become null."""
    if x is None:
        return None
    x = float(x)
    return x if math.isfinite(x) else None


# --------------------------------------------------------------------------- summary


def render_summary(stats: SummaryStats, d: Dataset) -> str:
    years = d.years.astype(float)
    rows = [[
        "T", str(len(d)), fmt(float(years.mean()), 1), fmt(float(np.std(years, ddof=1)), 3),
        str(d.start_year), str(d.end_year),
    ]]
    for name, s in stats.records.items():
        rows.append([name, str(s.count), coef(s.mean), coef(s.std), coef(s.min), coef(s.max)])
    return _doc("Summary Statistics", markdown_table(("Variable", "Obs", "Mean", "Std. Dev.", "Min", "Max"), rows))


def summary_json(stats: SummaryStats) -> dict:
    return {
        name: {"obs": s.count, "mean": s.mean, "std": s.std, "min": s.min, "max": s.max}
        for name, s in stats.records.items()
    }


# --------------------------------------------------------------------------- unit roots


_ORDER_LABEL = {"I0": "I(0)", "I1": "I(1)", "I2_or_higher": "I(2)+"}


def _unitroot_cell(r: UnitRootResult) -> str:
    return fmt(r.statistic, 3) + r.stars


def render_unitroot(classes: Sequence[IntegrationClass]) -> str:
    tests = [r.test for r in classes[0].level_results] if classes else list(UNITROOT_HEADERS)
    headers = ["Variables"]
    for t in tests:
        headers += [f"{UNITROOT_HEADERS[t]} I(0)", f"{UNITROOT_HEADERS[t]} I(1)"]
    headers.append("Decision")
    rows = []
    for c in classes:
        row = [c.variable]
        for lvl, dif in zip(c.level_results, c.difference_results):
            row += [_unitroot_cell(lvl), _unitroot_cell(dif)]
        row.append(_ORDER_LABEL[c.order])
        rows.append(row)
    note = "Stars mark rejection of a unit root against the embedded critical values: " + LEGEND
    return _doc("Results of Unit Root Tests", markdown_table(headers, rows), note)


def _unitroot_result_json(r: UnitRootResult) -> dict:
    return {
        "test": r.test,
        "deterministics": r.deterministics,
        "statistic": _num(r.statistic),
        "lags": r.lags_used,
        "nobs": r.nobs,
        "bandwidth": r.bandwidth,
        "critical_values": {k: _num(v) for k, v in r.critical_values.items()},
        "p_value_band": r.p_value_band,
        "decision": r.decision,
    }


def unitroot_json(classes: Sequence[IntegrationClass]) -> list[dict]:
    return [
        {
            "variable": c.variable,
            "order": c.order,
            "level": [_unitroot_result_json(r) for r in c.level_results],
            "first_difference": [_unitroot_result_json(r) for r in c.difference_results],
        }
        for c in classes
    ]


# --------------------------------------------------------------------------- bounds


def render_bounds(b: BoundsResult) -> str:
    rows = []
    for i, level in enumerate(BOUNDS_ROWS):
        lo, hi = b.bounds.get(level, (float("nan"), float("nan")))
        label, value = ("F-statistic", stat(b.f_statistic)) if i == 0 else (("k", str(b.k)) if i == 1 else ("", ""))
        rows.append([label, value, level, f"{lo:.2f}", f"{hi:.2f}"])
    table = markdown_table(("Test Statistic", "Value", "Signif.", "I(0)", "I(1)"), rows)
    strongest = b.strongest_level()
    verdict = (
        f"Cointegrated at the {strongest} level (F exceeds the I(1) bound)."
        if strongest
        else "No cointegration verdict at any tabulated level."
    )
    decisions = ", ".join(f"{lvl}: {b.decision[lvl]}" for lvl in BOUNDS_ROWS if lvl in b.decision)
    return _doc(
        "Results of ARDL Bounds Test",
        table,
        f"Critical values: {b.table} table, case {b.case}.",
        verdict,
        f"Decisions by level: {decisions}.",
    )


def bounds_json(b: BoundsResult) -> dict:
    return {
        "f_statistic": _num(b.f_statistic),
        "k": b.k,
        "case": b.case,
        "table": b.table,
        "bounds": {lvl: [lo, hi] for lvl, (lo, hi) in b.bounds.items()},
        "decision": b.decision,
        "strongest_level": b.strongest_level(),
    }


# --------------------------------------------------------------------------- ARDL estimates


def _coef_rows(names, coefs, ses, tvals, pvals, label=lambda n: n) -> list[list[str]]:
    return [
        [label(n), coef(c) + stars(p), stat(s), stat(t), pval(p)]
        for n, c, s, t, p in zip(names, coefs, ses, tvals, pvals)
    ]


def render_estimate(ecm: EcmFit) -> str:
    lr, sr = ecm.long_run, ecm.short_run
    rows = [["**Long-run Estimation**", "", "", "", ""]]
    rows += _coef_rows(lr.names, lr.coefficients, lr.standard_errors, lr.t_statistics, lr.p_values)
    rows.append(["**Short-run Estimation**", "", "", "", ""])
    rows += _coef_rows(
        sr.names, sr.coefficients, sr.standard_errors, sr.t_statistics, sr.p_values,
        label=lambda n: "CointEq(-1)*" if n == "CointEq(-1)" else n,
    )
    table = markdown_table(("Variable", "Coefficient", "Std. Error", "t-Statistic", "Prob."), rows)
    info = (
        f"Selected model: {ecm.ardl.order.label()}, effective sample {ecm.ardl.effective_sample} "
        f"({int(ecm.ardl.years[0])}-{int(ecm.ardl.years[-1])})."
    )
    speed = (
        f"Error-correction coefficient {coef(ecm.ect_coefficient)}: "
        + ("deviations from the long-run path are corrected." if ecm.converged else "no convergence to the long-run path.")
    )
    return _doc("Results of ARDL Short-run and Long-run", table, info, speed, LEGEND)


def _fit_json(names, coefs, ses, tvals, pvals) -> list[dict]:
    return [
        {"name": n, "coefficient": _num(c), "std_error": _num(s), "t_statistic": _num(t), "p_value": _num(p)}
        for n, c, s, t, p in zip(names, coefs, ses, tvals, pvals)
    ]


def estimate_json(ecm: EcmFit) -> dict:
    lr, sr, af = ecm.long_run, ecm.short_run, ecm.ardl.levels_fit
    return {
        "order": {"p": ecm.ardl.order.p, "q": list(ecm.ardl.order.q), "label": ecm.ardl.order.label()},
        "effective_sample": ecm.ardl.effective_sample,
        "long_run": _fit_json(lr.names, lr.coefficients, lr.standard_errors, lr.t_statistics, lr.p_values),
        "short_run": _fit_json(sr.names, sr.coefficients, sr.standard_errors, sr.t_statistics, sr.p_values),
        "ect_coefficient": _num(ecm.ect_coefficient),
        "uecm": {
            "terms": _fit_json(af.names, af.coefficients, af.standard_errors, af.t_statistics, af.p_values),
            "r_squared": _num(af.r_squared),
            "aic": _num(af.aic),
            "bic": _num(af.bic),
            "rss": _num(af.rss),
        },
    }


# --------------------------------------------------------------------------- robustness


def render_robustness(fits: Sequence[CointFit]) -> str:
    headers = ["Variables", *(f.method.upper() for f in fits)]
    names = [n for n in fits[0].names if n != "const"] + ["const"]
    rows = []
    for n in names:
        label = "C" if n == "const" else n
        row = [label]
        se_row = [""]
        for f in fits:
            i = f.names.index(n)
            row.append(coef(f.coefficients[i]) + stars(f.p_values[i]))
            se_row.append(f"({stat(f.standard_errors[i])})")
        rows += [row, se_row]
    tuning = "; ".join(
        f"{f.method.upper()}: " + (f"leads/lags q={f.leads_lags}, " if f.leads_lags is not None else "")
        + f"Bartlett bandwidth {f.bandwidth}, effective sample {f.effective_sample}"
        for f in fits
    )
    return _doc("Results of Robustness Check", markdown_table(headers, rows), tuning + ".", "Standard errors in parentheses. " + LEGEND)


def robustness_json(fits: Sequence[CointFit]) -> dict:
    return {
        f.method: {
            "bandwidth": f.bandwidth,
            "leads_lags": f.leads_lags,
            "effective_sample": f.effective_sample,
            "terms": _fit_json(f.names, f.coefficients, f.standard_errors, f.t_statistics, f.p_values),
        }
        for f in fits
    }


# --------------------------------------------------------------------------- Granger


def render_granger(results: Sequence[GrangerResult]) -> str:
    if not results:
        return _doc("Results of Pairwise Granger Causality Test", "No pairs configured.")
    rows = []
    for i, r in enumerate(results):
        obs = str(r.nobs) if i % 2 == 0 else ""
        rows.append([r.hypothesis, obs, stat(r.f_statistic), pval(r.p_value)])
    lags = sorted({r.lags for r in results})
    note = "Lag order: " + ", ".join(str(v) for v in lags) + ". The symbol ≠ reads \"does not Granger-cause\"."
    return _doc(
        "Results of Pairwise Granger Causality Test",
        markdown_table(("Null Hypothesis", "Obs", "F-Statistic", "Prob."), rows),
        note,
    )


def granger_json(results: Sequence[GrangerResult]) -> list[dict]:
    return [
        {
            "cause": r.cause,
            "effect": r.effect,
            "lags": r.lags,
            "nobs": r.nobs,
            "f_statistic": _num(r.f_statistic),
            "p_value": _num(r.p_value),
            "reject": r.decision,
        }
        for r in results
    ]


# --------------------------------------------------------------------------- diagnostics


def render_diagnostics(rep: DiagnosticReport, paths: Sequence[StabilityPath] = ()) -> str:
    dec = rep.decisions()
    rows = [
        ["Jarque-Bera test", stat(rep.jb.statistic), pval(rep.jb.p_value), dec["jb"]],
        [f"Lagrange Multiplier test (order {rep.lm.df})", stat(rep.lm.statistic), pval(rep.lm.p_value), dec["lm"]],
        ["Breusch-Pagan-Godfrey test", stat(rep.bpg.statistic), pval(rep.bpg.p_value), dec["bpg"]],
    ]
    blocks = [markdown_table(("Diagnostic tests", "Coefficient", "p-value", "Decision"), rows)]
    for p in paths:
        blocks.append(f"{_PATH_TITLES[p.kind]}: {_verdict_text(p)}.")
    return _doc("Results of Diagnostic Tests", *blocks)


def diagnostics_json(rep: DiagnosticReport, paths: Sequence[StabilityPath] = ()) -> dict:
    out = {
        key: {"statistic": _num(t.statistic), "p_value": _num(t.p_value), "df": t.df, "decision": rep.decisions()[key]}
        for key, t in (("jb", rep.jb), ("lm", rep.lm), ("bpg", rep.bpg))
    }
    out["stability"] = {p.kind: stability_json(p) for p in paths}
    return out


def stability_json(p: StabilityPath) -> dict:
    return {
        "verdict": p.verdict,
        "t": [int(v) for v in p.t],
        "path": [_num(v) for v in p.path],
        "lower": [_num(v) for v in p.lower],
        "upper": [_num(v) for v in p.upper],
    }


# --------------------------------------------------------------------------- SVG

_PATH_TITLES = {"cusum": "CUSUM", "cusumsq": "CUSUM of Squares"}
SVG_WIDTH, SVG_HEIGHT = 640, 420
_MARGIN = {"left": 70, "right": 20, "top": 40, "bottom": 80}


def _verdict_text(p: StabilityPath) -> str:
    if p.verdict == "stable":
        return "stable, the path stays within the 5% critical limits"
    return "unstable, the path crosses the 5% critical limits"


def _nice_ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    span = hi - lo
    raw = span / count
    mag = 10 ** math.floor(math.log10(raw))
    step = min((m * mag for m in (1, 2, 2.5, 5, 10) if m * mag >= raw), default=10 * mag)
    first = math.ceil(lo / step) * step
    ticks = []
    v = first
    while v <= hi + 1e-12 * span:
        ticks.append(0.0 if abs(v) < 1e-12 * span else v)
        v += step
    return ticks


def render_cusum_svg(path: StabilityPath, out: str | Path | None = None, x_labels: Sequence[int] | None = None) -> str:
    """Standalone SVG 1.1 figure of a stability path with its dashed 5% bounds.

    ``x_labels`` (for example calendar years, one per point) replace the
    observation index on the horizontal axis. The document is returned and,
    when ``out`` is given, also written there.
    """
    if path.path.size == 0:
        raise ValueError("stability path is empty")
    t = path.t.astype(float)
    ys = np.concatenate((path.path, path.lower, path.upper))
    y_lo, y_hi = float(ys.min()), float(ys.max())
    pad = 0.05 * (y_hi - y_lo) if y_hi > y_lo else 1.0
    y_lo, y_hi = y_lo - pad, y_hi + pad
    x_lo, x_hi = float(t[0]), float(t[-1]) if t[-1] > t[0] else float(t[0]) + 1.0

    left, top = _MARGIN["left"], _MARGIN["top"]
    pw = SVG_WIDTH - left - _MARGIN["right"]
    ph = SVG_HEIGHT - top - _MARGIN["bottom"]

    def sx(v: float) -> float:
        return left + (v - x_lo) / (x_hi - x_lo) * pw

    def sy(v: float) -> float:
        return top + (y_hi - v) / (y_hi - y_lo) * ph

    def points(ydata: np.ndarray) -> str:
        return " ".join(f"{sx(a):.2f},{sy(b):.2f}" for a, b in zip(t, ydata))

    title = _PATH_TITLES.get(path.kind, path.kind)
    labels = list(x_labels) if x_labels is not None else [int(v) for v in path.t]
    if len(labels) != t.size:
        raise ValueError("x_labels must have one entry per path point")
    xlabel = "Year" if x_labels is not None else "Observation"

    el = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SVG_WIDTH}" height="{SVG_HEIGHT}" '
        f'viewBox="0 0 {SVG_WIDTH} {SVG_HEIGHT}" font-family="sans-serif" font-size="12">',
        f"<title>{title}</title>",
        f'<rect x="0" y="0" width="{SVG_WIDTH}" height="{SVG_HEIGHT}" fill="white"/>',
        f'<text x="{SVG_WIDTH / 2:.2f}" y="22" text-anchor="middle" font-size="15">{title}</text>',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black" stroke-width="1"/>',
    ]
    for v in _nice_ticks(y_lo, y_hi):
        y = sy(v)
        el.append(f'<line x1="{left - 5}" y1="{y:.2f}" x2="{left}" y2="{y:.2f}" stroke="black"/>')
        el.append(f'<text x="{left - 8}" y="{y + 4:.2f}" text-anchor="end">{v:g}</text>')
    if y_lo < 0 < y_hi:
        el.append(f'<line x1="{left}" y1="{sy(0):.2f}" x2="{left + pw}" y2="{sy(0):.2f}" stroke="#bbbbbb" stroke-width="1"/>')
    step = max(1, math.ceil(t.size / 8))
    for i in range(0, t.size, step):
        x = sx(t[i])
        el.append(f'<line x1="{x:.2f}" y1="{top + ph}" x2="{x:.2f}" y2="{top + ph + 5}" stroke="black"/>')
        el.append(f'<text x="{x:.2f}" y="{top + ph + 18}" text-anchor="middle">{labels[i]}</text>')
    el += [
        f'<text x="{left + pw / 2:.2f}" y="{top + ph + 38}" text-anchor="middle">{xlabel}</text>',
        f'<text x="18" y="{top + ph / 2:.2f}" text-anchor="middle" transform="rotate(-90 18 {top + ph / 2:.2f})">{title}</text>',
        f'<polyline class="bound" points="{points(path.lower)}" fill="none" stroke="#c0392b" stroke-width="1.2" stroke-dasharray="6,4"/>',
        f'<polyline class="bound" points="{points(path.upper)}" fill="none" stroke="#c0392b" stroke-width="1.2" stroke-dasharray="6,4"/>',
        f'<polyline class="path" points="{points(path.path)}" fill="none" stroke="#1f4e9a" stroke-width="2"/>',
        f'<text x="{left + pw / 2:.2f}" y="{SVG_HEIGHT - 12}" text-anchor="middle">'
        f"Dashed lines: 5% significance bounds. Verdict: {_verdict_text(path)}.</text>",
        "</svg>",
    ]
    doc = "\n".join(el) + "\n"
    if out is not None:
        Path(out).write_text(doc, encoding="utf-8")
    return doc


# --------------------------------------------------------------------------- JSON


def dumps(document: dict) -> str:
    """Deterministic JSON text (insertion order, full float precision, no NaN)."""
    return json.dumps(document, indent=2, ensure_ascii=False, allow_nan=False) + "\n"
