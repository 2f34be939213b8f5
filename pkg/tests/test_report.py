import json
import math
import xml.etree.ElementTree as ET
from pathlib import Path
from types import SimpleNamespace

import numpy as np
import pytest

from ardlkit import report
from ardlkit.ardl import ArdlOrder, LongRunResult, bounds_decision
from ardlkit.causality import GrangerResult
from ardlkit.coint import CointFit
from ardlkit.diagnostics import DiagnosticReport, StabilityPath
from ardlkit.diagnostics import TestStatistic as Stat

DATA = Path(__file__).parent / "data"
SVG_NS = "{http://www.w3.org/2000/svg}"


def _fixture_path(kind="cusum", k=2, n=32):
    t = np.arange(k + 1, n + 1)
    step = (t - k).astype(float)
    r = n - k
    path = np.sin(step / 3.0) * 2.0
    half = 0.948 * (math.sqrt(r) + 2 * step / math.sqrt(r))
    return StabilityPath(kind, k + 1, t, path, -half, half)


class TestFormatting:
    @pytest.mark.parametrize(
        "p, expect", [(0.0099, "***"), (0.01, "**"), (0.049, "**"), (0.05, "*"), (0.0999, "*"), (0.1, ""), (float("nan"), "")]
    )
    def test_stars(self, p, expect):
        assert report.stars(p) == expect

    def test_rounding(self):
        assert report.coef(0.6174) == "0.617"
        assert report.pval(0.43214) == "0.4321"
        assert report.coef(-0.0001) == "0.000"
        assert report.coef(float("inf")) == "NA"

    def test_legend(self):
        assert report.LEGEND == "*** p<0.01, ** p<0.05, * p<0.1"

    def test_dumps_rejects_nan(self):
        with pytest.raises(ValueError):
            report.dumps({"x": float("nan")})
        assert report.dumps({"b": 1, "a": 0.1}) == '{\n  "b": 1,\n  "a": 0.1\n}\n'


class TestTables:
    def test_bounds_layout_table4(self):
        text = report.render_bounds(bounds_decision(5.3421, 5, table="paper-table4"))
        lines = [ln for ln in text.splitlines() if ln.startswith("|")]
        assert lines[0] == "| Test Statistic | Value | Signif. | I(0) | I(1) |"
        assert lines[2] == "| F-statistic | 5.3421 | 10% | 2.07 | 3.00 |"
        assert lines[3] == "| k | 5 | 5% | 2.43 | 3.27 |"
        assert lines[4] == "|  |  | 2.5% | 2.81 | 3.84 |"
        assert lines[5] == "|  |  | 1% | 3.10 | 4.20 |"
        assert "Cointegrated at the 1% level" in text

    def test_estimate_layout_fixture(self):
        lr_names = ("LGDP", "LAI", "LENU", "LFDI", "LURBA", "C")
        lr = LongRunResult(lr_names, np.array([0.028, -0.054, 0.617, 0.018, 0.710, 10.872]),
                           np.array([0.010, 0.020, 0.100, 0.008, 0.200, 2.000]), 20)
        sr = SimpleNamespace(
            names=("D(LGDP)", "CointEq(-1)"),
            coefficients=np.array([0.1, -0.398]),
            standard_errors=np.array([0.05, 0.08]),
            t_statistics=np.array([2.0, -4.975]),
            p_values=np.array([0.059, 0.0001]),
        )
        ardl = SimpleNamespace(order=ArdlOrder(1, (1, 0, 0, 1, 0)), effective_sample=31, years=np.array([1991, 2021]))
        ecm = SimpleNamespace(long_run=lr, short_run=sr, ardl=ardl, ect_coefficient=-0.398, converged=True)
        text = report.render_estimate(ecm)
        assert "| LENU | 0.617*** |" in text
        assert "| LAI | -0.054** |" in text
        assert "| C | 10.872*** |" in text
        assert "| CointEq(-1)* | -0.398*** | 0.0800 | -4.9750 | 0.0001 |" in text
        assert text.index("Long-run Estimation") < text.index("Short-run Estimation")
        assert "| D(LGDP) | 0.100* |" in text

    def test_robustness_layout_fixture(self):
        def fit(method, b):
            return CointFit(method, ("const", "LGDP", "LAI"), np.array(b), np.array([1.0, 0.05, 0.05]), 31, 28, 3)

        fits = [fit("fmols", [10.342, 0.245, -0.034]), fit("dols", [10.052, 0.316, -0.010]), fit("ccr", [10.034, 0.217, -0.037])]
        lines = [ln for ln in report.render_robustness(fits).splitlines() if ln.startswith("|")]
        assert lines[0] == "| Variables | FMOLS | DOLS | CCR |"
        assert lines[2] == "| LGDP | 0.245*** | 0.316*** | 0.217*** |"
        assert lines[3] == "|  | (0.0500) | (0.0500) | (0.0500) |"
        assert lines[-2].startswith("| C | 10.342***")

    def test_granger_layout(self):
        rows = [GrangerResult("LGDP", "LCO2", 2, 30, 3.8423, 0.0102), GrangerResult("LCO2", "LGDP", 2, 30, 0.5, 0.61)]
        lines = [ln for ln in report.render_granger(rows).splitlines() if ln.startswith("|")]
        assert lines[0] == "| Null Hypothesis | Obs | F-Statistic | Prob. |"
        assert lines[2] == "| LGDP ≠ LCO2 | 30 | 3.8423 | 0.0102 |"
        assert lines[3] == "| LCO2 ≠ LGDP |  | 0.5000 | 0.6100 |"

    def test_empty_granger(self):
        text = report.render_granger([])
        assert "Granger" in text
        assert "No pairs configured." in text

    def test_diagnostics_layout(self):
        rep = DiagnosticReport(Stat(1.2034, 0.4321, 2), Stat(1.0982, 0.1021, 2), Stat(0.0452, 0.1283, 5))
        text = report.render_diagnostics(rep, [_fixture_path()])
        assert "| Jarque-Bera test | 1.2034 | 0.4321 | Residuals are normally distributed |" in text
        assert "No serial correlation exists" in text
        assert "No heteroscedasticity exists" in text
        assert "CUSUM: stable" in text


class TestSvg:
    def test_golden_file(self):
        doc = report.render_cusum_svg(_fixture_path(), x_labels=list(range(1993, 2023)))
        assert doc == (DATA / "cusum_fixture.svg").read_text(encoding="utf-8")

    def test_well_formed_with_parts(self):
        root = ET.fromstring(report.render_cusum_svg(_fixture_path()).split("\n", 1)[1])
        assert root.get("version") == "1.1"
        lines = root.findall(f"{SVG_NS}polyline")
        assert [ln.get("class") for ln in lines] == ["bound", "bound", "path"]
        assert all(ln.get("stroke-dasharray") for ln in lines[:2])
        texts = [t.text for t in root.iter(f"{SVG_NS}text")]
        assert "Observation" in texts
        assert any("5% significance bounds" in (t or "") for t in texts)

    def test_zero_path_stable(self):
        p = _fixture_path()
        zero = StabilityPath("cusum", p.start_index, p.t, np.zeros(p.t.size), p.lower, p.upper)
        doc = report.render_cusum_svg(zero)
        assert "Verdict: stable" in doc

    def test_break_path_unstable(self):
        p = _fixture_path()
        broken = StabilityPath("cusum", p.start_index, p.t, np.linspace(0, 40, p.t.size), p.lower, p.upper)
        assert "Verdict: unstable" in report.render_cusum_svg(broken)

    def test_writes_file(self, tmp_path):
        target = tmp_path / "c.svg"
        doc = report.render_cusum_svg(_fixture_path("cusumsq"), target)
        assert target.read_text(encoding="utf-8") == doc
        assert "CUSUM of Squares" in doc

    def test_empty_path(self):
        empty = np.array([])
        with pytest.raises(ValueError):
            report.render_cusum_svg(StabilityPath("cusum", 3, empty, empty, empty, empty))

    def test_label_count(self):
        with pytest.raises(ValueError):
            report.render_cusum_svg(_fixture_path(), x_labels=[1, 2])


def test_json_round_trip_precision():
    b = bounds_decision(5.342123456789, 5)
    back = json.loads(report.dumps(report.bounds_json(b)))
    assert back["f_statistic"] == 5.342123456789
