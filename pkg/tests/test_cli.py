import json
import re

import numpy as np
import pytest

from ardlkit import pipeline
from ardlkit.cli import main
from ardlkit.dataio import Dataset, dataset_to_csv, read_dataset, sample_data_path
from ardlkit.errors import ConfigError


@pytest.fixture(scope="module")
def run_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("runs") / "a"
    assert main(["run", "--out-dir", str(out)]) == 0
    return out


def _numbers(text):
    return re.findall(r"(?<![\w(])-?\d+\.\d+", text)


def _json_floats(doc):
    if isinstance(doc, dict):
        for v in doc.values():
            yield from _json_floats(v)
    elif isinstance(doc, list):
        for v in doc:
            yield from _json_floats(v)
    elif isinstance(doc, float):
        yield doc


class TestRun:
    def test_manifest(self, run_dir):
        assert sorted(p.name for p in run_dir.iterdir()) == sorted(pipeline.MANIFEST)

    def test_byte_identical_rerun(self, run_dir, tmp_path):
        assert main(["run", "--out-dir", str(tmp_path / "b")]) == 0
        for name in pipeline.MANIFEST:
            assert (tmp_path / "b" / name).read_bytes() == (run_dir / name).read_bytes(), name

    def test_report_json_sections(self, run_dir):
        doc = json.loads((run_dir / "report.json").read_text())
        for key in ("config", "data", "summary", "unitroot", "bounds", "estimate", "robustness", "granger", "diagnostics"):
            assert key in doc
        assert doc["data"]["obs"] == 32
        assert len(doc["granger"]) == 10

    @pytest.mark.parametrize("name, digits", [("estimate.md", 3), ("robustness.md", 3), ("granger.md", 4), ("diagnostics.md", 4)])
    def test_markdown_numbers_come_from_json(self, run_dir, name, digits):
        doc = json.loads((run_dir / "report.json").read_text())
        pool = set()
        for f in _json_floats(doc):
            for d in (3, 4):
                pool.add(f"{f:.{d}f}")
                pool.add(f"{f:.{d}f}".lstrip("-"))
        text = (run_dir / name).read_text()
        table = "\n".join(ln for ln in text.splitlines() if ln.startswith("|"))
        for token in _numbers(table):
            assert token in pool, (name, token)

    def test_legend_in_tables(self, run_dir):
        for name in ("estimate.md", "robustness.md", "unitroot.md"):
            assert "*** p<0.01, ** p<0.05, * p<0.1" in (run_dir / name).read_text()

    def test_svgs(self, run_dir):
        for name in ("cusum.svg", "cusumsq.svg"):
            text = (run_dir / name).read_text()
            assert text.startswith("<?xml") and 'version="1.1"' in text
            assert "Year" in text

    def test_refuses_non_empty_dir(self, run_dir, capsys):
        assert main(["run", "--out-dir", str(run_dir)]) == 1
        assert "--overwrite" in capsys.readouterr().err

    def test_overwrite(self, tmp_path):
        target = tmp_path / "c"
        target.mkdir()
        (target / "stale.txt").write_text("x")
        assert main(["run", "--out-dir", str(target), "--overwrite"]) == 0
        assert not (target / "stale.txt").exists()

    def test_env_output_dir(self, tmp_path, monkeypatch):
        monkeypatch.setenv(pipeline.OUTPUT_ENV, str(tmp_path / "env"))
        assert main(["stability"]) == 0
        assert (tmp_path / "env" / "cusum.svg").exists()


class TestConfig:
    def test_dependent_among_regressors(self, capsys):
        assert main(["bounds", "--regressors", "LGDP,LCO2"]) == 2
        assert "configuration error" in capsys.readouterr().err

    def test_unknown_key(self, tmp_path):
        cfg = tmp_path / "c.json"
        cfg.write_text(json.dumps({"dependant": "LCO2"}))
        assert main(["validate", "--config", str(cfg)]) == 2

    def test_relative_data_path(self, tmp_path):
        (tmp_path / "d.csv").write_bytes(sample_data_path().read_bytes())
        cfg = tmp_path / "c.json"
        cfg.write_text(json.dumps({"data": "d.csv"}))
        assert pipeline.load_config(cfg).data_path() == tmp_path / "d.csv"

    def test_config_validation(self):
        with pytest.raises(ConfigError):
            pipeline.load_config({"significance": 0.07})
        with pytest.raises(ConfigError):
            pipeline.load_config({"granger_lags": 0})

    def test_missing_variable(self):
        assert main(["summary", "--regressors", "LGDP,LXYZ"]) == 2

    def test_lags_zero_is_usage_error(self):
        with pytest.raises(SystemExit) as info:
            main(["granger", "--lags", "0"])
        assert info.value.code == 2


class TestStages:
    def test_validate(self, capsys):
        assert main(["validate"]) == 0
        assert "32 observations 1990-2021" in capsys.readouterr().out

    def test_paper_table4_bounds(self, capsys):
        assert main(["bounds", "--bounds", "paper-table4"]) == 0
        out = capsys.readouterr().out
        assert "| 1% | 3.10 | 4.20 |" in out
        assert "paper-table4" in out

    def test_json_to_stdout(self, capsys):
        assert main(["granger", "--lags", "2", "--json", "-"]) == 0
        out = capsys.readouterr().out
        doc = json.loads(out[out.index("\n[") + 1 :])
        assert all(r["lags"] == 2 for r in doc)

    def test_unitroot_grid(self, capsys):
        assert main(["unitroot"]) == 0
        out = capsys.readouterr().out
        assert "| Variables | ADF I(0) | ADF I(1) | P-P I(0) | P-P I(1) | DF-GLS I(0) | DF-GLS I(1) | Decision |" in out

    def test_i2_halts_with_stage_name(self, tmp_path, capsys):
        rng = np.random.default_rng(0)
        d = read_dataset(sample_data_path())
        cols = {n: d.array(n) for n in d.names}
        cols["AI"] = np.exp(np.cumsum(np.cumsum(rng.standard_normal(len(d)) * 0.05)) * 0.1 + 5)
        path = tmp_path / "i2.csv"
        path.write_text(dataset_to_csv(Dataset.from_arrays(cols, start_year=d.start_year)))
        code = main(["run", "--data", str(path), "--out-dir", str(tmp_path / "o")])
        err = capsys.readouterr().err
        if code == 0:
            pytest.skip("draw not classified I(2)")
        assert code == 1
        assert "[unitroot]" in err
        assert not (tmp_path / "o").exists()


class TestAtomicWrite:
    def test_failure_leaves_nothing(self, tmp_path):
        files = {"a.md": "ok", "b.md": None}
        with pytest.raises(TypeError):
            pipeline.write_atomic(files, tmp_path / "out")
        assert list(tmp_path.iterdir()) == []


class TestMc:
    def test_mc_json(self, capsys):
        assert main(["mc", "jb-size", "--reps", "100", "--T", "50", "--seed", "3"]) == 0
        cap = capsys.readouterr()
        doc = json.loads(cap.out)
        assert doc["experiment"] == "jb-size"
        assert doc["replications"] == 100 and doc["seed"] == 3
        assert 0 <= doc["value"] <= 1
        assert "rejection_rate" in cap.err

    def test_mc_deterministic_across_workers(self, capsys):
        main(["mc", "cusum-size", "--reps", "100", "--T", "40", "--workers", "2"])
        a = json.loads(capsys.readouterr().out)
        main(["mc", "cusum-size", "--reps", "100", "--T", "40"])
        b = json.loads(capsys.readouterr().out)
        assert a["value"] == b["value"]

    def test_mc_reps_floor(self):
        assert main(["mc", "adf-size", "--reps", "50"]) == 2
