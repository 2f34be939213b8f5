"""End-to-end analysis: unit roots, bounds test, ARDL/ECM, robustness, causality, diagnostics.

Configuration is one JSON document; every key is optional::

    {
      "data": "path/to/file.csv",          # null: bundled sample_usa.csv
      "columns": {"CO2": "CO2", ...},      # CSV column -> variable; null: all columns
      "log": ["CO2", "GDP", ...],          # variables to log as "L" + name; true: all, false: none
      "dependent": "LCO2",
      "regressors": ["LGDP", "LAI", "LENU", "LFDI", "LURB"],
      "max_lags_ardl": 2,
      "max_lags_granger": 4,
      "granger_lags": "auto",              # or an integer
      "criterion": "aic",                  # aic | bic | hq
      "bounds_table": "general",           # general | paper-table4
      "significance": 0.05,                # 0.01 | 0.025 | 0.05 | 0.10
      "lm_order": 2,
      "dols_leads_lags": 1,
      "bandwidth": null,                   # Bartlett bandwidth; null: automatic
      "force": false,                      # estimate the ECM without a cointegration verdict
      "seed": 0,
      "output_dir": null                   # null: $ARDLKIT_OUTPUT_DIR or ./ardlkit-output
    }
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
import os
import shutil
import tempfile
import warnings
from collections.abc import Mapping
from dataclasses import dataclass, field
from pathlib import Path

from ardlkit import __version__, report
from ardlkit.ardl import EcmFit, bounds_f_test, check_integration, fit_ardl, fit_ecm, search_orders
from ardlkit.causality import granger_matrix
from ardlkit.coint import METHODS, coint_fit
from ardlkit.dataio import Dataset, ModelSpec, load_dataset, log_all, sample_data_path, summary_stats
from ardlkit.diagnostics import diagnostic_report, stability_path
from ardlkit.errors import ArdlkitError, ConfigError, IntegrationOrderError, NotCointegratedError
from ardlkit.unitroot import classify_integration

OUTPUT_ENV = "ARDLKIT_OUTPUT_DIR"
DEFAULT_OUTPUT = "ardlkit-output"
SAMPLE_COLUMNS = ("CO2", "GDP", "AI", "ENU", "FDI", "URB")
MANIFEST = (
    "summary.md",
    "unitroot.md",
    "bounds.md",
    "estimate.md",
    "robustness.md",
    "granger.md",
    "diagnostics.md",
    "cusum.svg",
    "cusumsq.svg",
    "report.json",
)
LEVEL_LABELS = {0.01: "1%", 0.025: "2.5%", 0.05: "5%", 0.1: "10%"}


@dataclass(frozen=True)
class PipelineConfig:
    data: str | None = None
    columns: dict[str, str] | None = None
    log: bool | tuple[str, ...] = SAMPLE_COLUMNS
    dependent: str = "LCO2"
    regressors: tuple[str, ...] = ("LGDP", "LAI", "LENU", "LFDI", "LURB")
    max_lags_ardl: int = 2
    max_lags_granger: int = 4
    granger_lags: int | str = "auto"
    criterion: str = "aic"
    bounds_table: str = "general"
    significance: float = 0.05
    lm_order: int = 2
    dols_leads_lags: int = 1
    bandwidth: int | None = None
    force: bool = False
    seed: int = 0
    output_dir: str | None = None

    def __post_init__(self) -> None:
        if isinstance(self.log, list):
            object.__setattr__(self, "log", tuple(self.log))
        object.__setattr__(self, "regressors", tuple(self.regressors))
        if self.dependent in self.regressors:
            raise ConfigError(f"dependent variable {self.dependent!r} is also listed as a regressor")
        if not self.regressors:
            raise ConfigError("at least one regressor is required")
        if self.criterion not in ("aic", "bic", "hq"):
            raise ConfigError(f"criterion must be aic, bic or hq, not {self.criterion!r}")
        if self.bounds_table not in ("general", "paper-table4"):
            raise ConfigError(f"bounds_table must be 'general' or 'paper-table4', not {self.bounds_table!r}")
        if self.level_label is None:
            raise ConfigError(f"significance must be one of {sorted(LEVEL_LABELS)}, not {self.significance!r}")
        if self.granger_lags != "auto" and (not isinstance(self.granger_lags, int) or self.granger_lags < 1):
            raise ConfigError("granger_lags must be 'auto' or a positive integer")
        for name in ("max_lags_ardl", "max_lags_granger", "lm_order"):
            if int(getattr(self, name)) < 1:
                raise ConfigError(f"{name} must be >= 1")
        if self.dols_leads_lags < 0:
            raise ConfigError("dols_leads_lags must be >= 0")
        if self.data is not None and not Path(self.data).is_file():
            raise ConfigError(f"data file not found: {self.data}")

    @property
    def level_label(self) -> str | None:
        for value, label in LEVEL_LABELS.items():
            if abs(self.significance - value) < 1e-12:
                return label
        return None

    @property
    def spec(self) -> ModelSpec:
        return ModelSpec(self.dependent, self.regressors)

    def data_path(self) -> Path:
        return Path(self.data) if self.data is not None else sample_data_path()

    def resolved_output_dir(self) -> Path:
        return Path(self.output_dir or os.environ.get(OUTPUT_ENV) or DEFAULT_OUTPUT)

    def replace(self, **changes) -> PipelineConfig:
        return dataclasses.replace(self, **{k: v for k, v in changes.items() if v is not None})

    def to_dict(self) -> dict:
        """Settings that affect results (paths excluded so outputs do not depend on them)."""
        out = dataclasses.asdict(self)
        out.pop("output_dir")
        out.pop("data")
        out["log"] = self.log if isinstance(self.log, bool) else list(self.log)
        out["regressors"] = list(self.regressors)
        return out


def load_config(source: str | Path | Mapping | None = None, **overrides) -> PipelineConfig:
    """Build a config from a JSON file path or mapping, then apply non-None overrides."""
    if source is None:
        raw: dict = {}
    elif isinstance(source, Mapping):
        raw = dict(source)
    else:
        try:
            raw = json.loads(Path(source).read_text(encoding="utf-8"))
        except FileNotFoundError:
            raise ConfigError(f"config file not found: {source}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file {source} is not valid JSON: {exc}") from None
        if not isinstance(raw, dict):
            raise ConfigError("config must be a JSON object")
        if raw.get("data") and not Path(raw["data"]).is_absolute():
            raw["data"] = str(Path(source).parent / raw["data"])
    known = {f.name for f in dataclasses.fields(PipelineConfig)}
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ConfigError(f"unknown config key(s): {', '.join(unknown)}")
    raw.update({k: v for k, v in overrides.items() if v is not None})
    return PipelineConfig(**raw)


class StageError(ArdlkitError):
    """A pipeline stage failed; carries the stage name and a remediation hint."""

    def __init__(self, stage: str, message: str, hint: str = ""):
        self.stage = stage
        self.hint = hint
        text = f"[{stage}] {message}"
        if hint:
            text += f"\n  hint: {hint}"
        super().__init__(text)


_HINTS = {
    "data": "check the CSV file (first column 'year', consecutive years, numeric cells) and the column mapping",
    "unitroot": "the series may be too short for the lag search; shorten max lags or supply more years",
    "bounds": "reduce max_lags_ardl or the number of regressors for short samples",
    "estimate": "rerun with --force to estimate the error-correction model anyway",
    "robustness": "reduce dols_leads_lags or set a smaller bandwidth",
    "granger": "use a smaller --lags value",
    "diagnostics": "the ARDL model may be too large for the sample",
}


@dataclass
class PipelineResult:
    config: PipelineConfig
    data: Dataset
    data_sha256: str
    summary: object = None
    integration: list = field(default_factory=list)
    order_search: list = field(default_factory=list)
    bounds: object = None
    ecm: EcmFit | None = None
    robustness: list = field(default_factory=list)
    granger: list = field(default_factory=list)
    diagnostics: object = None
    stability: list = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)


class _Stage:
    def __init__(self, name: str):
        self.name = name

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc is None or isinstance(exc, StageError):
            return False
        if isinstance(exc, (ArdlkitError, ValueError, OSError)):
            raise StageError(self.name, str(exc), _HINTS.get(self.name, "")) from exc
        return False


def load_data(config: PipelineConfig) -> tuple[Dataset, str]:
    with _Stage("data"):
        raw = config.data_path().read_bytes()
        d = load_dataset(raw.decode("utf-8"), config.columns)
        if config.log is True:
            d = log_all(d)
        elif config.log:
            d = log_all(d, config.log)
        wanted = (config.dependent, *config.regressors)
        missing = [v for v in wanted if v not in d]
        if missing:
            raise ConfigError(
                f"model variable(s) not in the data: {', '.join(missing)} (available: {', '.join(d.names)})"
            )
        return d.select(wanted), hashlib.sha256(raw).hexdigest()


def run_stages(config: PipelineConfig, until: str | None = None) -> PipelineResult:
    """Run the analysis in order, stopping after stage ``until`` if given."""
    d, digest = load_data(config)
    res = PipelineResult(config, d, digest)
    spec = config.spec
    res.summary = summary_stats(d)
    if until == "summary":
        return res

    with _Stage("unitroot"):
        res.integration = classify_integration(d)
        try:
            check_integration(res.integration)
        except IntegrationOrderError as exc:
            raise StageError("unitroot", str(exc), "difference the offending series or drop it; ARDL needs I(0)/I(1) inputs") from exc
    if until == "unitroot":
        return res

    with _Stage("bounds"):
        res.order_search = search_orders(d, spec, config.max_lags_ardl, config.max_lags_ardl, config.criterion)
        order = res.order_search[0].order
        res.bounds = bounds_f_test(fit_ardl(d, spec, order), table=config.bounds_table)
    if until == "bounds":
        return res

    with _Stage("estimate"):
        try:
            res.ecm = fit_ecm(
                d, spec, order, force=config.force, level=config.level_label, table=config.bounds_table
            )
        except NotCointegratedError as exc:
            raise StageError("estimate", str(exc), _HINTS["estimate"]) from exc
        if config.force and res.bounds.decision.get(config.level_label) != "cointegrated":
            res.warnings.append(
                f"error-correction model estimated without a cointegration verdict at {config.level_label} (forced)"
            )
    if until == "estimate":
        return res

    with _Stage("robustness"):
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            res.robustness = [
                coint_fit(
                    d, spec, m, bandwidth=config.bandwidth, leads_lags=config.dols_leads_lags,
                    integration=res.integration, force=True,
                )
                for m in METHODS
            ]
        for w in caught:
            msg = str(w.message)
            if msg not in res.warnings:
                res.warnings.append(msg)
    if until == "robustness":
        return res

    with _Stage("granger"):
        res.granger = granger_matrix(
            d, config.dependent, config.granger_lags, config.max_lags_granger, causes=config.regressors
        )
    if until == "granger":
        return res

    with _Stage("diagnostics"):
        afit = res.ecm.ardl
        res.diagnostics = diagnostic_report(afit.levels_fit, afit.design, config.lm_order)
        res.stability = [stability_path(afit.design, kind) for kind in ("cusum", "cusumsq")]
    return res


def report_document(res: PipelineResult) -> dict:
    doc: dict = {
        "ardlkit_version": __version__,
        "config": res.config.to_dict(),
        "data": {
            "sha256": res.data_sha256,
            "variables": res.data.names,
            "start_year": res.data.start_year,
            "end_year": res.data.end_year,
            "obs": len(res.data),
        },
        "summary": report.summary_json(res.summary),
    }
    if res.integration:
        doc["unitroot"] = report.unitroot_json(res.integration)
    if res.bounds is not None:
        doc["order_selection"] = [
            {"order": c.order.label(), "criterion": report._num(c.criterion)} for c in res.order_search[:10]
        ]
        doc["bounds"] = report.bounds_json(res.bounds)
    if res.ecm is not None:
        doc["estimate"] = report.estimate_json(res.ecm)
    if res.robustness:
        doc["robustness"] = report.robustness_json(res.robustness)
    if res.granger:
        doc["granger"] = report.granger_json(res.granger)
    if res.diagnostics is not None:
        doc["diagnostics"] = report.diagnostics_json(res.diagnostics, res.stability)
    doc["warnings"] = list(res.warnings)
    return doc


def stability_years(res: PipelineResult) -> list[int]:
    years = res.ecm.ardl.years
    return [int(years[t - 1]) for t in res.stability[0].t]


def render_all(res: PipelineResult) -> dict[str, str]:
    """File name -> content for the full manifest."""
    labels = stability_years(res)
    files = {
        "summary.md": report.render_summary(res.summary, res.data),
        "unitroot.md": report.render_unitroot(res.integration),
        "bounds.md": report.render_bounds(res.bounds),
        "estimate.md": report.render_estimate(res.ecm),
        "robustness.md": report.render_robustness(res.robustness),
        "granger.md": report.render_granger(res.granger),
        "diagnostics.md": report.render_diagnostics(res.diagnostics, res.stability),
        "cusum.svg": report.render_cusum_svg(res.stability[0], x_labels=labels),
        "cusumsq.svg": report.render_cusum_svg(res.stability[1], x_labels=labels),
        "report.json": report.dumps(report_document(res)),
    }
    assert tuple(files) == MANIFEST
    return files


def write_atomic(files: Mapping[str, str], target: Path, overwrite: bool = False) -> Path:
    """Write every file into ``target`` or nothing at all.

    Files go to a sibling temporary directory that is renamed into place once
    complete; on any failure the temporary directory is removed.
    """
    target = Path(target)
    if target.exists() and any(target.iterdir()) and not overwrite:
        raise StageError("output", f"output directory {target} is not empty", "choose another --out-dir or pass --overwrite")
    target.parent.mkdir(parents=True, exist_ok=True)
    tmp = Path(tempfile.mkdtemp(prefix=f".{target.name}.tmp-", dir=target.parent))
    try:
        for name, content in files.items():
            (tmp / name).write_text(content, encoding="utf-8")
        if target.exists():
            backup = target.with_name(f".{target.name}.old-{os.getpid()}")
            target.rename(backup)
            tmp.rename(target)
            shutil.rmtree(backup, ignore_errors=True)
        else:
            tmp.rename(target)
    except BaseException:
        shutil.rmtree(tmp, ignore_errors=True)
        raise
    return target


def run_pipeline(config: PipelineConfig, overwrite: bool = False) -> Path:
    """Run every stage and write the full manifest to the output directory."""
    res = run_stages(config)
    files = render_all(res)
    return write_atomic(files, config.resolved_output_dir(), overwrite)
