"""Command-line interface: ``ardlkit <subcommand> [options]``.

Every subcommand reads the same JSON configuration (``--config``) and accepts
flags that override individual fields. Markdown goes to stdout; ``--json PATH``
also writes the machine-readable document (``-`` for stdout). Exit status is 0
on success, 1 when an analysis stage fails and 2 for invalid configuration or
usage.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path

from ardlkit import __version__, montecarlo, pipeline, report
from ardlkit.errors import ArdlkitError, ConfigError

# name -> (dgp kind, dgp params, T, test, test options)
EXPERIMENTS: dict[str, tuple[str, dict, int, str, dict]] = {
    "adf-size": ("random_walk", {}, 200, "adf", {}),
    "pp-size": ("random_walk", {}, 200, "pp", {}),
    "dfgls-size": ("random_walk", {}, 200, "dfgls", {}),
    "adf-power": ("ar1", {"rho": 0.95}, 100, "adf", {}),
    "pp-power": ("ar1", {"rho": 0.95}, 100, "pp", {}),
    "dfgls-power": ("ar1", {"rho": 0.95}, 100, "dfgls", {}),
    "granger-size": ("var_causal", {"a": 0.0, "b": 0.0}, 200, "granger", {"lags": 2}),
    "granger-power": ("var_causal", {"a": 0.8, "b": 0.5}, 200, "granger", {"lags": 1}),
    "bounds-size": ("ecm", {"adjustment": 0.0, "beta": 0.0}, 100, "bounds", {}),
    "bounds-power": ("triangular_coint", {"beta": 2.0}, 200, "bounds", {}),
    "jb-size": ("hetero", {"x_link": 0.0}, 500, "jb", {}),
    "lm-size": ("hetero", {"x_link": 0.0}, 200, "lm", {}),
    "lm-power": ("ar1", {"rho": 0.6}, 200, "lm", {}),
    "bpg-size": ("hetero", {"x_link": 0.0}, 200, "bpg", {}),
    "bpg-power": ("hetero", {"x_link": 1.0}, 200, "bpg", {}),
    "cusum-size": ("break", {"magnitude": 0.0}, 100, "cusum", {}),
    "cusumsq-power": ("break", {"magnitude": 5.0}, 100, "cusumsq", {}),
}

STAGE_FOR = {
    "summary": "summary",
    "unitroot": "unitroot",
    "bounds": "bounds",
    "estimate": "estimate",
    "robustness": "robustness",
    "granger": "granger",
    "diagnose": None,
    "stability": None,
}


def _lags(text: str) -> int | str:
    if text == "auto":
        return "auto"
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("expected 'auto' or a positive integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError("lag order must be >= 1")
    return value


def _csv_list(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def _common(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("configuration")
    g.add_argument("--config", help="JSON configuration file")
    g.add_argument("--data", help="CSV input (default: bundled sample)")
    g.add_argument("--dependent", help="dependent variable")
    g.add_argument("--regressors", type=_csv_list, help="comma-separated regressors")
    g.add_argument("--max-lags", type=int, dest="max_lags_ardl", help="largest ARDL lag searched")
    g.add_argument("--criterion", choices=("aic", "bic", "hq"))
    g.add_argument("--bounds", choices=("general", "paper-table4"), dest="bounds_table", help="bounds critical-value table")
    g.add_argument("--significance", type=float, help="decision level: 0.01, 0.025, 0.05 or 0.10")
    g.add_argument("--lm-order", type=int, help="Breusch-Godfrey LM order")
    g.add_argument("--leads-lags", type=int, dest="dols_leads_lags", help="DOLS leads and lags")
    g.add_argument("--bandwidth", type=int, help="Bartlett bandwidth (default automatic)")
    g.add_argument("--force", action="store_true", default=None, help="estimate the ECM without a cointegration verdict")
    g.add_argument("--seed", type=int, help="seed recorded with the run")
    g.add_argument("--json", metavar="PATH", help="also write the JSON document ('-' for stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ardlkit", description="ARDL bounds-testing pipeline for annual time series.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    helps = {
        "validate": "check the configuration and data without estimating anything",
        "summary": "descriptive statistics",
        "unitroot": "ADF, PP and DF-GLS tests with integration-order decisions",
        "bounds": "ARDL order selection and the bounds F-test",
        "estimate": "long-run coefficients and the error-correction model",
        "robustness": "FMOLS, DOLS and CCR estimates",
        "granger": "pairwise Granger causality with the dependent variable",
        "diagnose": "Jarque-Bera, LM serial correlation and BPG heteroscedasticity tests",
        "stability": "CUSUM and CUSUM-of-squares figures",
        "run": "full pipeline, writing every table and figure",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, help=text, description=text)
        _common(p)
        if name == "granger":
            p.add_argument("--lags", type=_lags, dest="granger_lags", help="'auto' or a fixed lag order")
            p.add_argument("--max-granger-lags", type=int, dest="max_lags_granger", help="largest lag for 'auto'")
        if name in ("stability", "run"):
            p.add_argument("--out-dir", dest="output_dir", help="output directory (default $ARDLKIT_OUTPUT_DIR or ./ardlkit-output)")
        if name == "run":
            p.add_argument("--overwrite", action="store_true", help="replace a non-empty output directory")

    mc = sub.add_parser("mc", help="Monte Carlo size/power experiment", description="Monte Carlo size/power experiment")
    mc.add_argument("experiment", choices=sorted(EXPERIMENTS))
    mc.add_argument("--reps", type=int, default=1000)
    mc.add_argument("--seed", type=int, default=0)
    mc.add_argument("--T", type=int, dest="length", help="sample length override")
    mc.add_argument("--level", type=float, default=0.05)
    mc.add_argument("--workers", type=int, default=1)
    return parser


_OVERRIDES = (
    "data", "dependent", "regressors", "max_lags_ardl", "criterion", "bounds_table", "significance",
    "lm_order", "dols_leads_lags", "bandwidth", "force", "seed", "granger_lags", "max_lags_granger", "output_dir",
)


def _config(args) -> pipeline.PipelineConfig:
    overrides = {k: getattr(args, k, None) for k in _OVERRIDES}
    return pipeline.load_config(args.config, **overrides)


def _emit_json(target: str | None, document) -> None:
    if not target:
        return
    text = report.dumps(document)
    if target == "-":
        sys.stdout.write(text)
    else:
        Path(target).write_text(text, encoding="utf-8")


def _cmd_validate(args) -> int:
    cfg = _config(args)
    d, digest = pipeline.load_data(cfg)
    cfg.spec.check(d)
    print(f"config ok: {cfg.dependent} on {', '.join(cfg.regressors)}")
    print(f"data ok: {cfg.data_path().name}, {len(d)} observations {d.start_year}-{d.end_year}, sha256 {digest[:12]}")
    return 0


def _cmd_stage(args) -> int:
    cfg = _config(args)
    cmd = args.command
    res = pipeline.run_stages(cfg, until=STAGE_FOR[cmd])
    doc = pipeline.report_document(res)
    for w in res.warnings:
        print(f"warning: {w}", file=sys.stderr)
    if cmd == "summary":
        text, part = report.render_summary(res.summary, res.data), doc["summary"]
    elif cmd == "unitroot":
        text, part = report.render_unitroot(res.integration), doc["unitroot"]
    elif cmd == "bounds":
        text, part = report.render_bounds(res.bounds), {"order_selection": doc["order_selection"], "bounds": doc["bounds"]}
    elif cmd == "estimate":
        text, part = report.render_estimate(res.ecm), {"bounds": doc["bounds"], "estimate": doc["estimate"]}
    elif cmd == "robustness":
        text, part = report.render_robustness(res.robustness), doc["robustness"]
    elif cmd == "granger":
        text, part = report.render_granger(res.granger), doc.get("granger", [])
    elif cmd == "diagnose":
        text, part = report.render_diagnostics(res.diagnostics, res.stability), doc["diagnostics"]
    else:  # stability
        out = cfg.resolved_output_dir()
        out.mkdir(parents=True, exist_ok=True)
        labels = pipeline.stability_years(res)
        lines = []
        for p in res.stability:
            target = out / f"{p.kind}.svg"
            report.render_cusum_svg(p, target, x_labels=labels)
            lines.append(f"{target}: {p.verdict}")
        text, part = "\n".join(lines) + "\n", doc["diagnostics"]["stability"]
    sys.stdout.write(text)
    _emit_json(args.json, part)
    return 0


def _cmd_run(args) -> int:
    cfg = _config(args)
    out = pipeline.run_pipeline(cfg, overwrite=args.overwrite)
    for name in pipeline.MANIFEST:
        print(out / name)
    return 0


def _cmd_mc(args) -> int:
    kind, params, T, test, options = EXPERIMENTS[args.experiment]
    if args.reps < 100:
        raise ConfigError("--reps must be >= 100")
    dgp = montecarlo.DgpSpec(kind, T=args.length or T, seed=args.seed, params=params)
    rep = montecarlo.size_power_experiment(dgp, test, args.reps, level=args.level, workers=args.workers, **options)
    doc = rep.to_dict()
    doc["experiment"] = args.experiment
    doc["dgp"] = {"kind": kind, "T": dgp.T, "params": params}
    print(json.dumps(doc, indent=2))
    print(rep.summary_line(), file=sys.stderr)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            if args.command == "validate":
                return _cmd_validate(args)
            if args.command == "run":
                return _cmd_run(args)
            if args.command == "mc":
                return _cmd_mc(args)
            return _cmd_stage(args)
    except ConfigError as exc:
        print(f"ardlkit: configuration error: {exc}", file=sys.stderr)
        return 2
    except pipeline.StageError as exc:
        if exc.__cause__ is not None and isinstance(exc.__cause__, ConfigError):
            print(f"ardlkit: configuration error: {exc}", file=sys.stderr)
            return 2
        print(f"ardlkit: {exc}", file=sys.stderr)
        return 1
    except (ArdlkitError, ValueError, OSError) as exc:
        print(f"ardlkit: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
