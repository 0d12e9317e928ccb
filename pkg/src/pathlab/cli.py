"""Command line front end.

Usage:
    pathlab <experiment> --config cfg.json [--seed N] [--out DIR]
    pathlab report --records 'out/*.run.json' [--out DIR]

Exit codes: 0 success, 2 configuration error, 3 numeric failure,
4 incomplete report.  The report subcommand is a pure function of the
run records it reads, so rerunning it over the same records produces
byte-identical output.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys

from ._io import write_csv, write_run_record
from .errors import NumericFailure, ResolutionError, UnsupportedProblem
from .experiments import RUNNERS, ConfigError, RunConfig, execute
from .report import build_report, collect_records

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_INCOMPLETE = 4

DEFAULT_SEED = 20250825

_CONFIG_KEYS = {"experiment", "seed", "params", "output_path"}


def _load_config(experiment: str, path: str | None, seed: int | None,
                 out: str | None) -> RunConfig:
    data = {}
    if path is not None:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config {path!r}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {path!r} is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config root must be a JSON object")
    for key in data:
        if key not in _CONFIG_KEYS:
            raise ConfigError(f"unknown config key: {key!r}")
    if "experiment" in data and data["experiment"] != experiment:
        raise ConfigError(
            f"config names experiment {data['experiment']!r}, "
            f"command line says {experiment!r}")
    params = data.get("params", {})
    if not isinstance(params, dict):
        raise ConfigError("params must be a JSON object")
    resolved_seed = seed if seed is not None else int(data.get("seed", DEFAULT_SEED))
    resolved_out = out if out is not None else str(data.get("output_path", "."))
    return RunConfig(experiment=experiment, seed=resolved_seed,
                     params=params, output_path=resolved_out)


def _run_experiment(args) -> int:
    try:
        config = _load_config(args.experiment, args.config, args.seed, args.out)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        header, rows, record = execute(config)
    except (ConfigError, UnsupportedProblem) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NumericFailure, ResolutionError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    os.makedirs(config.output_path, exist_ok=True)
    csv_path = os.path.join(config.output_path, f"{config.experiment}.csv")
    rec_path = os.path.join(config.output_path, f"{config.experiment}.run.json")
    write_csv(csv_path, header, rows)
    write_run_record(rec_path, record)
    print(f"{config.experiment}: wrote {csv_path} and {rec_path}")
    for key, val in record["summary"].items():
        print(f"  {key} = {val}")
    return EXIT_OK


def _run_report(args) -> int:
    paths = collect_records(args.records)
    report = build_report(paths)
    for line in report.lines():
        print(line)
    if args.out is not None:
        os.makedirs(args.out, exist_ok=True)
        payload = dataclasses.asdict(report)
        payload["all_passed"] = report.all_passed
        with open(os.path.join(args.out, "nogo_report.json"), "w",
                  encoding="utf-8", newline="\n") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
    if not report.complete:
        missing = [d.category for d in report.diagnostics if "no run record" in d.detail]
        print(f"incomplete: missing {', '.join(missing)}", file=sys.stderr)
        return EXIT_INCOMPLETE
    if not report.all_passed:
        return EXIT_NUMERIC
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pathlab",
        description="stochastic path representations and no-go diagnostics")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in RUNNERS:
        p = sub.add_parser(name, help=f"run the {name} experiment")
        p.add_argument("--config", default=None, help="JSON config file")
        p.add_argument("--seed", type=int, default=None,
                       help="override the config seed")
        p.add_argument("--out", default=None, help="output directory")
        p.set_defaults(experiment=name, func=_run_experiment)
    rep = sub.add_parser("report", help="aggregate no-go diagnostics")
    rep.add_argument("--records", required=True,
                     help="glob of run-record JSON files")
    rep.add_argument("--out", default=None,
                     help="also write nogo_report.json here")
    rep.set_defaults(func=_run_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
