"""Command-line entry point.

Commands:
    transim run <scenario> [--config FILE] [--out DIR] [--seed N] [--json]
    transim list [--json]
    transim fit <op> --data FILE [--json]

Exit codes: 0 success, 1 scenario assertion failed, 2 unknown scenario
or fit operation, 3 bad configuration or unreadable data.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import fitkit as fk
from . import scenarios as sc

CONFIG_DIR_ENV = "TRANSIM_CONFIG_DIR"

_FIT_OPS = {
    "notch": (("freq_hz", "mag"), lambda x, y: fk.fit_lorentzian_notch(x, y)),
    "peak": (("x", "y"), lambda x, y: fk.fit_lorentzian_peak(x, y)),
    "recovery": (("rep_rate_hz", "noise_rel"), lambda x, y: fk.fit_exp_recovery(x, y)),
    "flux": (("current_a", "freq_hz"), lambda x, y: fk.fit_flux_tuning(x, y)),
    "linear": (("x", "y"), lambda x, y: fk.fit_linear(x, y)),
}


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="transim", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    pr = sub.add_parser("run", help="run a named scenario")
    pr.add_argument("scenario")
    pr.add_argument("--config", help="JSON config file (default: <scenario>.json "
                    f"under ${CONFIG_DIR_ENV} when set)")
    pr.add_argument("--out", default=".", help="output directory")
    pr.add_argument("--seed", type=int, help="override the RNG seed")
    pr.add_argument("--json", action="store_true", help="print the report as JSON")

    pl = sub.add_parser("list", help="list available scenarios")
    pl.add_argument("--json", action="store_true")

    pf = sub.add_parser("fit", help="fit a model to a two-column CSV")
    pf.add_argument("op", help="one of: " + ", ".join(sorted(_FIT_OPS)))
    pf.add_argument("--data", required=True, help="CSV with a header row")
    pf.add_argument("--json", action="store_true")
    return p


def _load_config(args) -> dict:
    path = args.config
    if path is None:
        cfg_dir = os.environ.get(CONFIG_DIR_ENV)
        if cfg_dir:
            candidate = Path(cfg_dir) / f"{args.scenario}.json"
            if candidate.exists():
                path = str(candidate)
    config = {}
    if path is not None:
        try:
            with open(path) as fh:
                config = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise SystemExit(_fail(f"cannot read config {path}: {exc}", 3))
        if not isinstance(config, dict):
            raise SystemExit(_fail(f"config {path} must be a JSON object", 3))
    if args.seed is not None:
        config["seed"] = args.seed
    return config


def _fail(msg: str, code: int) -> int:
    print(f"transim: {msg}", file=sys.stderr)
    return code


def _cmd_run(args) -> int:
    config = _load_config(args)
    try:
        report = sc.run(args.scenario, config, args.out)
    except sc.UnknownScenarioError:
        return _fail(
            f"unknown scenario {args.scenario!r} (see `transim list`)", 2
        )
    if args.json:
        print(
            json.dumps(
                {
                    "scenario": report.name,
                    "passed": report.passed,
                    "outputs": report.outputs,
                    "derived": report.derived,
                    "assertions": [
                        {
                            "quantity": a.quantity,
                            "expected": a.expected,
                            "actual": a.actual,
                            "tol": a.tol,
                            "provenance": a.provenance,
                            "passed": a.passed,
                        }
                        for a in report.assertions
                    ],
                },
                indent=2,
                default=float,
            )
        )
    else:
        for a in report.assertions:
            status = "ok" if a.passed else "FAIL"
            print(
                f"[{status}] {report.name}: {a.quantity} = {a.actual:.6g} "
                f"(expected {a.expected:.6g} +/- {a.tol:.2g}, {a.provenance})"
            )
        print(f"{report.name}: {'PASS' if report.passed else 'FAIL'}, "
              f"{len(report.outputs)} output file(s) in {args.out}")
    return 0 if report.passed else 1


def _cmd_list(args) -> int:
    items = [
        {"name": s.name, "description": s.description, "anchor": s.anchor}
        for s in sc.SCENARIOS.values()
    ]
    if args.json:
        print(json.dumps(items, indent=2))
    else:
        width = max(len(i["name"]) for i in items)
        for i in items:
            print(f"{i['name']:<{width}}  [{i['anchor']}]  {i['description']}")
    return 0


def _cmd_fit(args) -> int:
    if args.op not in _FIT_OPS:
        return _fail(f"unknown fit operation {args.op!r}", 2)
    columns, runner = _FIT_OPS[args.op]
    try:
        with open(args.data, newline="") as fh:
            rows = list(csv.DictReader(fh))
    except OSError as exc:
        return _fail(f"cannot read {args.data}: {exc}", 3)
    if not rows:
        return _fail(f"{args.data} has no data rows", 3)
    missing = [c for c in columns if c not in rows[0]]
    if missing:
        return _fail(
            f"{args.data} is missing column(s) {', '.join(missing)} "
            f"(required for {args.op}: {', '.join(columns)})",
            3,
        )
    try:
        x = np.array([float(r[columns[0]]) for r in rows])
        y = np.array([float(r[columns[1]]) for r in rows])
    except ValueError as exc:
        return _fail(f"non-numeric value in {args.data}: {exc}", 3)
    try:
        result = runner(x, y)
    except fk.FitError as exc:
        return _fail(f"fit failed: {exc}", 1)
    if args.json:
        print(result.to_json())
    else:
        for name, value in result.params.items():
            print(f"{name} = {value:.8g} +/- {result.sigmas.get(name, float('nan')):.3g}")
        print(f"converged={result.converged} iterations={result.n_iter} "
              f"residual_norm={result.residual_norm:.4g}"
              + (f" flags={','.join(result.flags)}" if result.flags else ""))
    return 0 if result.converged else 1


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handler = {"run": _cmd_run, "list": _cmd_list, "fit": _cmd_fit}[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
