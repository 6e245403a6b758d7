"""Command-line entry point.

    transim-plot <scenario> --in DIR --out DIR
    transim-plot --all --in DIR --out DIR

Exit codes: 0 success, 2 unknown scenario, 3 schema mismatch or missing
input files.
"""

from __future__ import annotations

import argparse
import sys

from . import registry
from .render import SchemaError, render


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="transim-plot", description=__doc__.splitlines()[0])
    p.add_argument("scenario", nargs="?", help="scenario name (or use --all)")
    p.add_argument("--all", action="store_true", dest="render_all",
                   help="render every scenario whose outputs are present")
    p.add_argument("--in", dest="in_dir", required=True, help="scenario output directory")
    p.add_argument("--out", dest="out_dir", required=True, help="image output directory")
    return p


def _render_scenario(name: str, in_dir: str, out_dir: str) -> list[str]:
    written = []
    for spec in registry.specs_for(name, in_dir, out_dir):
        written.append(render(spec))
    return written


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if bool(args.scenario) == bool(args.render_all):
        print("transim-plot: pass exactly one of <scenario> or --all", file=sys.stderr)
        return 2

    if args.render_all:
        names = [
            n for n in registry.BUILDERS
            if registry.primary_input(n, args.in_dir).exists()
        ]
        if not names:
            print(f"transim-plot: no scenario outputs found in {args.in_dir}",
                  file=sys.stderr)
            return 3
    else:
        if args.scenario not in registry.BUILDERS:
            known = ", ".join(sorted(registry.BUILDERS))
            print(f"transim-plot: unknown scenario {args.scenario!r} (known: {known})",
                  file=sys.stderr)
            return 2
        names = [args.scenario]

    for name in names:
        try:
            for path in _render_scenario(name, args.in_dir, args.out_dir):
                print(path)
        except SchemaError as exc:
            print(f"transim-plot: {name}: {exc}", file=sys.stderr)
            return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
