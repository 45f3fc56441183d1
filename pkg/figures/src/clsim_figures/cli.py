"""Command line: clsim-figures render <figure-id> --data DIR --out DIR."""

from __future__ import annotations

import argparse
import sys

from . import FigureError, MissingArtifact, SchemaMismatch
from .catalog import figure_ids
from .render import render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clsim-figures",
        description="Render figures from clsim CSV artifacts",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    render_p = sub.add_parser("render", help="render one figure")
    render_p.add_argument("figure_id", choices=figure_ids() + ["all"])
    render_p.add_argument("--data", required=True, help="artifact directory")
    render_p.add_argument("--out", required=True, help="image output directory")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    targets = figure_ids() if args.figure_id == "all" else [args.figure_id]
    try:
        for fid in targets:
            path = render(fid, args.data, args.out)
            print(f"wrote {path}")
    except MissingArtifact as exc:
        print(f"missing artifact: {exc}", file=sys.stderr)
        return 2
    except SchemaMismatch as exc:
        print(f"schema mismatch: {exc}", file=sys.stderr)
        return 3
    except FigureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    return 0


if __name__ == "__main__":
    sys.exit(main())
