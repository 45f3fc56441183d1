#!/usr/bin/env python3
"""Run every bundled preset and (optionally) render all figures.

Usage:
    python scripts/reproduce_all.py [--out OUT_DIR] [--figures FIG_DIR]

Writes all CSV/JSON artifacts to OUT_DIR (default: out/). If the clsim-figures
package is installed and --figures is given, renders every panel from the
artifacts afterwards.
"""

import argparse
import sys
import time

from clsim.cli import main as clsim_main
from clsim.presets import preset_names


def run(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="out")
    ap.add_argument("--figures", default=None,
                    help="also render figures into this directory")
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args(argv)

    for name in preset_names():
        t0 = time.time()
        code = clsim_main([
            "run", name, "--out", args.out,
            "--workers", str(args.workers), "--quiet",
        ])
        if code != 0:
            print(f"{name}: FAILED (exit {code})", file=sys.stderr)
            return code
        print(f"{name}: done in {time.time() - t0:.1f}s")

    if args.figures:
        try:
            from clsim_figures.cli import main as figures_main
            from clsim_figures.catalog import figure_ids
        except ImportError:
            print("clsim-figures not installed; skipping rendering",
                  file=sys.stderr)
            return 0
        for fid in figure_ids():
            code = figures_main([
                "render", fid, "--data", args.out, "--out", args.figures,
            ])
            if code != 0:
                print(f"{fid}: render FAILED (exit {code})", file=sys.stderr)
                return code
            print(f"{fid}: rendered")
    return 0


if __name__ == "__main__":
    sys.exit(run())
