#!/usr/bin/env python3
"""Render the five curve-lift tilings to SVG files."""
import argparse
import pathlib
import sys

from orbiflow import cli
from orbiflow.trigroup import CASES


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="tilings")
    parser.add_argument("--depth", type=int, default=5)
    args = parser.parse_args()
    out_dir = pathlib.Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for case in CASES:
        path = out_dir / f"tiling_{case}.svg"
        rc = cli.main(["tiling", "--case", str(case), "--depth",
                       str(args.depth), "--out", str(path)])
        if rc != 0:
            return rc
    return 0


if __name__ == "__main__":
    sys.exit(main())
