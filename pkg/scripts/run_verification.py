#!/usr/bin/env python3
"""Run the full verification chain and save the JSON report."""
import argparse
import sys

from orbiflow import cli


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--case", default="all")
    parser.add_argument("--json", default="verification_report.json")
    parser.add_argument("--depth", type=int, default=None)
    args = parser.parse_args()
    argv = ["verify", "--case", args.case, "--json", args.json]
    if args.depth is not None:
        argv += ["--depth", str(args.depth)]
    return cli.main(argv)


if __name__ == "__main__":
    sys.exit(main())
