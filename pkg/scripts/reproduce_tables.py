#!/usr/bin/env python3
"""Recompute every reference table and verify against the shipped fixtures.

Writes CSVs under out/ (override with --out) and exits non-zero on the first
verification mismatch.
"""

import argparse
import sys

from catgen.cli import main as catgen_main


def run(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="out")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)
    common = ["--out", args.out, "--seed", str(args.seed), "--verify"]
    for command in ("table1", "entangled", "fock-scheme", "wigner"):
        print(f"== {command}")
        code = catgen_main([command, *common])
        if code != 0:
            return code
    return 0


if __name__ == "__main__":
    sys.exit(run())
