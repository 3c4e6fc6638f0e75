#!/usr/bin/env python3
"""Sharpness scan of the two-outcome qubit family at the maximally mixed
state: error(Z) should follow sqrt(1 - eta^2) while the relation holds at
every grid point.  Output lands in results/unsharp_scan.csv."""

import sys
from pathlib import Path

from measerr.cli import main

RESULTS = Path(__file__).resolve().parent.parent / "results"


if __name__ == "__main__":
    RESULTS.mkdir(exist_ok=True)
    out = RESULTS / "unsharp_scan.csv"
    code = main(["scan", "--family", "unsharp", "--grid", "0:1:0.05", "--out", str(out)])
    print(f"scan written to {out}")
    sys.exit(code)
