#!/usr/bin/env python3
"""Indirect-model comparison sweep: the named controlled-flip scenario plus
random models on 2x2 and 3x2 systems, checking the five-term chain from the
rms error product down to the commutator-minus-cross-terms bound."""

import sys
from pathlib import Path

from measerr.cli import main

RESULTS = Path(__file__).resolve().parent.parent / "results"


if __name__ == "__main__":
    RESULTS.mkdir(exist_ok=True)
    code = main([
        "chain",
        "--dims", "2,3",
        "--ancilla", "2",
        "--n", "150",
        "--seed", "20240811",
        "--json", str(RESULTS / "chain.json"),
    ])
    sys.exit(code)
