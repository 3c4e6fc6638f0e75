#!/usr/bin/env python3
"""Full verification sweep: every property suite at dims 2..5.

Writes the JSON manifest to results/verify.json and exits nonzero if any
check fails.  Takes a couple of minutes less than a coffee.
"""

import sys
from pathlib import Path

from measerr.cli import main

RESULTS = Path(__file__).resolve().parent.parent / "results"


if __name__ == "__main__":
    RESULTS.mkdir(exist_ok=True)
    code = main([
        "verify",
        "--dims", "2,3,4,5",
        "--n", "1000",
        "--seed", "20240811",
        "--json", str(RESULTS / "verify.json"),
    ])
    print(f"manifest written to {RESULTS / 'verify.json'}")
    sys.exit(code)
