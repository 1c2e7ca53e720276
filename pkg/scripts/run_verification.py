#!/usr/bin/env python3
"""Run every verification suite with per-group timings.

Usage: python scripts/run_verification.py [--max-degree D]
"""

import argparse
import sys
import time

from qmink import cli as qcli
from qmink import lorentz as lz


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-degree", type=int, default=4)
    args = ap.parse_args()

    groups = [
        ("structure", lz.verify_structure),
        ("calculus", lambda: qcli.verify_calculus(args.max_degree)),
        ("waves", qcli.verify_waves),
    ]
    failed = 0
    for name, run in groups:
        t0 = time.time()
        results = run()
        dt = time.time() - t0
        print(f"== {name} ({dt:.2f} s)")
        for label, ok in results:
            print(("  PASS " if ok else "  FAIL ") + label)
            failed += not ok
    print(f"\n{failed} failure(s)")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
