#!/usr/bin/env python3
"""Run both numerical verification suites and write the JSON report.

Exit code 0 means every quadrature case matched its closed form within
tolerance and the samplers behaved; 3 means at least one case failed.

Usage: python scripts/run_verification.py [OUT_DIR] [SEED]
"""

import sys

from qtiming.cli import main

if __name__ == "__main__":
    out_dir = sys.argv[1] if len(sys.argv) > 1 else "."
    seed = sys.argv[2] if len(sys.argv) > 2 else "42"
    raise SystemExit(main(["verify", "--suite", "all", "--seed", seed, "--out-dir", out_dir]))
