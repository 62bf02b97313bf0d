#!/usr/bin/env python3
"""Sweep the quantum and classical timing widths over photon number.

Runs the pinned parameter bundle (4 m of fused silica in path 1,
sigma_phi = 3.7e11 rad/s) and writes scan.csv with the dimensionless
columns sigma_phi*sigma_Q and sigma_phi*sigma_C; plot N against both on
log-log axes to see the quantum curve saturate at its dispersion asymptote
while the classical curve keeps falling like 1/sqrt(N).

Usage: python scripts/scan_photon_number.py [OUT_DIR]
"""

import sys

from qtiming.cli import main

if __name__ == "__main__":
    out_dir = sys.argv[1] if len(sys.argv) > 1 else "."
    raise SystemExit(main(["scan", "--preset", "fig2", "--out-dir", out_dir]))
