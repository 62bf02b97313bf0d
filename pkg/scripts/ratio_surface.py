#!/usr/bin/env python3
"""Grid the quantum/classical width ratio over photon number and distance.

Runs the pinned bundle (fused silica, beta = 250 fs^2/cm, x cm in each
path, sigma_phi = 3.7e11 rad/s) and writes surface.csv with both the
unity-clipped and raw ratio columns; the clipped region marks where the
entangled state is noisier than classical averaging.

Usage: python scripts/ratio_surface.py [OUT_DIR]
"""

import sys

from qtiming.cli import main

if __name__ == "__main__":
    out_dir = sys.argv[1] if len(sys.argv) > 1 else "."
    raise SystemExit(main(["surface", "--preset", "fig3", "--out-dir", out_dir]))
