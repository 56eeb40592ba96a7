#!/usr/bin/env python3
"""Refinement study: Picard vs Euler agreement as the grid doubles, for
each catalog coefficient set with a diffusion part.

Writes one table per coefficient set under out/convergence/.
"""

import sys

from volterra_fbm.cli import main

if __name__ == "__main__":
    status = 0
    for coeffs in ("smooth-volterra", "bounded-growth"):
        status |= main([
            "convergence", "--coeffs", coeffs, "--n", "1024", "--H", "0.75",
            "--alpha", "0.3", "--seed", "7", "--out", f"out/convergence/{coeffs}",
        ])
    sys.exit(status)
