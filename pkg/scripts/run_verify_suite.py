#!/usr/bin/env python3
"""Run the full inequality-verification suite and write the JSON
reports; exits nonzero on any failure (CI entry point).

Equivalent to `volterra-fbm verify` with default settings.
"""

import sys

from volterra_fbm.cli import main

if __name__ == "__main__":
    sys.exit(main(["verify", "--cases", "1000", "--seed", "20260301", "--out", "out/verify"]))
