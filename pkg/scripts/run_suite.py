#!/usr/bin/env python3
"""Run the full verification matrix and exit nonzero on any failure.

Equivalent to `ffmzv suite`; kept as a script entry point for environments
without the console script installed.
"""

import sys

from ffmzv.cli import main

if __name__ == "__main__":
    sys.exit(main(["suite", "--format", "text"] + sys.argv[1:]))
