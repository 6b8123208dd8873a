#!/usr/bin/env python3
"""Recompute the four benchmark iteration-count tables.

Equivalent to ``gsolve table all``; forwards any extra CLI options, e.g.

    python scripts/reproduce_tables.py --format csv
    python scripts/reproduce_tables.py --layout square
"""

import sys

from gsolve.cli import main

if __name__ == "__main__":
    raise SystemExit(main(["table", "all", *sys.argv[1:]]))
