#!/usr/bin/env python3
"""Run the full construction-and-verification grid and print the table.

Covers every family at its default desk-scale parameters: even
characteristic up to q = 16, extended codes up to q = 27, subfield points
up to r = 9, root-of-unity point sets up to q = 81, square-difference
sets, and the coset family at r = 3 and r = 7.  Exits nonzero if any cell
fails its checks.

Usage:
    python scripts/run_sweep.py
    python scripts/run_sweep.py --family theorem-3-5 --r 3 7
    python scripts/run_sweep.py --out-dir artifacts/
"""

import sys

from grsdual.cli import main

if __name__ == "__main__":
    sys.exit(main(["sweep", *sys.argv[1:]]))
