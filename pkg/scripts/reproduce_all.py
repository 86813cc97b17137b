#!/usr/bin/env python3
"""Recompute every archived value and diff against the golden files.

Equivalent to `g2forge reproduce-paper`; exits nonzero on any mismatch.
"""
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from g2forge.cli import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main(["reproduce-paper"] + sys.argv[1:]))
